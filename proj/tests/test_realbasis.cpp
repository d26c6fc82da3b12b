#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "torsion/realbasis.hpp"

using namespace torsion;

namespace {

// Coordinates of a real element from its real embeddings: solve
// sum_b c_b * 2cos(2 pi s b / n) = sigma_s(x) over units s in [1, n/2]
// in floating point, then round.
std::vector<long> numeric_coords(const CycInt& x)
{
    const Int n = x.n();
    const auto idx = basis_indices(n);
    std::vector<Int> units;
    for (Int s = 1; 2 * s < n; ++s)
        if (oracle::gcd(s, n) == 1)
            units.push_back(s);
    const std::size_t h = idx.size();
    REQUIRE(units.size() == h);
    std::vector<std::vector<double>> a(h, std::vector<double>(h + 1));
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < h; ++c)
            a[r][c] = 2 * std::cos(2 * std::numbers::pi * static_cast<double>(units[r] * idx[c]) / static_cast<double>(n));
        const CycInt conj = galois_apply(x, units[r]);
        a[r][h] = oracle::eval(oracle::Poly(conj.coeffs().begin(), conj.coeffs().end()), n).real();
    }
    for (std::size_t c = 0; c < h; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < h; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c]))
                piv = r;
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < h; ++r) {
            if (r == c)
                continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= h; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    std::vector<long> out;
    for (std::size_t r = 0; r < h; ++r) {
        const double v = a[r][h] / a[r][r];
        CHECK(std::abs(v - std::round(v)) < 1e-6);
        out.push_back(std::lround(v));
    }
    return out;
}

std::vector<BigInt> ints(std::initializer_list<long> v)
{
    return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("basis_indices")
{
    CHECK(basis_indices(15) == std::vector<Int>{1, 2, 4, 7});
    CHECK(basis_indices(9) == std::vector<Int>{2, 3, 4});
    CHECK(basis_indices(45).size() == 12);
    CHECK_THROWS_AS(basis_indices(16), std::invalid_argument);
    CHECK_THROWS_AS(basis_indices(1), std::invalid_argument);
    for (Int n = 3; n <= 105; n += 2)
        CHECK(2 * static_cast<Int>(basis_indices(n).size()) == oracle::phi(n));
}

TEST_CASE("coeff_of_alpha")
{
    CHECK(coeff_of_alpha(15, 2, 3) == -1);
    CHECK(coeff_of_alpha(15, 1, 1) == 1);
    CHECK(coeff_of_alpha(15, 7, 3) == -1);
    CHECK(coeff_of_alpha(15, 4, 3) == 0);
    // 5 is not a basis index mod 45; the formula term itself is still -1
    CHECK_THROWS_AS(coeff_of_alpha(45, 5, 5), std::invalid_argument);
    CHECK(alpha_coefficient_term(Modulus(45), 5, 5) == -1);
    CHECK(coeff_of_alpha(45, 14, 5) == -1);
    CHECK(coeff_of_alpha(45, 4, 5) == -1);
    CHECK(coeff_of_alpha(45, 2, 5) == 0);
    CHECK(coeff_of_alpha(15, 1, 0) == 2);
}

TEST_CASE("decompose")
{
    const CycInt x = alpha(15, 1) + alpha(15, 2) + alpha(15, 3);
    const RealCycElem e = decompose(x);
    CHECK(e.coords() == ints({1, 0, 0, -1}));
    CHECK(e[1] == 1);
    CHECK(e[7] == -1);
    CHECK(e[8] == -1);
    CHECK_THROWS_AS(e[3], std::invalid_argument);
    CHECK(decompose(15, AlphaCombination{{1, 1}, {2, 1}, {3, 1}}) == e);

    CHECK(decompose(CycInt::constant(15, 2)).coords() == ints({2, 2, 2, 2}));
    CHECK(decompose(CycInt(15)).coords() == ints({0, 0, 0, 0}));
    CHECK_THROWS_AS(decompose(CycInt::zeta_power(15, 1)), std::domain_error);
}

TEST_CASE("recompose")
{
    CHECK(recompose(decompose(alpha(15, 7))) == alpha(15, 7));
    CHECK(recompose(RealCycElem(15, ints({0, 0, 0, 0}))).is_zero());
    const CycInt x = alpha(15, 1) + alpha(15, 2) + alpha(15, 3);
    CHECK(recompose(decompose(x)) == x);
    CHECK(recompose(decompose(x)).reduced() == x.reduced());
}

TEST_CASE("change of basis to powers of alpha_1 is unimodular")
{
    for (Int n = 3; n <= 105; n += 2) {
        const RationalMatrix m = change_of_basis_matrix(n);
        CHECK(m.is_integral());
        const Rational det = m.determinant();
        CHECK_MESSAGE((det == 1 || det == -1), "n = " << n);
    }
}

TEST_CASE("closed formula agrees with the linear solve")
{
    for (Int n = 3; n <= 105; n += 2)
        for (Int i = 0; i < n; ++i)
            CHECK_MESSAGE(decompose(alpha(n, i)) == decompose(n, AlphaCombination{{i, 1}}), "n = " << n << " i = " << i);
}

TEST_CASE("Moebius expansion of zeta^i over B_n")
{
    for (Int n = 3; n <= 105; n += 2)
        for (Int i = 0; i < n; ++i)
            CHECK_MESSAGE(moebius_expansion(n, i) == CycInt::zeta_power(n, i), "n = " << n << " i = " << i);
}

TEST_CASE("coordinates agree with a floating point solve over the real embeddings")
{
    oracle::Gen g(41);
    for (int k = 0; k < 80; ++k) {
        const Int n = g.odd(3, 63);
        AlphaCombination comb;
        for (int t = 0; t < 5; ++t)
            comb.push_back({g.uniform(0, n - 1), g.uniform(-30, 30)});
        const CycInt x = to_cycint(n, comb);
        const RealCycElem e = decompose(x);
        const auto num = numeric_coords(x);
        REQUIRE(num.size() == e.coords().size());
        for (std::size_t j = 0; j < num.size(); ++j)
            CHECK(e.coords()[j] == num[j]);
        CHECK(decompose(n, comb) == e);
        CHECK(recompose(e) == x);
    }
}

TEST_CASE("decompose rejects non-real elements")
{
    oracle::Gen g(43);
    for (int k = 0; k < 20; ++k) {
        const Int n = g.odd(5, 45);
        const CycInt x = alpha(n, g.uniform(1, n - 1)) + CycInt::zeta_power(n, 1);
        CHECK_FALSE(is_real(x));
        CHECK_THROWS_AS(decompose(x), std::domain_error);
    }
}
