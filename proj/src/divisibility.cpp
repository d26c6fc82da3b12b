#include "torsion/divisibility.hpp"

#include <istream>
#include <stdexcept>
#include <string>

#include "torsion/realbasis.hpp"

namespace torsion {

OmegaInstance::OmegaInstance(Int n_, std::vector<BigInt> A_, Int d_) : n(n_), A(std::move(A_)), d(d_)
{
    if (d < 1 || n_ % d != 0)
        throw std::invalid_argument("OmegaInstance: d = " + std::to_string(d) + " does not divide n = " +
                                    std::to_string(n_));
    if (static_cast<Int>(A.size()) != n_)
        throw std::invalid_argument("OmegaInstance: expected " + std::to_string(n_) + " coefficients, got " +
                                    std::to_string(A.size()));
}

CycInt phi_at_lower_root(Int n, Int p, Int m)
{
    if (!is_prime(p))
        throw std::invalid_argument("phi_at_lower_root: p = " + std::to_string(p) + " is not prime");
    if (m < 1 || n < 1)
        throw std::invalid_argument("phi_at_lower_root: expected n, m >= 1");
    Int index = n;
    for (Int k = 0; k < m; ++k)
        index *= p;
    return eval_poly_at_root(cyclotomic_poly(index), n);
}

bool check_phi_membership(Int n, Int p, Int m)
{
    return divisible_by_int(phi_at_lower_root(n, p, m), p);
}

CycInt omega(const OmegaInstance& inst, Int i)
{
    const Int n = inst.n.value();
    CycInt out(n);
    for (Int j = 0; j < n; ++j)
        if (inst.A[static_cast<std::size_t>(j)] != 0)
            out.add_term(mod(i, n) * j % n, inst.A[static_cast<std::size_t>(j)]);
    return out;
}

std::vector<Int> nt_hypothesis_points(Int d)
{
    std::vector<Int> points;
    for (const auto& [p, e] : factorize(d)) {
        Int q = 1;
        for (int k = 1; k <= e; ++k) {
            q *= p;
            points.push_back(d / q);
        }
    }
    return points;
}

NtVerdict check_nt(const OmegaInstance& inst)
{
    NtVerdict v{true, false};
    for (Int i : nt_hypothesis_points(inst.d))
        if (!omega(inst, i).is_zero()) {
            v.hypotheses_hold = false;
            break;
        }
    v.conclusion_holds = divisible_by_int(omega(inst, inst.d), inst.d);
    return v;
}

CycInt omega_real(Int n, const std::vector<BigInt>& B, Int i)
{
    AlphaCombination comb;
    for (std::size_t x = 0; x < B.size(); ++x)
        if (B[x] != 0)
            comb.push_back({i * static_cast<Int>(x), B[x]});
    return to_cycint(n, comb);
}

namespace {

void check_real_args(Int n, const std::vector<BigInt>& B, Int d)
{
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("check_corollary_real: expected odd n >= 3");
    if (d < 1 || n % d != 0)
        throw std::invalid_argument("check_corollary_real: d = " + std::to_string(d) + " does not divide n = " +
                                    std::to_string(n));
    if (static_cast<Int>(B.size()) != n / 2 + 1)
        throw std::invalid_argument("check_corollary_real: expected one B_x per class 0.." + std::to_string(n / 2));
}

} // namespace

NtVerdict check_corollary_real(Int n, const std::vector<BigInt>& B, Int d)
{
    check_real_args(n, B, d);
    NtVerdict v{true, false};
    for (Int i : nt_hypothesis_points(d))
        if (!omega_real(n, B, i).is_zero()) {
            v.hypotheses_hold = false;
            break;
        }

    // omega_d is a combination of alpha's, so the closed coefficient formula
    // gives its coordinates in the integral basis directly.
    AlphaCombination comb;
    for (std::size_t x = 0; x < B.size(); ++x)
        if (B[x] != 0)
            comb.push_back({d * static_cast<Int>(x), B[x]});
    const RealCycElem coords = decompose(n, comb);
    v.conclusion_holds = true;
    const BigInt dd = d;
    for (const auto& c : coords.coords())
        if (!mpz_divisible_p(c.get_mpz_t(), dd.get_mpz_t())) {
            v.conclusion_holds = false;
            break;
        }
    return v;
}

std::vector<BigInt> symmetrize(Int n, const std::vector<BigInt>& B)
{
    std::vector<BigInt> A(static_cast<std::size_t>(n));
    A[0] = 2 * B[0];
    for (Int x = 1; x < static_cast<Int>(B.size()); ++x) {
        A[static_cast<std::size_t>(x)] += B[static_cast<std::size_t>(x)];
        A[static_cast<std::size_t>(n - x)] += B[static_cast<std::size_t>(x)];
    }
    return A;
}

OmegaInstance nt_instance_from(Int n, Int d, const IntPoly& g)
{
    if (d < 1 || n % d != 0)
        throw std::invalid_argument("nt_instance_from: d does not divide n");
    const Int k = n / d;
    IntPoly f = g;
    for (const auto& [p, e] : factorize(d)) {
        Int kp = k;
        for (int m = 1; m <= e; ++m) {
            kp *= p;
            f = f * cyclotomic_poly(kp);
        }
    }
    return OmegaInstance(n, f.fold(n), d);
}

OmegaInstance random_nt_instance(Int n, Int d, std::mt19937_64& rng)
{
    std::uniform_int_distribution<Int> degree(0, n - 1);
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::vector<BigInt> g(static_cast<std::size_t>(degree(rng)) + 1);
    for (auto& c : g)
        c = coeff(rng);
    return nt_instance_from(n, d, IntPoly(std::move(g)));
}

OmegaInstance read_omega_instance(std::istream& in)
{
    Int n = 0;
    Int d = 0;
    if (!(in >> n >> d))
        throw std::invalid_argument("omega instance: missing header line \"n d\"");
    if (n < 1)
        throw std::invalid_argument("omega instance: n must be positive");
    std::vector<BigInt> A;
    A.reserve(static_cast<std::size_t>(n));
    std::string token;
    while (static_cast<Int>(A.size()) < n && in >> token) {
        BigInt v;
        if (v.set_str(token, 10) != 0)
            throw std::invalid_argument("omega instance: not an integer: \"" + token + "\"");
        A.push_back(v);
    }
    if (static_cast<Int>(A.size()) != n)
        throw std::invalid_argument("omega instance: expected " + std::to_string(n) + " coefficients, got " +
                                    std::to_string(A.size()));
    return OmegaInstance(n, std::move(A), d);
}

} // namespace torsion
