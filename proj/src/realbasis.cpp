#include "torsion/realbasis.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace torsion {

namespace {

void require_odd(Int n, const char* where)
{
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument(std::string(where) + ": expected odd n >= 3, got " + std::to_string(n));
}

detail::SharedCache<Int, RealBasis>& basis_cache()
{
    static detail::SharedCache<Int, RealBasis> cache;
    return cache;
}

RationalMatrix columns_from_reduced(const std::vector<CycInt>& elems, Int phi)
{
    RationalMatrix m(static_cast<std::size_t>(phi), elems.size());
    for (std::size_t k = 0; k < elems.size(); ++k) {
        const auto& r = elems[k].reduced();
        for (std::size_t i = 0; i < r.size(); ++i)
            m(i, k) = r[i];
    }
    return m;
}

} // namespace

std::vector<Int> basis_indices(Int n)
{
    require_odd(n, "basis_indices");
    std::vector<Int> out;
    for (Int b : b_set(Modulus(n)))
        if (2 * b < n)
            out.push_back(b);
    return out;
}

int alpha_coefficient_term(const Modulus& n, Int b, Int i)
{
    const Int g = gamma(n, i);
    return kappa(n.value(), i) * moebius(g) * delta(n.value() / g, b, i);
}

int coeff_of_alpha(Int n, Int b, Int i)
{
    const auto basis = RealBasis::of(n);
    if (!basis->position(b))
        throw std::invalid_argument("coeff_of_alpha: " + std::to_string(b) + " is not a basis index mod " +
                                    std::to_string(n));
    return alpha_coefficient_term(basis->modulus(), b, i);
}

// -------------------------------------------------------------- RealBasis

std::shared_ptr<const RealBasis> RealBasis::of(Int n)
{
    require_odd(n, "RealBasis");
    return basis_cache().get(n, [n] { return RealBasis(n); });
}

RealBasis::RealBasis(Int n)
    : modulus_(n), indices_(basis_indices(n)), position_(static_cast<std::size_t>(n), -1)
{
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        position_[static_cast<std::size_t>(indices_[k])] = static_cast<int>(k);
        position_[static_cast<std::size_t>(n - indices_[k])] = static_cast<int>(k);
    }

    std::vector<CycInt> alphas;
    for (Int b : indices_)
        alphas.push_back(alpha(n, b));
    alpha_matrix_ = columns_from_reduced(alphas, euler_phi(n));

    // Independent rows of the column matrix give a square subsystem.
    pivot_rows_ = alpha_matrix_.transpose().pivot_columns();
    if (pivot_rows_.size() != indices_.size())
        throw std::logic_error("RealBasis: alpha_b are linearly dependent for n = " + std::to_string(n));
    auto inv = alpha_matrix_.select_rows(pivot_rows_).inverse();
    if (!inv)
        throw std::logic_error("RealBasis: singular pivot block for n = " + std::to_string(n));
    pivot_inverse_ = std::move(*inv);
}

std::optional<std::size_t> RealBasis::position(Int b) const
{
    const int p = position_[static_cast<std::size_t>(mod(b, n()))];
    if (p < 0)
        return std::nullopt;
    return static_cast<std::size_t>(p);
}

std::vector<BigInt> RealBasis::solve(const std::vector<BigInt>& reduced) const
{
    std::vector<mpq_class> rhs;
    rhs.reserve(pivot_rows_.size());
    for (std::size_t r : pivot_rows_)
        rhs.emplace_back(reduced[r]);
    const std::vector<mpq_class> sol = pivot_inverse_ * std::span<const mpq_class>(rhs);

    // The remaining rows decide whether the element lies in the span at all.
    const std::vector<mpq_class> back = alpha_matrix_ * std::span<const mpq_class>(sol);
    for (std::size_t i = 0; i < back.size(); ++i)
        if (back[i] != reduced[i])
            throw std::domain_error("RealBasis::solve: element is not in Q(alpha_1) for n = " +
                                    std::to_string(n()));

    std::vector<BigInt> coords;
    coords.reserve(sol.size());
    for (std::size_t k = 0; k < sol.size(); ++k) {
        if (sol[k].get_den() != 1) {
            std::ostringstream msg;
            msg << "RealBasis::solve: non-integral coordinate " << sol[k] << " at alpha_" << indices_[k]
                << " for n = " << n() << "; the basis is not integral";
            throw std::logic_error(msg.str());
        }
        coords.push_back(sol[k].get_num());
    }
    return coords;
}

// ------------------------------------------------------------ RealCycElem

RealCycElem::RealCycElem(Int n, std::vector<BigInt> coords) : basis_(RealBasis::of(n)), coords_(std::move(coords))
{
    if (coords_.size() != basis_->size())
        throw std::invalid_argument("RealCycElem: expected " + std::to_string(basis_->size()) +
                                    " coordinates, got " + std::to_string(coords_.size()));
}

const BigInt& RealCycElem::operator[](Int b) const
{
    auto p = basis_->position(b);
    if (!p)
        throw std::invalid_argument("RealCycElem: " + std::to_string(b) + " is not a basis index");
    return coords_[*p];
}

CycInt to_cycint(Int n, const AlphaCombination& x)
{
    CycInt out(n);
    for (const auto& [i, c] : x) {
        out.add_term(i, c);
        out.add_term(-i, c);
    }
    return out;
}

RealCycElem decompose(const CycInt& x)
{
    if (!is_real(x))
        throw std::domain_error("decompose: element is not fixed by complex conjugation");
    const auto basis = RealBasis::of(x.n());
    return RealCycElem(x.n(), basis->solve(x.reduced()));
}

RealCycElem decompose(Int n, const AlphaCombination& x)
{
    const auto basis = RealBasis::of(n);
    std::vector<BigInt> coords(basis->size());
    for (const auto& [i, c] : x) {
        if (c == 0)
            continue;
        for (std::size_t k = 0; k < basis->size(); ++k) {
            const int t = alpha_coefficient_term(basis->modulus(), basis->indices()[k], i);
            if (t != 0)
                coords[k] += c * t;
        }
    }
    return RealCycElem(n, std::move(coords));
}

CycInt recompose(const RealCycElem& e)
{
    AlphaCombination x;
    for (std::size_t k = 0; k < e.coords().size(); ++k)
        x.push_back({e.indices()[k], e.coords()[k]});
    return to_cycint(e.n(), x);
}

RationalMatrix change_of_basis_matrix(Int n)
{
    const auto basis = RealBasis::of(n);
    const Int h = static_cast<Int>(basis->size());

    std::vector<CycInt> powers;
    CycInt p = CycInt::constant(n, 1);
    const CycInt a1 = alpha(n, 1);
    for (Int k = 0; k < h; ++k) {
        powers.push_back(p);
        p = p * a1;
    }
    const RationalMatrix power_matrix = columns_from_reduced(powers, euler_phi(n));

    const auto rows = power_matrix.transpose().pivot_columns();
    if (static_cast<Int>(rows.size()) != h)
        throw std::logic_error("change_of_basis_matrix: powers of alpha_1 are dependent");
    auto inv = power_matrix.select_rows(rows).inverse();
    RationalMatrix x = *inv * basis->alpha_matrix().select_rows(rows);
    if (!(power_matrix * x == basis->alpha_matrix()))
        throw std::logic_error("change_of_basis_matrix: alpha_b outside the span of powers of alpha_1");
    return x;
}

CycInt moebius_expansion(Int n, Int i)
{
    const auto basis = RealBasis::of(n);
    const Modulus& m = basis->modulus();
    const Int g = gamma(m, i);
    const Int step = n / g;
    CycInt out(n);
    for (Int b : b_set(m))
        if (mod(b - i, step) == 0)
            out.add_term(b, 1);
    return BigInt(moebius(g)) * out;
}

} // namespace torsion
