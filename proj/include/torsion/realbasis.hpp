#pragma once

// Integral basis {alpha_b : b in B_n} of Z[zeta_n + zeta_n^{-1}] for odd n,
// with the closed coefficient formula
//
//     C_b(alpha_i) = kappa_i * mu(gamma(i)) * delta_{b,i}^{(n / gamma(i))}
//
// and an independent route through an exact linear solve in the power basis.

#include <memory>
#include <optional>
#include <vector>

#include "torsion/cyclotomic.hpp"
#include "torsion/exact_linalg.hpp"
#include "torsion/numtheory.hpp"

namespace torsion {

/// One representative b in [1, n/2] per pair {b, n - b} of B_n, ascending.
std::vector<Int> basis_indices(Int n);

/// kappa_i * mu(gamma(i)) * delta_{b,i}^{(n/gamma(i))}, without checking that
/// b is a basis index.
int alpha_coefficient_term(const Modulus& n, Int b, Int i);

/// C_b(alpha_i); throws std::invalid_argument unless b is in B_n.
int coeff_of_alpha(Int n, Int b, Int i);

/// Shared per-modulus basis data. Built once per n and cached.
class RealBasis {
public:
    static std::shared_ptr<const RealBasis> of(Int n);

    explicit RealBasis(Int n);

    Int n() const { return modulus_.value(); }
    const Modulus& modulus() const { return modulus_; }
    const std::vector<Int>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    /// Position of the class of b among indices(), if b is in B_n.
    std::optional<std::size_t> position(Int b) const;

    /// phi(n) x |indices| matrix; column k holds the reduced form of alpha_{b_k}.
    const RationalMatrix& alpha_matrix() const { return alpha_matrix_; }

    /// Integer coordinates c with sum_k c_k alpha_{b_k} equal to the element
    /// with the given reduced form. Throws std::domain_error when the element
    /// is not in the real subring and std::logic_error when the solution is
    /// not integral.
    std::vector<BigInt> solve(const std::vector<BigInt>& reduced) const;

private:
    Modulus modulus_;
    std::vector<Int> indices_;
    std::vector<int> position_;  // indexed by residue mod n, -1 when absent
    RationalMatrix alpha_matrix_;
    std::vector<std::size_t> pivot_rows_;
    RationalMatrix pivot_inverse_;
};

/// Element of Z[alpha_1] in basis coordinates, aligned with basis_indices(n).
class RealCycElem {
public:
    RealCycElem(Int n, std::vector<BigInt> coords);

    Int n() const { return basis_->n(); }
    const std::vector<Int>& indices() const { return basis_->indices(); }
    const std::vector<BigInt>& coords() const { return coords_; }
    /// C_b; throws std::invalid_argument unless b is in B_n.
    const BigInt& operator[](Int b) const;

    bool operator==(const RealCycElem& rhs) const { return n() == rhs.n() && coords_ == rhs.coords_; }

private:
    std::shared_ptr<const RealBasis> basis_;
    std::vector<BigInt> coords_;
};

/// sum_k coeff_k alpha_{index_k}.
struct AlphaTerm {
    Int index;
    BigInt coeff;
};
using AlphaCombination = std::vector<AlphaTerm>;

CycInt to_cycint(Int n, const AlphaCombination& x);

/// General path: exact linear solve on the reduced form.
RealCycElem decompose(const CycInt& x);
/// Fast path: linearity plus coeff_of_alpha.
RealCycElem decompose(Int n, const AlphaCombination& x);

CycInt recompose(const RealCycElem& e);

/// Coordinates of alpha_{b_k} in the power basis 1, alpha_1, ..., alpha_1^{h-1}
/// (column k), h = phi(n)/2.
RationalMatrix change_of_basis_matrix(Int n);

/// mu(gamma(i)) * sum of zeta^b over b in B_n with b = i mod n/gamma(i).
/// Equals zeta^i exactly.
CycInt moebius_expansion(Int n, Int i);

} // namespace torsion
