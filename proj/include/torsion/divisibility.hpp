#pragma once

// Checkers for the divisibility facts behind the main argument:
//
//  * Phi_{n p^m}(zeta_n) lies in p Z[zeta_n];
//  * if omega_i = sum_j A_j zeta_n^{ij} vanishes at every i = d/q (q a prime
//    power dividing d, q != 1), then omega_d lies in d Z[zeta_n];
//  * the same statement for traces down to the maximal real subfield, with
//    membership tested in d Z[alpha_1].

#include <iosfwd>
#include <random>
#include <vector>

#include "torsion/cyclotomic.hpp"
#include "torsion/numtheory.hpp"

namespace torsion {

struct OmegaInstance {
    Modulus n;
    std::vector<BigInt> A;  // A_0 .. A_{n-1}
    Int d;

    /// Throws std::invalid_argument unless d | n and |A| = n.
    OmegaInstance(Int n, std::vector<BigInt> A, Int d);
};

struct NtVerdict {
    bool hypotheses_hold;
    bool conclusion_holds;

    /// The implication hypotheses => conclusion.
    bool consistent() const { return !hypotheses_hold || conclusion_holds; }
    bool operator==(const NtVerdict&) const = default;
};

/// Phi_{n p^m} evaluated at zeta_n.
CycInt phi_at_lower_root(Int n, Int p, Int m);
bool check_phi_membership(Int n, Int p, Int m);

CycInt omega(const OmegaInstance& inst, Int i);
NtVerdict check_nt(const OmegaInstance& inst);

/// The exponents i = d/q for every prime power q != 1 dividing d.
std::vector<Int> nt_hypothesis_points(Int d);

/// omega_i = sum_{x in Gamma_n} B_x Tr(zeta_n^{ix}) with B indexed by the
/// class representatives 0..n/2; n odd.
CycInt omega_real(Int n, const std::vector<BigInt>& B, Int i);
NtVerdict check_corollary_real(Int n, const std::vector<BigInt>& B, Int d);

/// A-vector whose omega_i equals omega_real(n, B, i): A_0 = 2 B_0 and
/// A_x = A_{n-x} = B_x for x != 0.
std::vector<BigInt> symmetrize(Int n, const std::vector<BigInt>& B);

/// f = g * prod_{p | d} prod_{m=1}^{v_p(d)} Phi_{(n/d) p^m}, folded mod X^n - 1.
OmegaInstance nt_instance_from(Int n, Int d, const IntPoly& g);
/// Random g of degree < n with coefficients in [-9, 9].
OmegaInstance random_nt_instance(Int n, Int d, std::mt19937_64& rng);

/// Text format: first line "n d", then n integers A_0 .. A_{n-1}.
OmegaInstance read_omega_instance(std::istream& in);

} // namespace torsion
