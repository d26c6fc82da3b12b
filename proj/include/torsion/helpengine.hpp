#pragma once

// Case analysis for torsion units u of odd order n in V(Z PSL(2,q)),
// gcd(n, q) = 1, n not a prime power.
//
// Assume every proper power u^c (c | n, c != 1) is conjugate to g_0^c. If
// lambda_d != alpha_d for a minimal d, the eigenvalues of Theta_d(u) are
// 1, zeta^{+-nu_1}, ..., zeta^{+-nu_d} where (nu_i) ~_{n/c} (i) for every
// c | n, c != 1, and
//
//     C_b(psi_d(u) - 1) - C_b(psi_d(g_0) - 1)
//
// must be divisible by d at every basis index b and nonzero somewhere. The
// engine enumerates every admissible multiset (nu_i) and checks those two
// conditions; a case is eliminated when no multiset satisfies both.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torsion/cyclotomic.hpp"
#include "torsion/numtheory.hpp"

namespace torsion {

// ------------------------------------------------ partial augmentations

/// Partial augmentations eps_x = eps_{g_0^x}(u), indexed by x in [0, n/2].
class AugVector {
public:
    AugVector(Int n, std::vector<Int> eps);

    /// The partial augmentations of the group element g_0^x.
    static AugVector indicator(Int n, Int x);

    Int n() const { return n_; }
    const std::vector<Int>& values() const { return eps_; }
    /// eps of the class of x.
    Int operator[](Int x) const { return eps_[static_cast<std::size_t>(gamma_class(x, n_))]; }
    Int augmentation() const;
    /// Augmentation 1 and eps_0 = 0.
    bool is_normalized_nontrivial() const { return augmentation() == 1 && eps_[0] == 0; }

    bool operator==(const AugVector&) const = default;

private:
    Int n_;
    std::vector<Int> eps_;
};

/// lambda_i = sum_{x in Gamma_n} eps_x alpha_{ix}.
CycInt lambda_value(const AugVector& eps, Int i);

/// Inverts lambda_value from lams[i], i = 0..n-1. Throws
/// std::invalid_argument when no integral AugVector produces them.
AugVector eps_from_lambdas(const std::vector<CycInt>& lams, Int n);

/// Partial augmentations of u^c for each divisor c of n, c != 1.
using PowerAugmentations = std::function<AugVector(Int c)>;

/// Multiplicity of zeta^l as an eigenvalue of Theta_m(u), from
///   (1/n) sum_{c | n} Tr_{Q(zeta^c)/Q}(psi_m(u^c) zeta^{-cl}).
/// The first overload takes u^c conjugate to g_0^c for every c != 1.
Rational multiplicity(const AugVector& eps, Int m, Int l);
Rational multiplicity(const AugVector& eps, Int m, Int l, const PowerAugmentations& powers);

// ------------------------------------------------------- candidate d

/// 1 + 2^{P(d)+2} when a nu may be 0 mod n, else 2^{P(d)+2}.
Int difference_bound(Int d, bool kappa_two);
/// d <= 1 + 2^{P(d)+2}.
bool passes_difference_bound(Int d);

struct CandidateD {
    Int d;
    bool kappa_two_open;  // n/d is the smallest prime dividing n
    Int bound;
};

struct ExcludedD {
    Int d;
    std::string reason;
};

struct CandidateReport {
    Int n;
    bool applicable;
    std::string reason;  // set when not applicable
    std::vector<CandidateD> candidates;
    std::vector<ExcludedD> excluded;

    std::vector<Int> ds() const;
    bool contains(Int d) const;
};

CandidateReport candidate_ds(Int n);

// ------------------------------------------------------- nu tuples

/// A multiset of Gamma_n representatives, stored ascending.
struct NuTuple {
    Int n;
    Int d;
    std::vector<Int> nus;

    auto operator<=>(const NuTuple&) const = default;
};

NuTuple identity_tuple(Int n, Int d);

/// Brute-force test of (nu_i) ~_{n/c} (i) for every c | n, c != 1.
bool satisfies_power_constraints(const NuTuple& t);

/// Every multiset satisfying the power constraints, each exactly once, in
/// enumeration order.
std::vector<NuTuple> enumerate_nu_tuples(Int n, Int d);

/// C_b(psi_d(u) - 1) - C_b(psi_d(g_0) - 1); b must be a basis index.
Int cb_difference(const NuTuple& t, Int b);
/// cb_difference over basis_indices(n).
std::vector<Int> difference_vector(const NuTuple& t);

struct BoundCheck {
    Int max_abs_diff;
    Int lemma_bound;
};
BoundCheck bound_check(const NuTuple& t);

/// At most one nu is 0 mod n, and only when n/d is the smallest prime of n.
bool kappa_filter(const NuTuple& t);

enum class TupleClass { trivial, survivor, rejected_dmu_only, rejected_difference_and_dmu };

/// Survivor: every entry divisible by d and some entry nonzero. Rejected
/// tuples are split by whether some |entry| reaches d.
TupleClass classify_difference(const std::vector<Int>& diff, Int d);

// ---------------------------------------------------- certificates

enum class CaseVerdict { eliminated, survivors_found, not_applicable };
enum class OrderConclusion { verified, inconclusive };

const char* to_string(CaseVerdict v);
const char* to_string(OrderConclusion c);

struct PruningStats {
    std::uint64_t power_constraint_prunes = 0;  // branches cut during enumeration
    std::uint64_t trivial = 0;                  // difference vector zero
    std::uint64_t rejected_dmu_only = 0;        // |diff| >= d somewhere, not all divisible by d
    std::uint64_t rejected_difference_and_dmu = 0;  // nonzero with |diff| < d everywhere
    std::uint64_t survivors = 0;
    std::uint64_t lemma_bound_violations = 0;
    std::uint64_t kappa_filter_failures = 0;

    PruningStats& operator+=(const PruningStats& o);
    bool operator==(const PruningStats&) const = default;
};

/// A rejected nontrivial tuple and the first basis index where the
/// difference is not divisible by d.
struct Witness {
    NuTuple tuple;
    Int b;
    Int difference;
    Int max_abs_diff;

    auto operator<=>(const Witness&) const = default;
};

struct CaseCertificate {
    Int n;
    Int d;
    CaseVerdict verdict;
    std::string reason;  // for not_applicable
    std::uint64_t tuples_examined = 0;
    PruningStats stats;
    Int lemma_bound = 0;
    std::vector<NuTuple> survivors;
    std::vector<Witness> near_misses;  // canonical order, truncated
    std::uint64_t near_miss_total = 0;
};

struct CaseOptions {
    unsigned workers = 1;
    std::size_t max_witnesses = 64;
};

/// Throws std::invalid_argument when d does not divide n or n is not odd.
CaseCertificate check_case(Int n, Int d, const CaseOptions& options = {});

struct OrderVerdict {
    std::optional<Int> q;
    Int n;
    OrderConclusion conclusion;
    std::string basis;  // how the conclusion was reached
    CandidateReport candidates;
    std::vector<CaseCertificate> case_results;
};

/// Throws std::invalid_argument when n is even, or gcd(n, q) != 1.
OrderVerdict verify_order(Int n, std::optional<Int> q = std::nullopt, const CaseOptions& options = {});

} // namespace torsion
