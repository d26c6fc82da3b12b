#pragma once

// Elementary number theory on machine integers: factorization, valuations,
// Moebius, signed residues and the level functions used to build the real
// cyclotomic basis (gamma, kappa, delta, B_n).

#include <cstdint>
#include <vector>

namespace torsion {

using Int = std::int64_t;

struct PrimePower {
    Int prime;
    int exponent;

    bool operator==(const PrimePower&) const = default;
};

/// A positive integer together with its factorization.
class Modulus {
public:
    explicit Modulus(Int n);

    Int value() const { return n_; }
    const std::vector<PrimePower>& factors() const { return factors_; }
    /// Product of the distinct primes dividing n.
    Int radical() const { return radical_; }
    /// n_p = p^{v_p(n)}; 1 when p does not divide n.
    Int part(Int p) const;
    std::vector<Int> primes() const;
    Int smallest_prime() const;
    bool is_prime_power() const { return factors_.size() == 1; }
    /// Sorted ascending, including 1 and n.
    std::vector<Int> divisors() const;

    bool operator==(const Modulus& other) const { return n_ == other.n_; }

private:
    Int n_;
    Int radical_;
    std::vector<PrimePower> factors_;
};

/// Representative of x mod n in (-n/2, n/2].
struct SignedResidue {
    Int value;
    Int modulus;

    Int abs() const { return value < 0 ? -value : value; }
};

/// Representatives of Z modulo x ~ -x, normalized to [0, n/2].
struct GammaClassIndex {
    Modulus n;
    std::vector<Int> representatives;

    std::size_t size() const { return representatives.size(); }
};

/// Nonnegative residue of x mod n.
Int mod(Int x, Int n);
Int gcd(Int a, Int b);
bool is_prime(Int m);
std::vector<PrimePower> factorize(Int m);
Int euler_phi(Int m);

Int valuation(Int p, Int m);
int moebius(Int m);
/// Number of distinct primes dividing m.
int prime_count(Int m);

SignedResidue signed_residue(Int x, Int n);

/// Product of the primes p | n with |M(x, n_p)| < n_p / (2p).
Int gamma(const Modulus& n, Int x);
/// 2 when n | x, else 1.
int kappa(Int n, Int x);
/// 1 when x = +-y mod n, else 0.
int delta(Int n, Int x, Int y);

/// Residues x in [0, n) with |M(x, n_p)| > n_p / (2p) for every p | n.
std::vector<Int> b_set(const Modulus& n);

/// Canonical class of x under x ~ -x mod n, in [0, n/2].
Int gamma_class(Int x, Int n);
GammaClassIndex gamma_class_reps(Int n);

/// Ramanujan sum c_n(s): the trace of zeta_n^s down to Q.
Int ramanujan_sum(Int n, Int s);

} // namespace torsion
