#pragma once

// Exact arithmetic in Z[zeta_n].
//
// An element is stored by its exponent vector (coefficient of zeta^j at
// index j, j in [0, n)). Products convolve exponents mod n. Equality and
// divisibility go through the reduced form: the remainder modulo Phi_n in the
// power basis 1, zeta, ..., zeta^{phi(n)-1}, which is computed on demand and
// memoized.

#include <complex>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "torsion/detail/cache.hpp"
#include "torsion/numtheory.hpp"

namespace torsion {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly monomial(Int k, const BigInt& c = 1);
    /// X^m - 1.
    static IntPoly x_pow_minus_one(Int m);

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    /// -1 for the zero polynomial.
    Int degree() const { return static_cast<Int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
    BigInt operator[](Int k) const;

    IntPoly operator+(const IntPoly& rhs) const;
    IntPoly operator-(const IntPoly& rhs) const;
    IntPoly operator*(const IntPoly& rhs) const;
    bool operator==(const IntPoly& rhs) const { return coeffs_ == rhs.coeffs_; }

    /// Coefficients of the image in Z[X]/(X^n - 1), length n.
    std::vector<BigInt> fold(Int n) const;

private:
    void trim();

    std::vector<BigInt> coeffs_;
};

struct PolyDivision {
    IntPoly quotient;
    IntPoly remainder;
};

/// Division by a monic divisor; stays inside Z[X].
PolyDivision divmod_monic(const IntPoly& f, const IntPoly& g);
/// f / g, throwing std::logic_error when the remainder is nonzero.
IntPoly exact_div(const IntPoly& f, const IntPoly& g);

/// Phi_m, by successive exact division of X^m - 1 by Phi_e for e | m, e < m.
/// Memoized; safe to call concurrently.
const IntPoly& cyclotomic_poly(Int m);

/// Per-modulus data shared by all elements of Z[zeta_n].
class CyclotomicField {
public:
    static std::shared_ptr<const CyclotomicField> of(Int n);

    explicit CyclotomicField(Int n);

    Int n() const { return modulus_.value(); }
    const Modulus& modulus() const { return modulus_; }
    Int degree() const { return phi_; }
    const IntPoly& minimal_polynomial() const { return cyclotomic_poly(n()); }

    /// Remainder of sum raw_j X^j modulo Phi_n, length phi(n).
    std::vector<BigInt> reduce(std::vector<BigInt> raw) const;

private:
    struct Term {
        Int exponent;
        BigInt coeff;
    };

    Modulus modulus_;
    Int phi_;
    // Nonzero non-leading terms of Phi_n.
    std::vector<Term> tail_;
};

class CycInt {
public:
    explicit CycInt(Int n);
    /// Coefficients of any length; exponents are folded mod n.
    CycInt(Int n, const std::vector<BigInt>& coeffs);

    static CycInt constant(Int n, const BigInt& c);
    static CycInt zeta_power(Int n, Int k);

    Int n() const { return field_->n(); }
    const Modulus& modulus() const { return field_->modulus(); }
    const CyclotomicField& field() const { return *field_; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const BigInt& coeff(Int j) const { return coeffs_[static_cast<std::size_t>(mod(j, n()))]; }

    /// Canonical power-basis coordinates, length phi(n).
    const std::vector<BigInt>& reduced() const;
    bool is_zero() const;

    CycInt& operator+=(const CycInt& rhs);
    CycInt& operator-=(const CycInt& rhs);
    CycInt& operator*=(const CycInt& rhs);
    CycInt& operator*=(const BigInt& k);
    /// Adds c * zeta^k.
    CycInt& add_term(Int k, const BigInt& c);

    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    friend CycInt operator*(const BigInt& k, CycInt a) { return a *= k; }
    friend CycInt operator-(CycInt a) { return a *= BigInt(-1); }

    /// False for elements of different rings.
    bool operator==(const CycInt& rhs) const;

    /// Value of the raw exponent sum at exp(2 pi i / n).
    std::complex<double> evaluate() const;

private:
    void check_same_field(const CycInt& rhs) const;
    void touch() { reduced_.reset(); }

    std::shared_ptr<const CyclotomicField> field_;
    std::vector<BigInt> coeffs_;
    detail::Lazy<std::vector<BigInt>> reduced_;
};

inline CycInt add(const CycInt& a, const CycInt& b) { return a + b; }
inline CycInt mul(const CycInt& a, const CycInt& b) { return a * b; }
inline CycInt neg(const CycInt& a) { return -a; }
inline CycInt scalar_mul(const BigInt& k, const CycInt& a) { return k * a; }

std::vector<BigInt> reduce(const CycInt& a);

/// Value of the reduced form at exp(2 pi i / n).
std::complex<double> evaluate_reduced(const CycInt& a);

/// f(zeta_n) as an element of Z[zeta_n].
CycInt eval_poly_at_root(const IntPoly& f, Int n);

/// zeta^j -> zeta^{s j}; requires gcd(s, n) = 1.
CycInt galois_apply(const CycInt& a, Int s);

/// zeta_n^x + zeta_n^{-x}.
CycInt alpha(Int n, Int x);

/// Membership in k Z[zeta_n].
bool divisible_by_int(const CycInt& a, const BigInt& k);

/// Fixed by complex conjugation zeta -> zeta^{-1}.
bool is_real(const CycInt& a);

} // namespace torsion
