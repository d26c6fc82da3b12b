#include "torsion/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace torsion {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

IntPoly::IntPoly(std::initializer_list<long> coeffs)
{
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs)
        coeffs_.emplace_back(c);
    trim();
}

IntPoly IntPoly::monomial(Int k, const BigInt& c)
{
    std::vector<BigInt> v(static_cast<std::size_t>(k) + 1);
    v.back() = c;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::x_pow_minus_one(Int m)
{
    std::vector<BigInt> v(static_cast<std::size_t>(m) + 1);
    v.front() = -1;
    v.back() += 1;
    return IntPoly(std::move(v));
}

BigInt IntPoly::operator[](Int k) const
{
    if (k < 0 || k > degree())
        return 0;
    return coeffs_[static_cast<std::size_t>(k)];
}

void IntPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

IntPoly IntPoly::operator+(const IntPoly& rhs) const
{
    std::vector<BigInt> v(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        v[i] += rhs.coeffs_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& rhs) const
{
    std::vector<BigInt> v(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v[i] += coeffs_[i];
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        v[i] -= rhs.coeffs_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const
{
    if (is_zero() || rhs.is_zero())
        return {};
    std::vector<BigInt> v(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            mpz_addmul(v[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), rhs.coeffs_[j].get_mpz_t());
    }
    return IntPoly(std::move(v));
}

std::vector<BigInt> IntPoly::fold(Int n) const
{
    if (n < 1)
        throw std::invalid_argument("IntPoly::fold: modulus must be positive");
    std::vector<BigInt> v(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v[i % static_cast<std::size_t>(n)] += coeffs_[i];
    return v;
}

PolyDivision divmod_monic(const IntPoly& f, const IntPoly& g)
{
    if (!g.is_monic())
        throw std::invalid_argument("divmod_monic: divisor must be monic");
    const Int dg = g.degree();
    if (f.degree() < dg)
        return {IntPoly{}, f};

    std::vector<std::pair<Int, BigInt>> tail;
    for (Int j = 0; j < dg; ++j)
        if (g.coeffs()[static_cast<std::size_t>(j)] != 0)
            tail.emplace_back(j, g.coeffs()[static_cast<std::size_t>(j)]);

    std::vector<BigInt> r = f.coeffs();
    std::vector<BigInt> q(static_cast<std::size_t>(f.degree() - dg) + 1);
    for (Int k = f.degree(); k >= dg; --k) {
        BigInt c = r[static_cast<std::size_t>(k)];
        if (c == 0)
            continue;
        q[static_cast<std::size_t>(k - dg)] = c;
        r[static_cast<std::size_t>(k)] = 0;
        for (const auto& [j, a] : tail)
            mpz_submul(r[static_cast<std::size_t>(k - dg + j)].get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
    }
    r.resize(static_cast<std::size_t>(dg));
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly exact_div(const IntPoly& f, const IntPoly& g)
{
    auto [q, r] = divmod_monic(f, g);
    if (!r.is_zero())
        throw std::logic_error("exact_div: nonzero remainder");
    return q;
}

namespace {

detail::SharedCache<Int, IntPoly>& cyclotomic_cache()
{
    static detail::SharedCache<Int, IntPoly> cache;
    return cache;
}

detail::SharedCache<Int, CyclotomicField>& field_cache()
{
    static detail::SharedCache<Int, CyclotomicField> cache;
    return cache;
}

} // namespace

const IntPoly& cyclotomic_poly(Int m)
{
    if (m < 1)
        throw std::invalid_argument("cyclotomic_poly: expected m >= 1, got " + std::to_string(m));
    // The cache never evicts, so the reference stays valid.
    return *cyclotomic_cache().get(m, [m] {
        IntPoly f = IntPoly::x_pow_minus_one(m);
        for (Int e : Modulus(m).divisors())
            if (e < m)
                f = exact_div(f, cyclotomic_poly(e));
        return f;
    });
}

// -------------------------------------------------------- CyclotomicField

std::shared_ptr<const CyclotomicField> CyclotomicField::of(Int n)
{
    if (n < 1)
        throw std::invalid_argument("CyclotomicField: modulus must be positive, got " + std::to_string(n));
    return field_cache().get(n, [n] { return CyclotomicField(n); });
}

CyclotomicField::CyclotomicField(Int n) : modulus_(n), phi_(euler_phi(n))
{
    const IntPoly& f = cyclotomic_poly(n);
    for (Int j = 0; j < phi_; ++j)
        if (f.coeffs()[static_cast<std::size_t>(j)] != 0)
            tail_.push_back({j, f.coeffs()[static_cast<std::size_t>(j)]});
}

std::vector<BigInt> CyclotomicField::reduce(std::vector<BigInt> raw) const
{
    for (Int k = static_cast<Int>(raw.size()) - 1; k >= phi_; --k) {
        const auto ks = static_cast<std::size_t>(k);
        if (raw[ks] == 0)
            continue;
        for (const auto& [j, a] : tail_)
            mpz_submul(raw[static_cast<std::size_t>(k - phi_ + j)].get_mpz_t(), raw[ks].get_mpz_t(), a.get_mpz_t());
        raw[ks] = 0;
    }
    raw.resize(static_cast<std::size_t>(phi_));
    return raw;
}

// ----------------------------------------------------------------- CycInt

CycInt::CycInt(Int n) : field_(CyclotomicField::of(n)), coeffs_(static_cast<std::size_t>(n)) {}

CycInt::CycInt(Int n, const std::vector<BigInt>& coeffs) : CycInt(n)
{
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        coeffs_[j % coeffs_.size()] += coeffs[j];
}

CycInt CycInt::constant(Int n, const BigInt& c)
{
    CycInt a(n);
    a.coeffs_[0] = c;
    return a;
}

CycInt CycInt::zeta_power(Int n, Int k)
{
    CycInt a(n);
    a.coeffs_[static_cast<std::size_t>(mod(k, n))] = 1;
    return a;
}

const std::vector<BigInt>& CycInt::reduced() const
{
    return reduced_.get([this] { return field_->reduce(coeffs_); });
}

bool CycInt::is_zero() const
{
    for (const auto& c : reduced())
        if (c != 0)
            return false;
    return true;
}

void CycInt::check_same_field(const CycInt& rhs) const
{
    if (n() != rhs.n())
        throw std::invalid_argument("CycInt: modulus mismatch (" + std::to_string(n()) + " vs " +
                                    std::to_string(rhs.n()) + ")");
}

CycInt& CycInt::operator+=(const CycInt& rhs)
{
    check_same_field(rhs);
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
        coeffs_[j] += rhs.coeffs_[j];
    touch();
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& rhs)
{
    check_same_field(rhs);
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
        coeffs_[j] -= rhs.coeffs_[j];
    touch();
    return *this;
}

CycInt operator*(const CycInt& a, const CycInt& b)
{
    a.check_same_field(b);
    const std::size_t n = a.coeffs_.size();
    CycInt out(a.n());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.coeffs_[j] == 0)
                continue;
            const std::size_t k = (i + j) % n;
            mpz_addmul(out.coeffs_[k].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
        }
    }
    return out;
}

CycInt& CycInt::operator*=(const CycInt& rhs)
{
    *this = *this * rhs;
    return *this;
}

CycInt& CycInt::operator*=(const BigInt& k)
{
    for (auto& c : coeffs_)
        c *= k;
    touch();
    return *this;
}

CycInt& CycInt::add_term(Int k, const BigInt& c)
{
    coeffs_[static_cast<std::size_t>(mod(k, n()))] += c;
    touch();
    return *this;
}

bool CycInt::operator==(const CycInt& rhs) const
{
    return n() == rhs.n() && reduced() == rhs.reduced();
}

namespace {

std::complex<double> evaluate_at_root(const std::vector<BigInt>& coeffs, Int n)
{
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0)
            continue;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        sum += coeffs[j].get_d() * std::polar(1.0, angle);
    }
    return sum;
}

} // namespace

std::complex<double> CycInt::evaluate() const
{
    return evaluate_at_root(coeffs_, n());
}

std::vector<BigInt> reduce(const CycInt& a)
{
    return a.reduced();
}

std::complex<double> evaluate_reduced(const CycInt& a)
{
    return evaluate_at_root(a.reduced(), a.n());
}

CycInt eval_poly_at_root(const IntPoly& f, Int n)
{
    return CycInt(n, f.fold(n));
}

CycInt galois_apply(const CycInt& a, Int s)
{
    const Int n = a.n();
    if (gcd(s, n) != 1)
        throw std::invalid_argument("galois_apply: s = " + std::to_string(s) + " is not a unit mod " +
                                    std::to_string(n));
    CycInt out(n);
    for (Int j = 0; j < n; ++j)
        if (a.coeff(j) != 0)
            out.add_term(s * j, a.coeff(j));
    return out;
}

CycInt alpha(Int n, Int x)
{
    CycInt a(n);
    a.add_term(x, 1);
    a.add_term(-x, 1);
    return a;
}

bool divisible_by_int(const CycInt& a, const BigInt& k)
{
    if (k < 1)
        throw std::invalid_argument("divisible_by_int: k must be positive");
    for (const auto& c : a.reduced())
        if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t()))
            return false;
    return true;
}

bool is_real(const CycInt& a)
{
    return galois_apply(a, -1) == a;
}

} // namespace torsion
