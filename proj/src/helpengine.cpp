#include "torsion/helpengine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "torsion/realbasis.hpp"

namespace torsion {

// ------------------------------------------------ partial augmentations

AugVector::AugVector(Int n, std::vector<Int> eps) : n_(n), eps_(std::move(eps))
{
    if (n < 1)
        throw std::invalid_argument("AugVector: order must be positive");
    if (static_cast<Int>(eps_.size()) != n / 2 + 1)
        throw std::invalid_argument("AugVector: expected " + std::to_string(n / 2 + 1) + " entries, got " +
                                    std::to_string(eps_.size()));
}

AugVector AugVector::indicator(Int n, Int x)
{
    std::vector<Int> eps(static_cast<std::size_t>(n / 2 + 1));
    eps[static_cast<std::size_t>(gamma_class(x, n))] = 1;
    return AugVector(n, std::move(eps));
}

Int AugVector::augmentation() const
{
    Int s = 0;
    for (Int e : eps_)
        s += e;
    return s;
}

CycInt lambda_value(const AugVector& eps, Int i)
{
    const Int n = eps.n();
    CycInt out(n);
    for (Int x = 0; x < static_cast<Int>(eps.values().size()); ++x) {
        const Int e = eps.values()[static_cast<std::size_t>(x)];
        if (e == 0)
            continue;
        out.add_term(i * x, e);
        out.add_term(-i * x, e);
    }
    return out;
}

AugVector eps_from_lambdas(const std::vector<CycInt>& lams, Int n)
{
    if (static_cast<Int>(lams.size()) != n)
        throw std::invalid_argument("eps_from_lambdas: expected lambda_0 .. lambda_{n-1}");
    for (const auto& l : lams)
        if (l.n() != n)
            throw std::invalid_argument("eps_from_lambdas: modulus mismatch");

    // With E_0 = 2 eps_0 and E_x = eps_{class x} otherwise,
    // lambda_i = sum_j E_j zeta^{ij}, so sum_i lambda_i zeta^{-ij} = n E_j.
    const BigInt nn = n;
    std::vector<BigInt> E(static_cast<std::size_t>(n));
    for (Int j = 0; j < n; ++j) {
        std::vector<BigInt> raw(static_cast<std::size_t>(n));
        for (Int i = 0; i < n; ++i) {
            const auto& c = lams[static_cast<std::size_t>(i)].coeffs();
            const Int shift = mod(-i * j, n);
            for (Int k = 0; k < n; ++k)
                if (c[static_cast<std::size_t>(k)] != 0)
                    raw[static_cast<std::size_t>((k + shift) % n)] += c[static_cast<std::size_t>(k)];
        }
        const auto red = CycInt(n, raw).reduced();
        for (std::size_t k = 1; k < red.size(); ++k)
            if (red[k] != 0)
                throw std::invalid_argument("eps_from_lambdas: lambdas do not come from class functions");
        if (!mpz_divisible_p(red[0].get_mpz_t(), nn.get_mpz_t()))
            throw std::invalid_argument("eps_from_lambdas: non-integral partial augmentation");
        E[static_cast<std::size_t>(j)] = red[0] / nn;
    }

    std::vector<Int> eps(static_cast<std::size_t>(n / 2 + 1));
    if (!mpz_divisible_ui_p(E[0].get_mpz_t(), 2))
        throw std::invalid_argument("eps_from_lambdas: non-integral partial augmentation at the identity");
    eps[0] = BigInt(E[0] / 2).get_si();
    for (Int x = 1; x <= n / 2; ++x) {
        if (E[static_cast<std::size_t>(x)] != E[static_cast<std::size_t>(n - x)])
            throw std::invalid_argument("eps_from_lambdas: lambdas are not real class functions");
        eps[static_cast<std::size_t>(x)] = E[static_cast<std::size_t>(x)].get_si();
    }
    return AugVector(n, std::move(eps));
}

Rational multiplicity(const AugVector& eps, Int m, Int l)
{
    const Int n = eps.n();
    return multiplicity(eps, m, l, [n](Int c) { return AugVector::indicator(n, c); });
}

Rational multiplicity(const AugVector& eps, Int m, Int l, const PowerAugmentations& powers)
{
    const Int n = eps.n();
    if (m < 0)
        throw std::invalid_argument("multiplicity: character index must be nonnegative");
    BigInt total = 0;
    for (Int c : Modulus(n).divisors()) {
        const AugVector power = c == 1 ? eps : (c == n ? AugVector::indicator(n, 0) : powers(c));
        if (power.n() != n)
            throw std::invalid_argument("multiplicity: power augmentations use a different order");
        const Int sub = n / c;
        // Tr_{Q(zeta^c)/Q}(zeta^{c s}) is the Ramanujan sum c_{n/c}(s).
        for (Int y = 0; y < static_cast<Int>(power.values().size()); ++y) {
            const Int e = power.values()[static_cast<std::size_t>(y)];
            if (e == 0)
                continue;
            if (y % c != 0)
                throw std::invalid_argument("multiplicity: u^" + std::to_string(c) +
                                            " has a partial augmentation outside the order-" +
                                            std::to_string(sub) + " classes");
            // Class y and its negative both contribute when y != 0, matching
            // psi_m on the real class of g_0^y.
            BigInt tr = 0;
            for (Int j = -m; j <= m; ++j)
                tr += ramanujan_sum(sub, (y / c) * j - l);
            total += BigInt(e) * tr;
        }
    }
    Rational r(total, BigInt(n));
    r.canonicalize();
    return r;
}

// ------------------------------------------------------- candidate d

Int difference_bound(Int d, bool kappa_two)
{
    const Int base = Int{1} << (prime_count(d) + 2);
    return kappa_two ? base + 1 : base;
}

bool passes_difference_bound(Int d)
{
    return d <= difference_bound(d, true);
}

std::vector<Int> CandidateReport::ds() const
{
    std::vector<Int> out;
    for (const auto& c : candidates)
        out.push_back(c.d);
    return out;
}

bool CandidateReport::contains(Int d) const
{
    return std::any_of(candidates.begin(), candidates.end(), [d](const CandidateD& c) { return c.d == d; });
}

CandidateReport candidate_ds(Int n)
{
    CandidateReport r{n, false, {}, {}, {}};
    if (n < 3 || n % 2 == 0) {
        r.reason = "order " + std::to_string(n) + " is not an odd integer >= 3";
        return r;
    }
    const Modulus mod_n(n);
    if (mod_n.is_prime_power()) {
        r.reason = "order " + std::to_string(n) + " is a prime power";
        return r;
    }
    r.applicable = true;
    const Int p = mod_n.smallest_prime();
    for (Int d : mod_n.divisors()) {
        if (d == 1) {
            r.excluded.push_back({d, "lambda_1 = alpha_1 by the choice of g_0"});
            continue;
        }
        if (d == n) {
            r.excluded.push_back({d, "lambda_n = 2 = alpha_n since u has augmentation 1"});
            continue;
        }
        const bool open = n / d == p;
        const Int bound = difference_bound(d, open);
        if (d > bound) {
            r.excluded.push_back({d, "d = " + std::to_string(d) + " exceeds the difference bound " +
                                         std::to_string(bound) +
                                         (open ? "" : " (no nu can be 0 mod n since n/d is not the smallest prime)")});
            continue;
        }
        r.candidates.push_back({d, open, bound});
    }
    return r;
}

// ------------------------------------------------------- nu tuples

NuTuple identity_tuple(Int n, Int d)
{
    NuTuple t{n, d, {}};
    for (Int i = 1; i <= d; ++i)
        t.nus.push_back(gamma_class(i, n));
    std::sort(t.nus.begin(), t.nus.end());
    return t;
}

bool satisfies_power_constraints(const NuTuple& t)
{
    if (static_cast<Int>(t.nus.size()) != t.d)
        return false;
    for (Int c : Modulus(t.n).divisors()) {
        if (c == 1)
            continue;
        const Int m = t.n / c;
        std::vector<Int> lhs;
        std::vector<Int> rhs;
        for (Int i = 1; i <= t.d; ++i) {
            lhs.push_back(gamma_class(t.nus[static_cast<std::size_t>(i - 1)], m));
            rhs.push_back(gamma_class(i, m));
        }
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        if (lhs != rhs)
            return false;
    }
    return true;
}

namespace {

void require_basis_index(const RealBasis& basis, Int b)
{
    if (!basis.position(b))
        throw std::invalid_argument("cb_difference: " + std::to_string(b) + " is not a basis index mod " +
                                    std::to_string(basis.n()));
}

} // namespace

Int cb_difference(const NuTuple& t, Int b)
{
    const auto basis = RealBasis::of(t.n);
    require_basis_index(*basis, b);
    const Modulus& m = basis->modulus();
    Int s = 0;
    for (Int nu : t.nus)
        s += alpha_coefficient_term(m, b, nu);
    for (Int i = 1; i <= t.d; ++i)
        s -= alpha_coefficient_term(m, b, i);
    return s;
}

std::vector<Int> difference_vector(const NuTuple& t)
{
    std::vector<Int> out;
    for (Int b : RealBasis::of(t.n)->indices())
        out.push_back(cb_difference(t, b));
    return out;
}

BoundCheck bound_check(const NuTuple& t)
{
    Int max_abs = 0;
    for (Int v : difference_vector(t))
        max_abs = std::max(max_abs, v < 0 ? -v : v);
    const bool kappa_two = std::any_of(t.nus.begin(), t.nus.end(), [&](Int nu) { return mod(nu, t.n) == 0; });
    return {max_abs, difference_bound(t.d, kappa_two)};
}

bool kappa_filter(const NuTuple& t)
{
    const auto zeros = std::count_if(t.nus.begin(), t.nus.end(), [&](Int nu) { return mod(nu, t.n) == 0; });
    if (zeros == 0)
        return true;
    if (zeros > 1)
        return false;
    return t.n / t.d == Modulus(t.n).smallest_prime();
}

TupleClass classify_difference(const std::vector<Int>& diff, Int d)
{
    if (d < 1)
        throw std::invalid_argument("classify_difference: d must be positive");
    bool nonzero = false;
    bool divisible = true;
    Int max_abs = 0;
    for (Int v : diff) {
        nonzero = nonzero || v != 0;
        divisible = divisible && v % d == 0;
        max_abs = std::max(max_abs, v < 0 ? -v : v);
    }
    if (!nonzero)
        return TupleClass::trivial;
    if (divisible)
        return TupleClass::survivor;
    return max_abs >= d ? TupleClass::rejected_dmu_only : TupleClass::rejected_difference_and_dmu;
}

// ---------------------------------------------------- enumeration core

namespace {

// Precomputed data for one (n, d). Tuples are built group by group: positions
// i whose targets share a Gamma_{n/p} class (p the smallest prime of n) form
// a group, filled by a nondecreasing run of lifts of that class to Gamma_n.
// The constraints for the other primes are tracked as remaining class counts.
struct CaseTables {
    struct Group {
        Int target_class;
        int count;
        std::vector<Int> lifts;
    };

    Int n = 0;
    Int d = 0;
    Int smallest_prime = 0;
    std::vector<Int> indices;
    std::size_t h = 0;            // number of basis indices
    std::vector<int> contrib;     // C_b(alpha_x), row x in [0, n/2]
    std::vector<int> base;        // sum_{i=1}^d C_b(alpha_i)
    std::vector<Group> groups;
    std::vector<std::vector<int>> slot;  // per other prime: x -> index into counts
    std::vector<int> initial_counts;

    CaseTables(Int n_, Int d_) : n(n_), d(d_)
    {
        const Modulus mod_n(n);
        const auto basis = RealBasis::of(n);
        h = basis->size();
        indices = basis->indices();
        smallest_prime = mod_n.smallest_prime();
        const Int classes = n / 2 + 1;

        contrib.assign(static_cast<std::size_t>(classes) * h, 0);
        for (Int x = 0; x < classes; ++x)
            for (std::size_t k = 0; k < h; ++k)
                contrib[static_cast<std::size_t>(x) * h + k] =
                    alpha_coefficient_term(mod_n, basis->indices()[k], x);
        base.assign(h, 0);
        for (Int i = 1; i <= d; ++i)
            for (std::size_t k = 0; k < h; ++k)
                base[k] += alpha_coefficient_term(mod_n, basis->indices()[k], i);

        const Int p = mod_n.smallest_prime();
        const Int coarse = n / p;
        std::map<Int, int> target;
        for (Int i = 1; i <= d; ++i)
            ++target[gamma_class(i, coarse)];
        for (const auto& [cls, count] : target) {
            Group g{cls, count, {}};
            for (Int x = 0; x < classes; ++x)
                if (gamma_class(x, coarse) == cls)
                    g.lifts.push_back(x);
            groups.push_back(std::move(g));
        }

        for (Int q : mod_n.primes()) {
            if (q == p)
                continue;
            const Int m = n / q;
            const int offset = static_cast<int>(initial_counts.size());
            initial_counts.resize(initial_counts.size() + static_cast<std::size_t>(m / 2 + 1), 0);
            for (Int i = 1; i <= d; ++i)
                ++initial_counts[static_cast<std::size_t>(offset + gamma_class(i, m))];
            std::vector<int> s(static_cast<std::size_t>(classes));
            for (Int x = 0; x < classes; ++x)
                s[static_cast<std::size_t>(x)] = offset + static_cast<int>(gamma_class(x, m));
            slot.push_back(std::move(s));
        }
    }
};

struct SearchState {
    std::vector<Int> chosen;
    std::vector<int> remaining;
    std::vector<int> sum;
};

class Search {
public:
    using Visit = std::function<void(const SearchState&)>;

    Search(const CaseTables& tables, std::size_t stop_group, Visit visit)
        : t_(tables), stop_(stop_group), visit_(std::move(visit))
    {
    }

    std::uint64_t prunes() const { return prunes_; }

    void run_from(std::size_t group, SearchState& s)
    {
        if (group >= stop_) {
            visit_(s);
            return;
        }
        fill(group, t_.groups[group].count, 0, s);
    }

private:
    void fill(std::size_t group, int left, std::size_t min_idx, SearchState& s)
    {
        if (left == 0) {
            run_from(group + 1, s);
            return;
        }
        const auto& lifts = t_.groups[group].lifts;
        for (std::size_t idx = min_idx; idx < lifts.size(); ++idx) {
            const Int x = lifts[idx];
            const auto xs = static_cast<std::size_t>(x);
            bool ok = true;
            for (const auto& sl : t_.slot)
                if (s.remaining[static_cast<std::size_t>(sl[xs])] == 0) {
                    ok = false;
                    break;
                }
            if (!ok) {
                ++prunes_;
                continue;
            }
            for (const auto& sl : t_.slot)
                --s.remaining[static_cast<std::size_t>(sl[xs])];
            for (std::size_t k = 0; k < t_.h; ++k)
                s.sum[k] += t_.contrib[xs * t_.h + k];
            s.chosen.push_back(x);

            fill(group, left - 1, idx, s);

            s.chosen.pop_back();
            for (std::size_t k = 0; k < t_.h; ++k)
                s.sum[k] -= t_.contrib[xs * t_.h + k];
            for (const auto& sl : t_.slot)
                ++s.remaining[static_cast<std::size_t>(sl[xs])];
        }
    }

    const CaseTables& t_;
    std::size_t stop_;
    Visit visit_;
    std::uint64_t prunes_ = 0;
};

SearchState initial_state(const CaseTables& t)
{
    SearchState s;
    s.chosen.reserve(static_cast<std::size_t>(t.d));
    s.remaining = t.initial_counts;
    s.sum.assign(t.h, 0);
    return s;
}

NuTuple canonical(const CaseTables& t, const std::vector<Int>& chosen)
{
    NuTuple tuple{t.n, t.d, chosen};
    std::sort(tuple.nus.begin(), tuple.nus.end());
    return tuple;
}

struct Accumulator {
    std::uint64_t examined = 0;
    PruningStats stats;
    std::vector<NuTuple> survivors;
    std::set<Witness> witnesses;
    std::uint64_t near_total = 0;
    std::size_t max_witnesses = 0;
    std::vector<Int> scratch;

    void keep(Witness w)
    {
        if (max_witnesses == 0)
            return;
        if (witnesses.size() == max_witnesses && !(w < *witnesses.rbegin()))
            return;
        witnesses.insert(std::move(w));
        if (witnesses.size() > max_witnesses)
            witnesses.erase(std::prev(witnesses.end()));
    }

    void merge(Accumulator&& o)
    {
        examined += o.examined;
        stats += o.stats;
        near_total += o.near_total;
        for (auto& s : o.survivors)
            survivors.push_back(std::move(s));
        for (const auto& w : o.witnesses)
            keep(w);
    }
};

void classify(const CaseTables& t, const SearchState& s, Accumulator& acc)
{
    ++acc.examined;
    std::vector<Int>& diff = acc.scratch;
    diff.resize(t.h);
    Int max_abs = 0;
    for (std::size_t k = 0; k < t.h; ++k) {
        diff[k] = s.sum[k] - t.base[k];
        max_abs = std::max(max_abs, diff[k] < 0 ? -diff[k] : diff[k]);
    }

    const auto zeros = std::count(s.chosen.begin(), s.chosen.end(), Int{0});
    if (max_abs > difference_bound(t.d, zeros > 0))
        ++acc.stats.lemma_bound_violations;
    const bool kappa_ok = zeros == 0 || (zeros == 1 && t.n / t.d == t.smallest_prime);
    if (!kappa_ok)
        ++acc.stats.kappa_filter_failures;

    switch (classify_difference(diff, t.d)) {
    case TupleClass::trivial:
        ++acc.stats.trivial;
        return;
    case TupleClass::survivor:
        ++acc.stats.survivors;
        acc.survivors.push_back(canonical(t, s.chosen));
        return;
    case TupleClass::rejected_dmu_only:
        ++acc.stats.rejected_dmu_only;
        break;
    case TupleClass::rejected_difference_and_dmu:
        ++acc.stats.rejected_difference_and_dmu;
        break;
    }
    ++acc.near_total;
    if (acc.max_witnesses > 0) {
        std::size_t k = 0;
        while (diff[k] % t.d == 0)
            ++k;
        acc.keep({canonical(t, s.chosen), t.indices[k], diff[k], max_abs});
    }
}

void require_case_args(Int n, Int d)
{
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("expected an odd order n >= 3, got " + std::to_string(n));
    if (d < 1 || n % d != 0)
        throw std::invalid_argument("d = " + std::to_string(d) + " does not divide n = " + std::to_string(n));
}

} // namespace

std::vector<NuTuple> enumerate_nu_tuples(Int n, Int d)
{
    require_case_args(n, d);
    if (Modulus(n).is_prime_power())
        throw std::invalid_argument("enumerate_nu_tuples: n = " + std::to_string(n) + " is a prime power");
    const CaseTables tables(n, d);
    std::vector<NuTuple> out;
    Search search(tables, tables.groups.size(),
                  [&](const SearchState& s) { out.push_back(canonical(tables, s.chosen)); });
    SearchState s = initial_state(tables);
    search.run_from(0, s);
    return out;
}

// ---------------------------------------------------- certificates

const char* to_string(CaseVerdict v)
{
    switch (v) {
    case CaseVerdict::eliminated:
        return "eliminated";
    case CaseVerdict::survivors_found:
        return "survivors_found";
    case CaseVerdict::not_applicable:
        return "not_applicable";
    }
    return "?";
}

const char* to_string(OrderConclusion c)
{
    return c == OrderConclusion::verified ? "verified" : "inconclusive";
}

PruningStats& PruningStats::operator+=(const PruningStats& o)
{
    power_constraint_prunes += o.power_constraint_prunes;
    trivial += o.trivial;
    rejected_dmu_only += o.rejected_dmu_only;
    rejected_difference_and_dmu += o.rejected_difference_and_dmu;
    survivors += o.survivors;
    lemma_bound_violations += o.lemma_bound_violations;
    kappa_filter_failures += o.kappa_filter_failures;
    return *this;
}

CaseCertificate check_case(Int n, Int d, const CaseOptions& options)
{
    require_case_args(n, d);
    CaseCertificate cert{n, d, CaseVerdict::not_applicable, {}, 0, {}, 0, {}, {}, 0};

    const CandidateReport report = candidate_ds(n);
    if (!report.applicable) {
        cert.reason = report.reason;
        return cert;
    }
    if (!report.contains(d)) {
        for (const auto& e : report.excluded)
            if (e.d == d)
                cert.reason = e.reason;
        return cert;
    }
    for (const auto& c : report.candidates)
        if (c.d == d)
            cert.lemma_bound = c.bound;

    const CaseTables tables(n, d);

    // Split the search tree after the first group; every branch is then
    // independent and partial results merge by summation and sorting.
    std::vector<SearchState> prefixes;
    Search split(tables, 1, [&](const SearchState& s) { prefixes.push_back(s); });
    {
        SearchState s = initial_state(tables);
        split.run_from(0, s);
    }

    const unsigned workers = std::max(1u, options.workers);
    std::vector<Accumulator> partial(workers);
    std::vector<std::uint64_t> prunes(workers, 0);
    auto work = [&](unsigned w) {
        Accumulator& acc = partial[w];
        acc.max_witnesses = options.max_witnesses;
        Search search(tables, tables.groups.size(), [&](const SearchState& s) { classify(tables, s, acc); });
        for (std::size_t k = w; k < prefixes.size(); k += workers) {
            SearchState s = prefixes[k];
            search.run_from(1, s);
        }
        prunes[w] = search.prunes();
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
    }

    Accumulator total;
    total.max_witnesses = options.max_witnesses;
    total.stats.power_constraint_prunes = split.prunes();
    for (unsigned w = 0; w < workers; ++w) {
        total.stats.power_constraint_prunes += prunes[w];
        total.merge(std::move(partial[w]));
    }
    std::sort(total.survivors.begin(), total.survivors.end());

    cert.tuples_examined = total.examined;
    cert.stats = total.stats;
    cert.survivors = std::move(total.survivors);
    cert.near_misses.assign(total.witnesses.begin(), total.witnesses.end());
    cert.near_miss_total = total.near_total;
    cert.verdict = cert.survivors.empty() ? CaseVerdict::eliminated : CaseVerdict::survivors_found;
    return cert;
}

OrderVerdict verify_order(Int n, std::optional<Int> q, const CaseOptions& options)
{
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("verify_order: order " + std::to_string(n) + " is not odd");
    OrderVerdict v{q, n, OrderConclusion::verified, {}, candidate_ds(n), {}};
    if (q) {
        const auto fac = factorize(*q);
        if (*q < 4 || fac.size() != 1)
            throw std::invalid_argument("verify_order: q = " + std::to_string(*q) + " is not a prime power >= 4");
        if (gcd(n, *q) != 1)
            throw std::invalid_argument("verify_order: order " + std::to_string(n) + " is divisible by the characteristic " +
                                        std::to_string(fac.front().prime));
        const Int d2 = gcd(2, *q - 1);
        if (((*q - 1) / d2) % n != 0 && ((*q + 1) / d2) % n != 0) {
            v.basis = "PSL(2," + std::to_string(*q) + ") has no element of order " + std::to_string(n) +
                      ", so no torsion unit of this order exists";
            return v;
        }
    }
    if (n == 1) {
        v.basis = "trivial unit";
        return v;
    }
    if (!v.candidates.applicable) {
        v.basis = "prime power order coprime to the characteristic: rationally conjugate to a group element by a known theorem";
        return v;
    }

    for (const auto& c : v.candidates.candidates) {
        v.case_results.push_back(check_case(n, c.d, options));
        if (v.case_results.back().verdict != CaseVerdict::eliminated)
            v.conclusion = OrderConclusion::inconclusive;
    }
    v.basis = v.conclusion == OrderConclusion::verified
                  ? "every candidate d eliminated, so lambda_i = alpha_i for all i and the partial "
                    "augmentations of u equal those of g_0"
                  : "some candidate d has surviving eigenvalue patterns";
    return v;
}

} // namespace torsion
