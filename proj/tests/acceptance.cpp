// One line per acceptance criterion: PASS or FAIL, with elapsed time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "torsion/cli.hpp"
#include "torsion/divisibility.hpp"
#include "torsion/helpengine.hpp"
#include "torsion/psl2.hpp"
#include "torsion/realbasis.hpp"

using namespace torsion;

namespace {

const std::vector<std::pair<Int, Int>> ledger_cases{{15, 3}, {15, 5}, {21, 3}, {21, 7},
                                                    {35, 7}, {45, 5}, {45, 15}, {75, 3}};

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool report(int id, const std::string& title, double limit_s, const std::function<Check()>& body)
{
    const auto t0 = Clock::now();
    Check c;
    try {
        c = body();
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail = std::string("exception: ") + e.what();
    }
    const double s = seconds_since(t0);
    if (c.ok && s >= limit_s) {
        c.ok = false;
        c.detail = "time limit " + std::to_string(limit_s) + " s exceeded";
    }
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), s,
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    return c.ok;
}

std::string nd(Int n, Int d)
{
    return "(" + std::to_string(n) + "," + std::to_string(d) + ")";
}

Check lemma_phi_suite()
{
    Check c;
    for (Int n = 1; n <= 45; ++n)
        for (Int p : {2, 3, 5, 7})
            for (Int m : {1, 2})
                c.require(check_phi_membership(n, p, m),
                          "n=" + std::to_string(n) + " p=" + std::to_string(p) + " m=" + std::to_string(m));
    return c;
}

Check nt_suite()
{
    Check c;
    for (Int n = 1; n <= 105; n += 2)
        for (Int d : Modulus(n).divisors()) {
            std::seed_seq seq{std::uint64_t{20260101}, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d)};
            std::mt19937_64 rng(seq);
            for (int k = 0; k < 100; ++k) {
                const NtVerdict v = check_nt(random_nt_instance(n, d, rng));
                c.require(v.hypotheses_hold && v.conclusion_holds, "instance " + std::to_string(k) + " at " + nd(n, d));
            }
        }
    return c;
}

Check basis_suite()
{
    Check c;
    for (Int n = 3; n <= 105; n += 2) {
        const auto idx = basis_indices(n);
        c.require(2 * static_cast<Int>(idx.size()) == euler_phi(n), "basis size at n=" + std::to_string(n));
        const Rational det = change_of_basis_matrix(n).determinant();
        c.require(det == 1 || det == -1, "determinant " + det.get_str() + " at n=" + std::to_string(n));
        for (Int i = 0; i < n; ++i) {
            const RealCycElem solved = decompose(alpha(n, i));
            for (std::size_t k = 0; k < idx.size(); ++k)
                c.require(solved.coords()[k] == coeff_of_alpha(n, idx[k], i),
                          "coefficient formula at n=" + std::to_string(n) + " b=" + std::to_string(idx[k]) +
                              " i=" + std::to_string(i));
            c.require(moebius_expansion(n, i) == CycInt::zeta_power(n, i),
                      "Moebius expansion at n=" + std::to_string(n) + " i=" + std::to_string(i));
        }
    }
    return c;
}

Check case_suite()
{
    Check c;
    for (const auto& [n, d] : ledger_cases) {
        const auto t0 = Clock::now();
        const CaseCertificate cert = check_case(n, d);
        c.require(seconds_since(t0) < 60, "case " + nd(n, d) + " over 60 s");
        c.require(cert.verdict == CaseVerdict::eliminated, "case " + nd(n, d) + " is " + to_string(cert.verdict));
    }
    const CandidateReport r27 = candidate_ds(27);
    c.require(!r27.applicable, "n=27 reported applicable");

    const CaseCertificate c153 = check_case(15, 3);
    bool witness = false;
    for (const auto& w : c153.near_misses)
        witness = witness || (w.tuple.nus == std::vector<Int>{2, 6, 7} && w.b == 1 && w.difference == -2);
    c.require(witness, "(15,3) witness -2 at b=1 missing");

    std::vector<Int> pass;
    for (Int d = 3; d <= 10000; d += 2)
        if (passes_difference_bound(d))
            pass.push_back(d);
    c.require(pass == std::vector<Int>{3, 5, 7, 9, 15}, "d-filter set differs");
    return c;
}

Check order_suite()
{
    Check c;
    for (const auto& [q, n] : std::vector<std::pair<Int, Int>>{{16, 15}, {31, 15}, {127, 21}, {127, 63}}) {
        const OrderVerdict v = verify_order(n, q);
        c.require(v.conclusion == OrderConclusion::verified, "q=" + std::to_string(q) + " n=" + std::to_string(n));
    }
    return c;
}

Check invariant_suite()
{
    Check c;
    for (const auto& [n, d] : ledger_cases) {
        const CaseCertificate cert = check_case(n, d);
        c.require(cert.stats.lemma_bound_violations == 0, "engine bound violation at " + nd(n, d));
        for (const auto& t : enumerate_nu_tuples(n, d)) {
            const BoundCheck b = bound_check(t);
            c.require(b.max_abs_diff <= b.lemma_bound, "bound violated at " + nd(n, d));

            CycInt x = CycInt::constant(n, 1);
            for (Int nu : t.nus)
                x += alpha(n, nu);
            const auto lhs = decompose(x).coords();
            const auto rhs = decompose(psi_value(n, d, 1)).coords();
            const auto formula = difference_vector(t);
            for (std::size_t k = 0; k < formula.size(); ++k)
                c.require(lhs[k] - rhs[k] == formula[k], "closed formula differs from decompose at " + nd(n, d));
        }
    }

    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<Int> coeff(-5, 5);
    for (Int n : {15, 21, 35, 45})
        for (int k = 0; k < 100; ++k) {
            std::vector<Int> eps(static_cast<std::size_t>(n / 2 + 1));
            for (auto& e : eps)
                e = coeff(rng);
            const AugVector a(n, eps);
            std::vector<CycInt> lams;
            for (Int i = 0; i < n; ++i)
                lams.push_back(lambda_value(a, i));
            c.require(eps_from_lambdas(lams, n) == a, "Vandermonde round trip at n=" + std::to_string(n));
        }
    return c;
}

std::string certificate(Int n, Int d, unsigned workers)
{
    cli::RunConfig config;
    config.command = cli::Command::case_check;
    config.n = n;
    config.d = d;
    config.workers = workers;
    config.output = "-";
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(config, out, err);
    return std::to_string(code) + "\n" + out.str();
}

Check determinism_suite()
{
    Check c;
    for (const auto& [n, d] : ledger_cases) {
        const std::string one = certificate(n, d, 1);
        c.require(one.rfind("0\n", 0) == 0, "certificate run failed at " + nd(n, d));
        c.require(certificate(n, d, 4) == one, "workers=4 certificate differs at " + nd(n, d));
        c.require(certificate(n, d, 1) == one, "repeated certificate differs at " + nd(n, d));
    }
    return c;
}

} // namespace

int main()
{
    bool ok = true;
    ok &= report(1, "Phi_{n p^m}(zeta_n) in p Z[zeta_n] for n <= 45, p in {2,3,5,7}, m in {1,2}", 60, lemma_phi_suite);
    ok &= report(2, "omega_d in d Z[zeta_n] on 100 seeded instances per (n, d), odd n <= 105", 120, nt_suite);
    ok &= report(3, "integral basis of Z[alpha_1], odd 3 <= n <= 105", 120, basis_suite);
    ok &= report(4, "case analysis reproduces the eliminated cases and witnesses", 8 * 60, case_suite);
    ok &= report(5, "verify_order verified for (16,15), (31,15), (127,21), (127,63)", 300, order_suite);
    ok &= report(6, "engine invariants: difference bound, closed formula, Vandermonde round trip", 600,
                 invariant_suite);
    ok &= report(7, "certificates byte-identical for workers 1 and 4", 600, determinism_suite);
    return ok ? 0 : 1;
}
