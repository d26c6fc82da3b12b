#include "torsion/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "torsion/divisibility.hpp"
#include "torsion/psl2.hpp"
#include "torsion/realbasis.hpp"

namespace torsion::cli {

using json = nlohmann::ordered_json;

const char* to_string(Command c)
{
    switch (c) {
    case Command::verify:
        return "verify";
    case Command::case_check:
        return "case";
    case Command::lemma_phi:
        return "lemma-phi";
    case Command::nt_check:
        return "nt-check";
    case Command::basis:
        return "basis";
    case Command::orders:
        return "orders";
    case Command::explore_eps:
        return "explore-eps";
    }
    return "?";
}

namespace {

json big(const BigInt& v)
{
    if (v.fits_slong_p())
        return v.get_si();
    return v.get_str();
}

json big_list(const std::vector<BigInt>& v)
{
    json out = json::array();
    for (const auto& x : v)
        out.push_back(big(x));
    return out;
}

json header(const RunConfig& c)
{
    json j;
    j["schema_version"] = schema_version;
    j["version"] = version;
    j["command"] = to_string(c.command);
    return j;
}

std::string join(const std::vector<Int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

json stats_json(const PruningStats& s)
{
    return {{"power_constraint_prunes", s.power_constraint_prunes},
            {"trivial", s.trivial},
            {"rejected_dmu_only", s.rejected_dmu_only},
            {"rejected_difference_and_dmu", s.rejected_difference_and_dmu},
            {"survivors", s.survivors},
            {"lemma_bound_violations", s.lemma_bound_violations},
            {"kappa_filter_failures", s.kappa_filter_failures}};
}

json candidates_json(const CandidateReport& r)
{
    json j;
    j["applicable"] = r.applicable;
    if (!r.applicable)
        j["reason"] = r.reason;
    j["candidates"] = json::array();
    for (const auto& c : r.candidates)
        j["candidates"].push_back({{"d", c.d}, {"kappa_two_open", c.kappa_two_open}, {"bound", c.bound}});
    j["excluded"] = json::array();
    for (const auto& e : r.excluded)
        j["excluded"].push_back({{"d", e.d}, {"reason", e.reason}});
    return j;
}

std::string case_line(const CaseCertificate& c)
{
    std::ostringstream s;
    s << "case n=" << c.n << " d=" << c.d << ": " << to_string(c.verdict);
    if (c.verdict == CaseVerdict::not_applicable)
        s << " (" << c.reason << ")";
    else
        s << " (" << c.tuples_examined << " tuples, " << c.survivors.size() << " survivors, " << c.near_miss_total
          << " rejected)";
    return s.str();
}

void survivor_lines(const CaseCertificate& c, std::vector<std::string>& lines)
{
    for (const auto& t : c.survivors)
        lines.push_back("  survivor n=" + std::to_string(c.n) + " d=" + std::to_string(c.d) + " nu=(" + join(t.nus) +
                        ")");
}

CaseOptions case_options(const RunConfig& c)
{
    return {c.workers, c.max_witnesses};
}

// ------------------------------------------------------------ commands

RunResult run_case(const RunConfig& c)
{
    const CaseCertificate cert = check_case(*c.n, *c.d, case_options(c));
    json j = header(c);
    const json body = to_json(cert);
    for (const auto& [k, v] : body.items())
        j[k] = v;
    j["seed"] = c.seed;
    RunResult r{cert.verdict == CaseVerdict::survivors_found ? 1 : 0, std::move(j), {case_line(cert)}};
    if (c.list_survivors)
        survivor_lines(cert, r.summary);
    return r;
}

RunResult run_verify(const RunConfig& c)
{
    std::vector<Int> orders;
    std::vector<Int> cited;
    if (c.n) {
        orders.push_back(*c.n);
    } else {
        orders = admissible_orders(*c.q);
        for (Int n : group_profile(*c.q).element_orders)
            if (n > 1 && n % 2 == 1 && gcd(n, *c.q) == 1 && Modulus(n).is_prime_power())
                cited.push_back(n);
    }

    json j = header(c);
    if (c.q)
        j["q"] = *c.q;
    if (c.n)
        j["n"] = *c.n;
    j["seed"] = c.seed;
    RunResult r{0, {}, {}};
    json results = json::array();
    bool all_verified = true;
    for (Int n : orders) {
        const OrderVerdict v = verify_order(n, c.q, case_options(c));
        all_verified = all_verified && v.conclusion == OrderConclusion::verified;
        r.summary.push_back("order n=" + std::to_string(n) + ": " + to_string(v.conclusion) + " (" + v.basis + ")");
        for (const auto& cert : v.case_results) {
            r.summary.push_back("  " + case_line(cert));
            if (c.list_survivors)
                survivor_lines(cert, r.summary);
        }
        results.push_back(to_json(v));
    }
    if (!c.n) {
        j["cited_orders"] = cited;
        if (!cited.empty())
            r.summary.push_back("prime power orders (cited result): " + join(cited));
        if (orders.empty())
            r.summary.push_back("no odd non-prime-power orders coprime to q");
    }
    j["conclusion"] = to_string(all_verified ? OrderConclusion::verified : OrderConclusion::inconclusive);
    j["orders"] = std::move(results);
    r.report = std::move(j);
    r.exit_code = all_verified ? 0 : 1;
    return r;
}

RunResult run_lemma_phi(const RunConfig& c)
{
    json j = header(c);
    RunResult r{0, {}, {}};
    if (c.n) {
        const CycInt value = phi_at_lower_root(*c.n, *c.p, *c.m);
        const bool holds = divisible_by_int(value, *c.p);
        j["n"] = *c.n;
        j["p"] = *c.p;
        j["m"] = *c.m;
        j["value"] = big_list(value.reduced());
        j["holds"] = holds;
        r.summary.push_back("Phi_{" + std::to_string(*c.n) + "*" + std::to_string(*c.p) + "^" + std::to_string(*c.m) +
                            "}(zeta_" + std::to_string(*c.n) + ") " + (holds ? "is" : "is NOT") + " divisible by " +
                            std::to_string(*c.p));
        r.exit_code = holds ? 0 : 1;
    } else {
        json failures = json::array();
        int instances = 0;
        for (Int n = 1; n <= 45; ++n)
            for (Int p : {2, 3, 5, 7})
                for (Int m : {1, 2}) {
                    ++instances;
                    if (!check_phi_membership(n, p, m))
                        failures.push_back({{"n", n}, {"p", p}, {"m", m}});
                }
        j["range"] = {{"n_max", 45}, {"primes", {2, 3, 5, 7}}, {"m", {1, 2}}};
        j["instances"] = instances;
        j["holds"] = failures.empty();
        j["failures"] = failures;
        r.summary.push_back("lemma-phi suite: " + std::to_string(instances) + " instances, " +
                            std::to_string(failures.size()) + " failures");
        r.exit_code = failures.empty() ? 0 : 1;
    }
    j["seed"] = c.seed;
    r.report = std::move(j);
    return r;
}

RunResult run_nt_check(const RunConfig& c)
{
    json j = header(c);
    RunResult r{0, {}, {}};
    if (c.input) {
        std::ifstream in(*c.input);
        if (!in)
            throw UsageError("cannot read input file " + *c.input);
        const OmegaInstance inst = read_omega_instance(in);
        const NtVerdict v = check_nt(inst);
        j["source"] = *c.input;
        j["n"] = inst.n.value();
        j["d"] = inst.d;
        j["hypotheses_hold"] = v.hypotheses_hold;
        j["conclusion_holds"] = v.conclusion_holds;
        j["consistent"] = v.consistent();
        r.summary.push_back("nt-check n=" + std::to_string(inst.n.value()) + " d=" + std::to_string(inst.d) +
                            ": hypotheses " + (v.hypotheses_hold ? "hold" : "fail") + ", conclusion " +
                            (v.conclusion_holds ? "holds" : "fails"));
        r.exit_code = v.consistent() ? 0 : 1;
    } else {
        std::vector<Int> ds;
        if (c.d)
            ds.push_back(*c.d);
        else
            for (Int d : Modulus(*c.n).divisors())
                if (d > 1)
                    ds.push_back(d);
        j["n"] = *c.n;
        j["instances_per_d"] = c.count;
        json results = json::array();
        bool ok = true;
        for (Int d : ds) {
            std::seed_seq seq{static_cast<std::uint64_t>(c.seed), static_cast<std::uint64_t>(*c.n),
                              static_cast<std::uint64_t>(d)};
            std::mt19937_64 rng(seq);
            int hyp_fail = 0;
            int concl_fail = 0;
            for (int k = 0; k < c.count; ++k) {
                const NtVerdict v = check_nt(random_nt_instance(*c.n, d, rng));
                hyp_fail += !v.hypotheses_hold;
                concl_fail += !v.conclusion_holds;
            }
            ok = ok && hyp_fail == 0 && concl_fail == 0;
            results.push_back({{"d", d}, {"hypotheses_failed", hyp_fail}, {"conclusion_failed", concl_fail}});
            r.summary.push_back("nt-check n=" + std::to_string(*c.n) + " d=" + std::to_string(d) + ": " +
                                std::to_string(c.count) + " instances, " + std::to_string(hyp_fail) +
                                " hypothesis failures, " + std::to_string(concl_fail) + " conclusion failures");
        }
        j["results"] = std::move(results);
        j["holds"] = ok;
        r.exit_code = ok ? 0 : 1;
    }
    j["seed"] = c.seed;
    r.report = std::move(j);
    return r;
}

RunResult run_basis(const RunConfig& c)
{
    const Int n = *c.n;
    const auto basis = RealBasis::of(n);
    const Rational det = change_of_basis_matrix(n).determinant();

    bool formula_ok = true;
    bool moebius_ok = true;
    for (Int i = 0; i < n; ++i) {
        const RealCycElem general = decompose(alpha(n, i));
        const RealCycElem formula = decompose(n, AlphaCombination{{i, 1}});
        formula_ok = formula_ok && general == formula;
        moebius_ok = moebius_ok && moebius_expansion(n, i) == CycInt::zeta_power(n, i);
    }
    const bool size_ok = static_cast<Int>(basis->size()) * 2 == euler_phi(n);
    const bool unimodular = det == 1 || det == -1;

    json j = header(c);
    j["n"] = n;
    j["indices"] = basis->indices();
    j["size"] = basis->size();
    j["size_is_half_phi"] = size_ok;
    j["determinant"] = det.get_str();
    j["unimodular"] = unimodular;
    j["formula_matches_solve"] = formula_ok;
    j["moebius_expansion_holds"] = moebius_ok;
    j["seed"] = c.seed;
    const bool ok = size_ok && unimodular && formula_ok && moebius_ok;
    return {ok ? 0 : 1, std::move(j),
            {"basis n=" + std::to_string(n) + ": {" + join(basis->indices()) + "}, det " + det.get_str() +
             ", formula " + (formula_ok ? "agrees" : "DISAGREES") + ", Moebius expansion " +
             (moebius_ok ? "holds" : "FAILS")}};
}

RunResult run_orders(const RunConfig& c)
{
    const GroupProfile g = group_profile(*c.q);
    std::vector<Int> prime_power;
    for (Int n : g.element_orders)
        if (n > 1 && n % 2 == 1 && gcd(n, g.q) == 1 && Modulus(n).is_prime_power())
            prime_power.push_back(n);
    const auto admissible = admissible_orders(g.q);

    json j = header(c);
    j["q"] = g.q;
    j["t"] = g.t;
    j["f"] = g.f;
    j["d2"] = g.d2;
    j["order"] = big(g.order);
    j["element_orders"] = g.element_orders;
    j["admissible_orders"] = admissible;
    j["cited_orders"] = prime_power;
    j["seed"] = c.seed;
    return {0, std::move(j),
            {"PSL(2," + std::to_string(g.q) + "): order " + g.order.get_str() + ", element orders {" +
                 join(g.element_orders) + "}",
             "admissible orders {" + join(admissible) + "}"}};
}

RunResult run_explore_eps(const RunConfig& c)
{
    const Int n = *c.n;
    const Int classes = n / 2;
    const Int bound = c.bound;
    double space = 1;
    for (Int k = 0; k < classes; ++k)
        space *= static_cast<double>(2 * bound + 1);
    if (space > 2e7)
        throw UsageError("explore-eps: search space (2*bound+1)^" + std::to_string(classes) + " is too large");

    std::vector<Int> eps(static_cast<std::size_t>(classes + 1), 0);
    std::uint64_t searched = 0;
    json solutions = json::array();

    auto admissible = [&]() {
        const AugVector a(n, eps);
        for (Int mm = 1; mm <= *c.m; ++mm)
            for (Int l = 0; l < n; ++l) {
                const Rational mu = multiplicity(a, mm, l);
                if (mu < 0 || mu.get_den() != 1)
                    return false;
            }
        return true;
    };

    // eps_0 = 0, entries in [-bound, bound], sum 1.
    std::function<void(Int, Int)> walk = [&](Int x, Int sum) {
        const Int left = classes - x + 1;
        if (x > classes) {
            if (sum != 1)
                return;
            ++searched;
            if (admissible()) {
                Int support = 0;
                for (Int e : eps)
                    support += e != 0;
                solutions.push_back({{"eps", eps}, {"indicator", support == 1}});
            }
            return;
        }
        for (Int e = -bound; e <= bound; ++e) {
            const Int s = sum + e;
            if (s + (left - 1) * bound < 1 || s - (left - 1) * bound > 1)
                continue;
            eps[static_cast<std::size_t>(x)] = e;
            walk(x + 1, s);
        }
        eps[static_cast<std::size_t>(x)] = 0;
    };
    walk(1, 0);

    bool only_indicators = true;
    for (const auto& s : solutions)
        only_indicators = only_indicators && s["indicator"].get<bool>();

    json j = header(c);
    j["n"] = n;
    j["m"] = *c.m;
    j["bound"] = bound;
    j["searched"] = searched;
    j["solutions"] = solutions;
    j["only_indicators"] = only_indicators;
    j["seed"] = c.seed;
    return {0, std::move(j),
            {"explore-eps n=" + std::to_string(n) + " m<=" + std::to_string(*c.m) + " |eps|<=" +
             std::to_string(bound) + ": " + std::to_string(searched) + " vectors, " +
             std::to_string(solutions.size()) + " with nonnegative integral multiplicities"}};
}

void add_common(CLI::App* sub, RunConfig& c)
{
    sub->add_option("--output", c.output, "write the JSON report here ('-' for stdout)");
    sub->add_option("--workers", c.workers, "worker threads for case enumeration");
    sub->add_option("--seed", c.seed, "random seed, recorded in the report");
    sub->add_option("--max-witnesses", c.max_witnesses, "near-miss witnesses kept per case");
    sub->add_flag("--list-survivors", c.list_survivors, "print surviving tuples in the summary");
}

template <class T>
CLI::Option* opt(CLI::App* sub, const std::string& name, std::optional<T>& target, const std::string& help)
{
    return sub->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

} // namespace

json to_json(const CaseCertificate& cert)
{
    json j;
    j["n"] = cert.n;
    j["d"] = cert.d;
    j["verdict"] = to_string(cert.verdict);
    if (!cert.reason.empty())
        j["reason"] = cert.reason;
    j["lemma_bound"] = cert.lemma_bound;
    j["tuples_examined"] = cert.tuples_examined;
    j["pruning_stats"] = stats_json(cert.stats);
    j["survivors"] = json::array();
    for (const auto& t : cert.survivors)
        j["survivors"].push_back(t.nus);
    j["near_miss_witnesses"] = json::array();
    for (const auto& w : cert.near_misses)
        j["near_miss_witnesses"].push_back(
            {{"nus", w.tuple.nus}, {"b", w.b}, {"difference", w.difference}, {"max_abs_diff", w.max_abs_diff}});
    j["near_miss_total"] = cert.near_miss_total;
    return j;
}

json to_json(const OrderVerdict& v)
{
    json j;
    j["n"] = v.n;
    if (v.q)
        j["q"] = *v.q;
    j["conclusion"] = to_string(v.conclusion);
    j["basis"] = v.basis;
    j["candidates"] = candidates_json(v.candidates);
    j["cases"] = json::array();
    for (const auto& c : v.case_results)
        j["cases"].push_back(to_json(c));
    return j;
}

std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out)
{
    RunConfig c;
    CLI::App app{"Exact checks for torsion units of odd order in V(Z PSL(2,q))", "torsion-check"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    auto* verify = app.add_subcommand("verify", "verify every admissible order for q, or a single order n");
    opt(verify, "--q", c.q, "field size q");
    opt(verify, "--n", c.n, "unit order n");

    auto* kase = app.add_subcommand("case", "enumerate the eigenvalue patterns of one (n, d) case");
    opt(kase, "--n", c.n, "unit order n")->required();
    opt(kase, "--d", c.d, "divisor d of n")->required();

    auto* phi = app.add_subcommand("lemma-phi", "Phi_{n p^m}(zeta_n) in p Z[zeta_n]; whole suite without arguments");
    opt(phi, "--n", c.n, "n >= 1");
    opt(phi, "--p", c.p, "prime p");
    opt(phi, "--m", c.m, "exponent m >= 1");

    auto* nt = app.add_subcommand("nt-check", "omega_d in d Z[zeta_n] from a file or random instances");
    opt(nt, "--input", c.input, "instance file: 'n d' then A_0 .. A_{n-1}");
    opt(nt, "--n", c.n, "order for random instances");
    opt(nt, "--d", c.d, "divisor (default: every divisor > 1)");
    nt->add_option("--count", c.count, "random instances per divisor");

    auto* basis = app.add_subcommand("basis", "integral basis of Z[alpha_1] and its checks");
    opt(basis, "--n", c.n, "odd n >= 3")->required();

    auto* orders = app.add_subcommand("orders", "element orders of PSL(2,q)");
    opt(orders, "--q", c.q, "field size q")->required();

    auto* explore = app.add_subcommand("explore-eps", "bounded search over partial augmentations");
    opt(explore, "--n", c.n, "unit order n")->required();
    opt(explore, "--m", c.m, "largest character index")->required();
    explore->add_option("--bound", c.bound, "bound on |eps_x|");

    const std::vector<std::pair<CLI::App*, Command>> subs{
        {verify, Command::verify}, {kase, Command::case_check}, {phi, Command::lemma_phi},
        {nt, Command::nt_check},   {basis, Command::basis},     {orders, Command::orders},
        {explore, Command::explore_eps}};
    for (const auto& [sub, cmd] : subs)
        add_common(sub, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        app.exit(e, out, out);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    for (const auto& [sub, cmd] : subs)
        if (sub->parsed())
            c.command = cmd;
    validate(c);
    return c;
}

void validate(const RunConfig& c)
{
    auto need = [](bool ok, const std::string& msg) {
        if (!ok)
            throw UsageError(msg);
    };
    need(c.workers >= 1, "--workers must be at least 1");
    switch (c.command) {
    case Command::verify:
        need(c.q || c.n, "verify needs --q or --n");
        if (c.n)
            need(*c.n >= 1 && *c.n % 2 == 1, "verify: n must be odd and positive");
        break;
    case Command::case_check:
        need(c.n && c.d, "case needs --n and --d");
        need(*c.n >= 3 && *c.n % 2 == 1, "case: n must be odd and >= 3");
        need(*c.d >= 1 && *c.n % *c.d == 0,
             "case: d = " + std::to_string(*c.d) + " does not divide n = " + std::to_string(*c.n));
        break;
    case Command::lemma_phi:
        need((c.n && c.p && c.m) || (!c.n && !c.p && !c.m), "lemma-phi needs all of --n --p --m, or none");
        if (c.n) {
            need(*c.n >= 1 && *c.m >= 1, "lemma-phi: n and m must be positive");
            need(is_prime(*c.p), "lemma-phi: p must be prime");
        }
        break;
    case Command::nt_check:
        need(c.input.has_value() != c.n.has_value(), "nt-check needs exactly one of --input and --n");
        if (c.n) {
            need(*c.n >= 1, "nt-check: n must be positive");
            need(c.count >= 1, "nt-check: --count must be positive");
            if (c.d)
                need(*c.d >= 1 && *c.n % *c.d == 0, "nt-check: d must divide n");
        }
        break;
    case Command::basis:
        need(c.n && *c.n >= 3 && *c.n % 2 == 1, "basis: n must be odd and >= 3");
        break;
    case Command::orders:
        need(c.q.has_value(), "orders needs --q");
        break;
    case Command::explore_eps:
        need(c.n && *c.n >= 3 && *c.n % 2 == 1, "explore-eps: n must be odd and >= 3");
        need(c.m && *c.m >= 1, "explore-eps: m must be positive");
        need(c.bound >= 0, "explore-eps: bound must be nonnegative");
        break;
    }
}

RunResult execute(const RunConfig& c)
{
    validate(c);
    try {
        switch (c.command) {
        case Command::verify:
            return run_verify(c);
        case Command::case_check:
            return run_case(c);
        case Command::lemma_phi:
            return run_lemma_phi(c);
        case Command::nt_check:
            return run_nt_check(c);
        case Command::basis:
            return run_basis(c);
        case Command::orders:
            return run_orders(c);
        case Command::explore_eps:
            return run_explore_eps(c);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    RunResult r;
    try {
        r = execute(config);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }

    const std::string doc = r.report.dump(2) + "\n";
    std::ostream& summary = config.output == "-" ? err : out;
    for (const auto& line : r.summary)
        summary << line << "\n";
    if (config.output == "-") {
        out << doc;
    } else if (!config.output.empty()) {
        std::ofstream f(config.output, std::ios::binary);
        if (!(f << doc)) {
            err << "error: cannot write " << config.output << "\n";
            return 2;
        }
    }
    return r.exit_code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::optional<RunConfig> config;
    try {
        config = parse(argc, argv, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (!config)
        return 0;
    return run(*config, out, err);
}

} // namespace torsion::cli
