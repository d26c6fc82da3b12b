#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "torsion/cli.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    args.insert(args.begin(), "torsion-check");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = torsion::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json report(std::vector<std::string> args, int expected_code = 0)
{
    args.push_back("--output");
    args.push_back("-");
    const Outcome o = call(args);
    REQUIRE(o.code == expected_code);
    return json::parse(o.out);
}

fs::path temp_file(const std::string& name)
{
    return fs::temp_directory_path() / ("torsion_cli_test_" + name);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("verify --q 16 runs order 15")
{
    const Outcome o = call({"verify", "--q", "16"});
    CHECK(o.code == 0);
    CHECK(o.out.find("order n=15: verified") != std::string::npos);

    const json j = report({"verify", "--q", "16"});
    CHECK(j["schema_version"] == 1);
    CHECK(j["version"] == "0.1.0");
    CHECK(j["command"] == "verify");
    CHECK(j["conclusion"] == "verified");
    REQUIRE(j["orders"].size() == 1);
    CHECK(j["orders"][0]["n"] == 15);
    CHECK(j["orders"][0]["cases"].size() == 2);
    CHECK(j["cited_orders"] == json::array({3, 5, 17}));
}

TEST_CASE("case --n 45 --d 15")
{
    const json j = report({"case", "--n", "45", "--d", "15"});
    CHECK(j["verdict"] == "eliminated");
    CHECK(j["n"] == 45);
    CHECK(j["d"] == 15);
    CHECK(j["survivors"].empty());
    CHECK(j["pruning_stats"]["lemma_bound_violations"] == 0);
    CHECK(j.contains("seed"));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items())
        keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"schema_version", "version", "command", "n", "d", "verdict", "lemma_bound",
                                           "tuples_examined", "pruning_stats", "survivors", "near_miss_witnesses",
                                           "near_miss_total", "seed"});
}

TEST_CASE("invalid input exits with 2")
{
    CHECK(call({"case", "--n", "45", "--d", "2"}).code == 2);
    CHECK(call({"case", "--n", "30", "--d", "3"}).code == 2);
    CHECK(call({"case", "--n", "45"}).code == 2);
    CHECK(call({"verify", "--q", "12"}).code == 2);
    CHECK(call({"verify", "--n", "15", "--q", "25"}).code == 2);
    CHECK(call({"verify", "--n", "16"}).code == 2);
    CHECK(call({"verify"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"case", "--n", "15", "--d", "3", "--workers", "0"}).code == 2);
    CHECK(call({"lemma-phi", "--n", "3", "--p", "4", "--m", "1"}).code == 2);
    CHECK(call({"lemma-phi", "--n", "3"}).code == 2);
    CHECK(call({"nt-check"}).code == 2);
    CHECK(call({"basis", "--n", "14"}).code == 2);
    const Outcome o = call({"case", "--n", "45", "--d", "2"});
    CHECK(o.err.find("does not divide") != std::string::npos);
}

TEST_CASE("help exits with 0")
{
    CHECK(call({"--help"}).code == 0);
    CHECK(call({"case", "--help"}).code == 0);
}

TEST_CASE("reports are byte-identical across runs and worker counts")
{
    const auto a = temp_file("a.json");
    const auto b = temp_file("b.json");
    for (const char* nd : {"15 3", "45 15", "35 7"}) {
        std::istringstream s(nd);
        std::string n;
        std::string d;
        s >> n >> d;
        REQUIRE(call({"case", "--n", n, "--d", d, "--workers", "1", "--output", a.string()}).code == 0);
        REQUIRE(call({"case", "--n", n, "--d", d, "--workers", "4", "--output", b.string()}).code == 0);
        CHECK(slurp(a) == slurp(b));
        REQUIRE(call({"case", "--n", n, "--d", d, "--workers", "1", "--output", b.string()}).code == 0);
        CHECK(slurp(a) == slurp(b));
    }
    REQUIRE(call({"verify", "--q", "127", "--workers", "1", "--output", a.string()}).code == 0);
    REQUIRE(call({"verify", "--q", "127", "--workers", "3", "--output", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("unwritable output exits with 2")
{
    CHECK(call({"orders", "--q", "7", "--output", "/nonexistent-dir/x.json"}).code == 2);
}

TEST_CASE("case for a non-candidate divisor is reported, not failed")
{
    const json j = report({"case", "--n", "45", "--d", "9"});
    CHECK(j["verdict"] == "not_applicable");
    CHECK(j.contains("reason"));
}

TEST_CASE("lemma-phi")
{
    const json one = report({"lemma-phi", "--n", "3", "--p", "2", "--m", "1"});
    CHECK(one["holds"] == true);
    CHECK(one["value"] == json::array({0, -2}));
    const json suite = report({"lemma-phi"});
    CHECK(suite["instances"] == 360);
    CHECK(suite["failures"].empty());
}

TEST_CASE("nt-check from a file")
{
    const auto path = temp_file("inst.txt");
    {
        std::ofstream f(path);
        f << "15 15\n";
        // Phi_3 * Phi_5 = 1 + 2X + 3X^2 + 3X^3 + 3X^4 + 2X^5 + X^6
        for (int c : {1, 2, 3, 3, 3, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0})
            f << c << "\n";
    }
    const json j = report({"nt-check", "--input", path.string()});
    CHECK(j["hypotheses_hold"] == true);
    CHECK(j["conclusion_holds"] == true);

    {
        std::ofstream f(path);
        f << "15 15\n0\n1\n";
    }
    CHECK(call({"nt-check", "--input", path.string()}).code == 2);
    fs::remove(path);
    CHECK(call({"nt-check", "--input", path.string()}).code == 2);
}

TEST_CASE("nt-check on random instances is seeded")
{
    const json a = report({"nt-check", "--n", "45", "--count", "5", "--seed", "9"});
    const json b = report({"nt-check", "--n", "45", "--count", "5", "--seed", "9"});
    CHECK(a == b);
    CHECK(a["seed"] == 9);
    CHECK(a["holds"] == true);
    CHECK(a["results"].size() == 5);
}

TEST_CASE("basis and orders")
{
    const json b = report({"basis", "--n", "15"});
    CHECK(b["indices"] == json::array({1, 2, 4, 7}));
    CHECK(b["unimodular"] == true);
    CHECK(b["formula_matches_solve"] == true);
    CHECK(b["moebius_expansion_holds"] == true);

    const json o = report({"orders", "--q", "127"});
    CHECK(o["admissible_orders"] == json::array({21, 63}));
    CHECK(o["order"] == 1024128);
}

TEST_CASE("explore-eps")
{
    const json j = report({"explore-eps", "--n", "15", "--m", "3", "--bound", "1"});
    CHECK(j["searched"].get<int>() > 0);
    bool has_g0 = false;
    for (const auto& s : j["solutions"])
        has_g0 = has_g0 || s["eps"] == json::array({0, 1, 0, 0, 0, 0, 0, 0});
    CHECK(has_g0);
    CHECK(call({"explore-eps", "--n", "45", "--m", "2", "--bound", "3"}).code == 2);
}
