#pragma once

// Command-line surface. Every run produces one JSON report (written to
// --output, or to stdout with "--output -") and a short human summary.
//
// Exit codes: 0 all checks passed or eliminated, 1 a survivor or property
// violation was found, 2 invalid input.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torsion/helpengine.hpp"
#include "torsion/numtheory.hpp"

namespace torsion::cli {

inline constexpr const char* version = "0.1.0";
inline constexpr int schema_version = 1;

enum class Command { verify, case_check, lemma_phi, nt_check, basis, orders, explore_eps };

const char* to_string(Command c);

struct RunConfig {
    Command command = Command::verify;
    std::optional<Int> q;
    std::optional<Int> n;
    std::optional<Int> d;
    std::optional<Int> p;
    std::optional<Int> m;
    std::optional<std::string> input;
    std::string output;  // empty: no report file; "-": stdout
    unsigned workers = 1;
    std::uint64_t seed = 1;
    int count = 100;          // nt-check random instances per (n, d)
    Int bound = 2;            // explore-eps coefficient bound
    std::size_t max_witnesses = 64;
    bool list_survivors = false;
};

/// Thrown for configurations rejected before any computation.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses argv (argv[0] is the program name). Throws UsageError.
/// Returns std::nullopt when help was printed.
std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out);

/// Checks per-command parameters. Throws UsageError.
void validate(const RunConfig& config);

struct RunResult {
    int exit_code;
    nlohmann::ordered_json report;
    std::vector<std::string> summary;
};

/// Computes the report without touching the filesystem, except for
/// reading --input. Throws UsageError on invalid input.
RunResult execute(const RunConfig& config);

/// execute() plus report emission; never throws.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse() and run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// JSON fragments, shared with the tests.
nlohmann::ordered_json to_json(const CaseCertificate& cert);
nlohmann::ordered_json to_json(const OrderVerdict& verdict);

} // namespace torsion::cli
