#pragma once

// Subcommand handlers. Each takes a schema-validated input document and
// returns the report written to --output.

#include "kll/arith.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace kll::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

struct RunOptions {
    Budget budget;
    int threads = 1;  // accepted for interface stability; every algorithm here is sequential
};

/// Schema file used to validate the input of a command ("" when none).
std::string schema_for(const std::string& command);

ojson run_field(const json& in, const RunOptions& opt);
ojson run_algebra(const json& in, const RunOptions& opt);
ojson run_order(const json& in, const RunOptions& opt);
ojson run_orbifold(const json& in, const RunOptions& opt);
ojson run_graph(const json& in, const RunOptions& opt);
ojson run_tower(const json& in, const RunOptions& opt);
ojson run_quotient(const json& in, const RunOptions& opt);
ojson run_cheeger(const json& in, const RunOptions& opt);
ojson run_count(const json& in, const RunOptions& opt);

/// Validates then dispatches.
ojson run_command(const std::string& command, const json& in, const RunOptions& opt);

struct VerifyOutcome {
    ojson report;
    bool all_passed = true;
    bool empty = false;
};

/// Runs a corpus of worked examples; a bad entry fails by name without
/// stopping the run.
VerifyOutcome verify_examples(const json& corpus, const RunOptions& opt);
/// The corpus compiled into the binary.
const json& builtin_corpus();

/// Plain-text CSV side outputs ("" when a command has none).
std::string csv_for(const std::string& command, const json& in, const RunOptions& opt);

}  // namespace kll::cli
