#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "jetdiff/invariants.hpp"
#include "jetdiff/transitions.hpp"

namespace jetdiff::cli {

enum class ExitCode : int { Ok = 0, MathError = 1, UsageError = 2, InternalError = 3 };

enum class CommandKind { Basis, Dim, Decompose, Verify, Transition, Associated, V1, Theta };

struct Command {
    CommandKind kind = CommandKind::Basis;
    int rank = 2;
    int order = 2;
    int weight = 3;
    bool allow_large = false;
    std::string map;
    std::optional<std::string> point;
    std::string slope = "0";
    std::string polynomial;
    std::string matrix;
    std::string degree_range = "6:20";
    int theta_weight = 3;
    std::string upper_bound = "-1/3";
    bool json = false;
    std::optional<std::string> golden_dir;
};

struct Outcome {
    ExitCode code = ExitCode::Ok;
    std::string out;
    std::string err;
};

/// Parses argv (argv[0] is the program name). Returns either a validated
/// Command or the Outcome to report (help text, usage errors).
std::variant<Command, Outcome> parse_command_line(const std::vector<std::string>& args);

/// Executes a validated command. JSON output is byte-stable.
Outcome run(const Command& command);

/// parse_command_line followed by run.
Outcome main_entry(const std::vector<std::string>& args);

// JSON renderers, shared with the tests.
using Json = nlohmann::ordered_json;
Json to_json(const InvariantSpace& space, const std::optional<std::vector<IrrepLabel>>& decomposition);
Json to_json(const TransitionMatrix& t);
Json to_json(const SplittingVerdict& v);
Json to_json(const std::vector<ThetaAuditRow>& rows);

}  // namespace jetdiff::cli
