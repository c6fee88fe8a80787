#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "efinv/dense_core.hpp"

namespace efinv::cli {

enum class Command { Pinv, Drazin, Group, Outer, Ef, Crcr, Mary, Bilateral, Catalog, Exists, Verify, Canonical };

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNotExistent = 2, kExitVerification = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommandInfo {
    Command command;
    std::string_view name;
    std::string_view help;
    std::span<const std::string_view> required;
    std::span<const std::string_view> optional;
    bool takes_name_and_m;
    bool takes_order;
};

std::span<const CommandInfo> all_commands();
const CommandInfo& command_info(Command command);
Command parse_command(std::string_view text);

/// Tolerance overrides; unset fields fall back to EFINV_TOL (residual_tol only)
/// and then to the library defaults.
struct ToleranceOverrides {
    std::optional<double> rank_rel_tol;
    std::optional<double> residual_tol;
    std::optional<double> idempotency_tol;
};

struct JobSpec {
    Command command = Command::Pinv;
    /// Input name ("A", "E", "X1", "T", ...) to file path.
    std::map<std::string, std::filesystem::path> inputs;
    std::optional<std::string> name;
    std::optional<int> m;
    std::optional<std::string> order;
    ToleranceOverrides tol;
    std::optional<std::filesystem::path> output;
    /// Results with more entries are written next to the report instead of inline.
    std::size_t inline_limit = 1'000'000;

    /// Throws UsageError on missing or unexpected inputs and parameters.
    void validate() const;
};

/// {"command": ..., "inputs": {...}, "params": {...}, "tolerance": {...}, "output": ...}.
/// Relative paths are resolved against `base_dir`. Unknown keys are rejected.
JobSpec parse_job_json(std::string_view text, const std::filesystem::path& base_dir = {});

/// `env_tol` is the value of EFINV_TOL, if set.
ToleranceContext resolve_tolerance(const ToleranceOverrides& overrides, const char* env_tol);

struct Report {
    int exit_code = kExitOk;
    nlohmann::ordered_json json;
    /// Human-readable residual summary for stderr.
    std::string summary;
};

/// Runs the job. Never throws: failures are reported through exit_code and json["error"].
Report run(const JobSpec& job, const char* env_tol = nullptr);

} // namespace efinv::cli
