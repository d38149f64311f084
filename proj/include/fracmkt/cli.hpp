#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracmkt/calibration.hpp"
#include "fracmkt/io.hpp"
#include "fracmkt/model.hpp"

namespace fracmkt::cli {

enum class OutputFormat { Csv, Json };

/// Everything a subcommand needs. Loaded from a JSON config file, then
/// overridden by flags. Defaults reproduce the baseline run.
struct RunConfig {
    ModelParams params;
    // At most one of these; neither means the shipped default profile.
    std::optional<std::filesystem::path> endowments;
    std::optional<std::filesystem::path> profile;
    std::optional<std::uint64_t> population_seed;

    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    unsigned jobs = 0;  // 0 = all cores
    std::optional<std::filesystem::path> out;
    OutputFormat format = OutputFormat::Csv;
    bool trace = false;
    std::optional<std::filesystem::path> trace_out;

    std::string sweep_parameter;
    std::vector<double> sweep_values;

    CalibrationTargets targets;
    std::size_t budget = 2000;
    std::size_t days_per_eval = 200;
    std::size_t rounds = 4;
};

/// Parses a config document. Relative paths are resolved against `base_dir`.
RunConfig config_from_json(const Json& j, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracmkt::cli
