#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "madp/io/run_summary.hpp"
#include "madp/policy_eval.hpp"
#include "madp/problems/instances.hpp"

namespace madp::bench {

/// One experiment: an instance label, an algorithm, and run parameters.
/// Loadable from a JSON config document; CLI flags override config keys.
struct ExperimentConfig {
    std::string instance;
    std::optional<int> scale;
    std::string algorithm = "madp"; // madp | avi | ql | bdp
    std::int64_t iterations = 0;
    std::uint64_t seed = 0;
    double epsilon = 0.5;
    double stepsize_a = 20.0;
    std::vector<std::int64_t> checkpoints; // empty: log-spaced default
    std::int64_t eval_paths = 1000;
    std::filesystem::path out_dir = "out";
    std::optional<std::filesystem::path> reference_table;
    bool allow_huge = false;

    static ExperimentConfig from_json(const io::json& doc);
    static ExperimentConfig from_json_file(const std::filesystem::path& path);
    io::json to_json() const;

    void validate() const;
    /// Stem for artifact filenames: label[-sK]_algo_seedN.
    std::string artifact_stem() const;
};

struct RunArtifacts {
    std::filesystem::path csv;
    std::filesystem::path summary;
    std::filesystem::path table;
};

/// Runs the configured algorithm, recording iteration, elapsed seconds,
/// percent-of-optimal (when a reference is available or the algorithm is
/// bdp) and sup-norm to the reference at each checkpoint. Writes the
/// convergence CSV, a summary document, and the persisted value table.
RunArtifacts run_experiment(const ExperimentConfig& config);

/// Runs each algorithm with shared instance/seed/budget and merges the
/// convergence curves into one CSV with an algorithm column.
std::filesystem::path compare_algorithms(const std::vector<ExperimentConfig>& configs);

struct ValidationRow {
    std::string label;
    std::int64_t states = 0, states_expected = 0;
    std::int64_t effective = 0, effective_expected = 0;
    std::string actions, actions_expected;
    bool pass = false;
};

struct InstanceValidation {
    std::vector<ValidationRow> rows;
    bool pass = true;
    std::string to_text() const;
    io::json to_json() const;
};

/// Checks one label (or all) against the published instance statistics.
InstanceValidation validate_instances(const std::vector<std::string>& labels);

/// Loads a persisted table (inducing state values from a state-action
/// table if needed) and simulates its greedy policy on the instance.
EvalReport evaluate_table(const std::string& label, std::optional<int> scale,
                          const std::filesystem::path& table_path, std::int64_t paths,
                          std::uint64_t seed,
                          const std::optional<std::filesystem::path>& reference_table);

/// Log-spaced checkpoint schedule {1,2,5}x10^k capped by and including n.
std::vector<std::int64_t> default_checkpoints(std::int64_t n);

} // namespace madp::bench
