#include "madp/bench/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "madp/io/csv.hpp"
#include "madp/io/table_io.hpp"
#include "madp/solver.hpp"

namespace madp::bench {

namespace {

const std::set<std::string>& known_algorithms() {
    static const std::set<std::string> algos{"madp", "avi", "ql", "bdp"};
    return algos;
}

std::optional<std::string> json_path_string(const io::json& doc, const char* key) {
    if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
    return doc[key].get<std::string>();
}

ValueTable load_reference(const std::filesystem::path& path, const MdpModel& model) {
    io::LoadedTable loaded = io::load_value_table(path);
    if (loaded.table.horizon() != model.horizon() || !(loaded.table.space() == model.states())) {
        throw UsageError("reference table " + path.string() +
                         " does not match the instance's state space");
    }
    return std::move(loaded.table);
}

std::vector<io::ConvergenceRow> trace_rows(const SolverTrace& trace) {
    std::vector<io::ConvergenceRow> rows;
    for (const TraceRecord& rec : trace.records) {
        io::ConvergenceRow row;
        row.iteration = rec.iteration;
        row.elapsed_s = rec.elapsed_s;
        row.pct_optimal = rec.policy_metric;
        row.supnorm = rec.supnorm_to_reference;
        rows.push_back(std::move(row));
    }
    return rows;
}

struct RunOutput {
    ValueTable table;
    SolverTrace trace;
    problems::BuiltInstance instance;
};

RunOutput execute(const ExperimentConfig& config) {
    config.validate();
    if (config.algorithm == "bdp" && !config.scale && !config.allow_huge &&
        (config.instance == "R6" || config.instance == "R7")) {
        const problems::ReferenceStats stats = problems::reference_stats(config.instance);
        const double gib = static_cast<double>(stats.state_count) * 26.0 * 8.0 / (1024.0 * 1024.0 * 1024.0);
        char estimate[64];
        std::snprintf(estimate, sizeof(estimate), "%.1f", gib);
        throw ResourceRefusalError("bdp on " + config.instance + " needs a " + estimate +
                                   " GiB table and hours to days of compute; pass --allow-huge "
                                   "to proceed");
    }

    problems::BuiltInstance instance = problems::build_instance(config.instance, config.scale);
    const MdpModel& model = *instance.model;

    std::optional<ValueTable> reference;
    if (config.reference_table) {
        reference = load_reference(*config.reference_table, model);
    }

    if (config.algorithm == "bdp") {
        const auto start = std::chrono::steady_clock::now();
        ValueTable v_star = solve_bdp(model);
        const double elapsed = std::chrono::duration<double>(
                                   std::chrono::steady_clock::now() - start).count();
        const ValueTable& ref = reference ? *reference : v_star;
        EvalReport report = optimality_percent(model, v_star, ref,
                                               {config.eval_paths, config.seed, 1},
                                               instance.percent_baseline);
        TraceRecord rec;
        rec.iteration = 0;
        rec.elapsed_s = elapsed;
        rec.supnorm_to_reference = v_star.sup_distance(ref);
        rec.policy_metric = report.percent_of_optimal;
        SolverTrace trace;
        trace.records.push_back(rec);
        return {std::move(v_star), std::move(trace), std::move(instance)};
    }

    SolverConfig solver;
    solver.iterations = config.iterations;
    solver.seed = config.seed;
    solver.epsilon = config.epsilon;
    solver.stepsize_a = config.stepsize_a;
    solver.v_lo = instance.v_lo;
    solver.v_hi = instance.v_hi;
    solver.checkpoints =
        config.checkpoints.empty() ? default_checkpoints(config.iterations) : config.checkpoints;

    CheckpointMetric metric;
    if (reference) {
        const ValueTable* ref = &*reference;
        const double baseline = instance.percent_baseline;
        const std::int64_t paths = config.eval_paths;
        const std::uint64_t seed = config.seed;
        const MdpModel* m = &model;
        metric = [m, ref, baseline, paths, seed](const ValueTable& table, std::int64_t) {
            EvalReport report = optimality_percent(*m, table, *ref, {paths, seed, 1}, baseline);
            return *report.percent_of_optimal;
        };
    }

    SolverResult result = [&] {
        const ValueTable* ref = reference ? &*reference : nullptr;
        if (config.algorithm == "madp") {
            return run_monotone_adp(model, instance.order, solver, ref, nullptr, {}, metric);
        }
        if (config.algorithm == "avi") {
            return run_avi(model, solver, ref, nullptr, {}, metric);
        }
        return run_qlearning(model, solver, ref, {}, metric);
    }();
    return {std::move(result.table), std::move(result.trace), std::move(instance)};
}

io::json stats_json(const problems::BuiltInstance& instance, const std::string& label) {
    const problems::ActionSpaceStats actions = problems::action_space_stats(label, instance);
    io::json j{{"states", instance.stats.state_count},
               {"effective_cells", instance.stats.effective_cells}};
    if (actions.fixed) {
        j["actions"] = actions.fixed_count;
    } else {
        j["actions_mean"] = actions.mean;
        j["actions_max"] = actions.max;
    }
    return j;
}

} // namespace

std::vector<std::int64_t> default_checkpoints(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t decade = 1; decade <= n; decade *= 10) {
        for (std::int64_t m : {1, 2, 5}) {
            const std::int64_t c = m * decade;
            if (c >= 1 && c <= n) out.push_back(c);
        }
        if (decade > n / 10) break;
    }
    if (n >= 1 && (out.empty() || out.back() != n)) out.push_back(n);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ExperimentConfig ExperimentConfig::from_json(const io::json& doc) {
    ExperimentConfig c;
    if (doc.contains("instance")) c.instance = doc["instance"].get<std::string>();
    if (doc.contains("scale") && !doc["scale"].is_null()) c.scale = doc["scale"].get<int>();
    if (doc.contains("algo")) c.algorithm = doc["algo"].get<std::string>();
    if (doc.contains("iters")) c.iterations = doc["iters"].get<std::int64_t>();
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("epsilon")) c.epsilon = doc["epsilon"].get<double>();
    if (doc.contains("stepsize_a")) c.stepsize_a = doc["stepsize_a"].get<double>();
    if (doc.contains("checkpoints")) {
        c.checkpoints = doc["checkpoints"].get<std::vector<std::int64_t>>();
    }
    if (doc.contains("paths")) c.eval_paths = doc["paths"].get<std::int64_t>();
    if (const auto out = json_path_string(doc, "out")) c.out_dir = *out;
    if (const auto ref = json_path_string(doc, "reference")) c.reference_table = *ref;
    if (doc.contains("allow_huge")) c.allow_huge = doc["allow_huge"].get<bool>();
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    return from_json(io::read_json(path));
}

io::json ExperimentConfig::to_json() const {
    io::json doc{{"instance", instance},
                 {"algo", algorithm},
                 {"iters", iterations},
                 {"seed", seed},
                 {"epsilon", epsilon},
                 {"stepsize_a", stepsize_a},
                 {"paths", eval_paths},
                 {"out", out_dir.string()},
                 {"allow_huge", allow_huge}};
    if (scale) doc["scale"] = *scale;
    if (!checkpoints.empty()) doc["checkpoints"] = checkpoints;
    if (reference_table) doc["reference"] = reference_table->string();
    return doc;
}

void ExperimentConfig::validate() const {
    if (!problems::is_valid_label(instance)) {
        throw UsageError("unknown instance label '" + instance + "'");
    }
    if (!known_algorithms().count(algorithm)) {
        throw UsageError("unknown algorithm '" + algorithm + "' (madp|avi|ql|bdp)");
    }
    if (iterations < 0) throw UsageError("iterations must be >= 0");
    if (eval_paths < 1) throw UsageError("paths must be >= 1");
}

std::string ExperimentConfig::artifact_stem() const {
    std::string stem = instance;
    if (scale) stem += "-s" + std::to_string(*scale);
    stem += "_" + algorithm + "_seed" + std::to_string(seed);
    return stem;
}

RunArtifacts run_experiment(const ExperimentConfig& config) {
    RunOutput output = execute(config);
    std::filesystem::create_directories(config.out_dir);
    const std::string stem = config.artifact_stem();

    RunArtifacts artifacts;
    artifacts.csv = config.out_dir / (stem + ".csv");
    artifacts.table = config.out_dir / (stem + ".table.bin");
    artifacts.summary = config.out_dir / (stem + ".summary.json");

    io::write_convergence_csv(artifacts.csv, trace_rows(output.trace), /*with_algorithm=*/false);
    io::save_value_table(artifacts.table, output.table, config.instance, config.seed);

    io::json summary{{"config", config.to_json()},
                     {"instance", stats_json(output.instance, config.instance)},
                     {"percent_baseline", output.instance.percent_baseline},
                     {"artifacts",
                      {{"csv", artifacts.csv.string()},
                       {"table", artifacts.table.string()},
                       {"summary", artifacts.summary.string()}}}};
    const TraceRecord& last = output.trace.records.back();
    io::json result{{"iterations", last.iteration}, {"elapsed_s", last.elapsed_s}};
    if (last.policy_metric) result["pct_optimal"] = *last.policy_metric;
    if (last.supnorm_to_reference) result["supnorm"] = *last.supnorm_to_reference;
    summary["result"] = result;
    io::write_json(artifacts.summary, summary);
    return artifacts;
}

std::filesystem::path compare_algorithms(const std::vector<ExperimentConfig>& configs) {
    if (configs.empty()) throw UsageError("compare: needs at least one algorithm");
    for (const ExperimentConfig& c : configs) {
        if (c.instance != configs.front().instance || c.scale != configs.front().scale) {
            throw UsageError("compare: all runs must share one instance");
        }
        if (c.reference_table != configs.front().reference_table) {
            throw UsageError("compare: all runs must share one reference");
        }
    }
    std::vector<io::ConvergenceRow> combined;
    for (const ExperimentConfig& c : configs) {
        RunOutput output = execute(c);
        for (io::ConvergenceRow& row : trace_rows(output.trace)) {
            row.algorithm = c.algorithm;
            combined.push_back(std::move(row));
        }
    }
    std::filesystem::create_directories(configs.front().out_dir);
    ExperimentConfig head = configs.front();
    head.algorithm = "compare";
    const std::filesystem::path path = head.out_dir / (head.artifact_stem() + ".csv");
    io::write_convergence_csv(path, combined, /*with_algorithm=*/true);
    return path;
}

std::string InstanceValidation::to_text() const {
    std::string out;
    for (const ValidationRow& r : rows) {
        out += r.label + ": states " + std::to_string(r.states) + "/" +
               std::to_string(r.states_expected) + " effective " + std::to_string(r.effective) +
               "/" + std::to_string(r.effective_expected) + " actions " + r.actions + "/" +
               r.actions_expected + " -> " + (r.pass ? "PASS" : "FAIL") + "\n";
    }
    out += pass ? "all PASS\n" : "validation FAILED\n";
    return out;
}

io::json InstanceValidation::to_json() const {
    io::json rows_json = io::json::array();
    for (const ValidationRow& r : rows) {
        rows_json.push_back({{"label", r.label},
                             {"states", r.states},
                             {"states_expected", r.states_expected},
                             {"effective", r.effective},
                             {"effective_expected", r.effective_expected},
                             {"actions", r.actions},
                             {"actions_expected", r.actions_expected},
                             {"pass", r.pass}});
    }
    return io::json{{"rows", rows_json}, {"pass", pass}};
}

InstanceValidation validate_instances(const std::vector<std::string>& labels) {
    InstanceValidation validation;
    for (const std::string& label : labels) {
        const problems::ReferenceStats expected = problems::reference_stats(label);
        const problems::BuiltInstance instance = problems::build_instance(label);
        const problems::ActionSpaceStats actions = problems::action_space_stats(label, instance);

        ValidationRow row;
        row.label = label;
        row.states = instance.stats.state_count;
        row.states_expected = expected.state_count;
        row.effective = instance.stats.effective_cells;
        row.effective_expected = expected.effective_cells;
        bool actions_ok;
        if (actions.fixed) {
            row.actions = std::to_string(actions.fixed_count);
            row.actions_expected = std::to_string(expected.action_fixed);
            actions_ok = actions.fixed_count == expected.action_fixed;
        } else {
            const std::int64_t mean_rounded = std::llround(actions.mean);
            row.actions = "mean " + std::to_string(mean_rounded) + ", max " +
                          std::to_string(actions.max);
            row.actions_expected = "mean " + std::to_string(expected.action_mean_rounded) +
                                   ", max " + std::to_string(expected.action_max);
            actions_ok = mean_rounded == expected.action_mean_rounded &&
                         actions.max == expected.action_max;
        }
        row.pass = row.states == row.states_expected && row.effective == row.effective_expected &&
                   actions_ok;
        validation.pass = validation.pass && row.pass;
        validation.rows.push_back(std::move(row));
    }
    return validation;
}

EvalReport evaluate_table(const std::string& label, std::optional<int> scale,
                          const std::filesystem::path& table_path, std::int64_t paths,
                          std::uint64_t seed,
                          const std::optional<std::filesystem::path>& reference_table) {
    const problems::BuiltInstance instance = problems::build_instance(label, scale);
    const MdpModel& model = *instance.model;
    io::LoadedTable loaded = io::load_value_table(table_path);

    ValueTable table = [&]() -> ValueTable {
        if (loaded.table.space() == model.states()) return std::move(loaded.table);
        // A state-action table evaluates through its induced state values.
        if (model.uniform_action_count() && loaded.table.space() == state_action_space(model) &&
            loaded.table.horizon() == model.horizon()) {
            return q_induced_values(model, loaded.table);
        }
        throw UsageError("table " + table_path.string() + " does not match instance " + label);
    }();
    if (table.horizon() != model.horizon()) {
        throw UsageError("table horizon does not match instance " + label);
    }

    if (reference_table) {
        const ValueTable reference = load_reference(*reference_table, model);
        return optimality_percent(model, table, reference, {paths, seed, 1},
                                  instance.percent_baseline);
    }
    return simulate_policy_value(model, table, {paths, seed, 1});
}

} // namespace madp::bench
