#include "madp/policy_eval.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace madp {

Action greedy_action(const MdpModel& model, const ValueTable& v, int t, const StateVector& s) {
    if (t >= model.horizon()) {
        throw UsageError("greedy_action: no decision at or beyond the horizon");
    }
    return bellman_backup_argmax(model, v, t, s).action;
}

namespace {

double rollout(const MdpModel& model, const ValueTable& v, std::uint64_t seed,
               std::int64_t path) {
    RngStream rng =
        RngStream::derive(seed, {stream_tag::kSimulationPath, static_cast<std::uint64_t>(path)});
    StateVector s = model.start_state();
    double total = 0.0;
    for (int t = 0; t < model.horizon(); ++t) {
        const Action a = greedy_action(model, v, t, s);
        total += model.contribution(t, s, a);
        s = model.kernel().sample(t, s, a, rng);
    }
    return total + model.terminal_contribution(s);
}

} // namespace

EvalReport simulate_policy_value(const MdpModel& model, const ValueTable& v,
                                 const SimOptions& options) {
    if (options.paths < 1) throw UsageError("simulate_policy_value: needs at least one path");
    if (!model.kernel().has_sampling()) {
        throw UnsupportedModeError("simulate_policy_value requires a sampling kernel");
    }
    const std::int64_t n = options.paths;
    std::vector<double> totals(static_cast<std::size_t>(n));

    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        for (std::int64_t p = 0; p < n; ++p) {
            totals[static_cast<std::size_t>(p)] = rollout(model, v, options.seed, p);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::int64_t p = w; p < n; p += threads) {
                    totals[static_cast<std::size_t>(p)] = rollout(model, v, options.seed, p);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    // Fixed-order reduction over the indexed slots.
    double sum = 0.0;
    for (double x : totals) sum += x;
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (double x : totals) sq += (x - mean) * (x - mean);
    const double std_error =
        n > 1 ? std::sqrt(sq / (static_cast<double>(n) * static_cast<double>(n - 1))) : 0.0;

    EvalReport report;
    report.mean = mean;
    report.std_error = std_error;
    report.paths = n;
    report.seed = options.seed;
    return report;
}

EvalReport optimality_percent(const MdpModel& model, const ValueTable& v,
                              const ValueTable& v_star, const SimOptions& options,
                              double baseline) {
    const double optimal = v_star.at(0, model.start_state());
    const double denom = optimal - baseline;
    if (std::abs(denom) < 1e-12 * std::max(1.0, std::abs(optimal))) {
        throw DegenerateInputError("optimality_percent: optimal start value equals the baseline");
    }
    EvalReport report = simulate_policy_value(model, v, options);
    report.baseline = baseline;
    report.percent_of_optimal = 100.0 * (report.mean - baseline) / denom;
    return report;
}

} // namespace madp
