#include "madp/problems/instances.hpp"

#include <cmath>
#include <map>

#include "madp/problems/glycemic.hpp"
#include "madp/problems/stopping.hpp"
#include "madp/problems/storage.hpp"

namespace madp::problems {

namespace {

enum class Family { Stopping, Storage, Glycemic };

struct LabelInfo {
    Family family;
    int param; // stopping: dimension count; storage: 1/2; glycemic: cost index
};

const std::map<std::string, LabelInfo>& label_registry() {
    static const std::map<std::string, LabelInfo> reg{
        {"R3", {Family::Stopping, 3}}, {"R4", {Family::Stopping, 4}},
        {"R5", {Family::Stopping, 5}}, {"R6", {Family::Stopping, 6}},
        {"R7", {Family::Stopping, 7}}, {"S1", {Family::Storage, 1}},
        {"S2", {Family::Storage, 2}},  {"G1", {Family::Glycemic, 1}},
        {"G2", {Family::Glycemic, 2}},
    };
    return reg;
}

void fill_value_bounds(BuiltInstance& b) {
    const MdpModel& m = *b.model;
    const double span = static_cast<double>(m.horizon()) + 1.0;
    b.v_lo = span * std::min(m.contribution_lo(), 0.0);
    b.v_hi = span * std::max(m.contribution_hi(), 0.0);
}

} // namespace

std::vector<std::string> instance_labels() {
    std::vector<std::string> out;
    for (const auto& [label, info] : label_registry()) out.push_back(label);
    return out;
}

bool is_valid_label(const std::string& label) { return label_registry().count(label) > 0; }

BuiltInstance build_instance(const std::string& label, std::optional<int> scale) {
    const auto it = label_registry().find(label);
    if (it == label_registry().end()) {
        throw UsageError("unknown instance label '" + label + "'");
    }
    if (scale && *scale < 1) throw UsageError("instance scale must be >= 1");
    const LabelInfo info = it->second;
    BuiltInstance b;
    switch (info.family) {
    case Family::Stopping: {
        const StoppingParams params = scale ? StoppingParams::scaled(info.param, *scale)
                                            : StoppingParams::standard(info.param);
        StoppingInstance inst = build_stopping_instance(params);
        b.model = inst.model;
        b.order = inst.order;
        // Raw ratio against the optimal start value; the figures this
        // backs normalize the same way.
        b.percent_baseline = 0.0;
        b.stats.effective_cells =
            static_cast<std::int64_t>(params.horizon) * b.model->states().cardinality();
        break;
    }
    case Family::Storage: {
        StorageParams params = info.param == 1 ? StorageParams::s1() : StorageParams::s2();
        if (scale) params = params.reduced(*scale, *scale - 1);
        StorageInstance inst = build_storage_instance(params);
        b.model = inst.model;
        b.order = inst.order;
        b.percent_baseline = 0.0;
        b.stats.effective_cells = static_cast<std::int64_t>(params.horizon + 1) *
                                  b.model->states().cardinality();
        break;
    }
    case Family::Glycemic: {
        GlycemicParams params = GlycemicParams::standard(info.param == 1 ? 0.0 : 2.0);
        if (scale) params = params.reduced(*scale - 1);
        GlycemicInstance inst = build_glycemic_instance(params);
        b.model = inst.model;
        b.order = inst.order;
        // Negative contributions make a raw ratio meaningless; anchor at
        // the worst accumulable contribution.
        b.percent_baseline =
            inst.model->contribution_lo() * (inst.model->horizon() + 1);
        b.stats.effective_cells = static_cast<std::int64_t>(params.horizon + 1) *
                                  b.model->states().cardinality();
        break;
    }
    }
    b.stats.label = label;
    b.stats.state_count = b.model->states().cardinality();
    fill_value_bounds(b);
    return b;
}

ActionSpaceStats action_space_stats(const std::string& label, const BuiltInstance& instance) {
    const auto it = label_registry().find(label);
    if (it == label_registry().end()) {
        throw UsageError("unknown instance label '" + label + "'");
    }
    ActionSpaceStats stats;
    if (it->second.family == Family::Storage) {
        const auto* model = dynamic_cast<const StorageModel*>(instance.model.get());
        if (!model) throw UsageError("instance/model mismatch for label " + label);
        stats.fixed = false;
        std::int64_t total = 0, max = 0;
        model->states().for_each_state([&](const StateVector& s, std::int64_t) {
            const std::int64_t n = count_storage_actions(model->params(), s);
            total += n;
            max = std::max(max, n);
        });
        stats.mean = static_cast<double>(total) /
                     static_cast<double>(model->states().cardinality());
        stats.max = max;
    } else {
        stats.fixed = true;
        stats.fixed_count = instance.model->uniform_action_count().value_or(0);
    }
    return stats;
}

ReferenceStats reference_stats(const std::string& label) {
    static const std::map<std::string, ReferenceStats> table{
        {"R3", {1331, 33275, 2, 0, 0}},
        {"R4", {14641, 366025, 2, 0, 0}},
        {"R5", {161051, 4026275, 2, 0, 0}},
        {"R6", {1771561, 44289025, 2, 0, 0}},
        {"R7", {19487171, 487179275, 2, 0, 0}},
        {"S1", {71176, 1850576, 0, 165, 623}},
        {"S2", {117096, 3044496, 0, 178, 623}},
        {"G1", {1312256, 17059328, 5, 0, 0}},
        {"G2", {1312256, 17059328, 5, 0, 0}},
    };
    const auto it = table.find(label);
    if (it == table.end()) throw UsageError("unknown instance label '" + label + "'");
    return it->second;
}

} // namespace madp::problems
