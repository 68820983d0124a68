#include "geoap/experiments.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "geoap/errors.hpp"

namespace geoap {

namespace {

const Graph* graph_for(const Dataset& d, const RunSpec& spec) {
    if (spec.engine.mode != Mode::Geometric) return nullptr;
    if (!d.graph) throw DataError("geometric mode needs an edge list");
    return &*d.graph;
}

const TruthLabels& require_truth(const Dataset& d) {
    if (!d.truth) throw DataError("this experiment needs truth labels");
    return *d.truth;
}

nlohmann::ordered_json metrics_json(const std::optional<Metrics>& m) {
    if (!m) return nullptr;
    return {{"nmi", m->nmi}, {"cr", m->cr}, {"f1", m->f1}};
}

}  // namespace

RunOutcome cluster_with(const SimilarityMatrix& similarity, const Graph* graph, const RunSpec& spec) {
    std::optional<NeighborhoodMask> mask;
    if (spec.engine.mode == Mode::Geometric) {
        if (graph == nullptr) throw ArgumentError("geometric mode needs a graph");
        if (graph->size() != similarity.size()) throw DataError("graph and features disagree on node count");
        mask = neighborhood_mask(*graph, spec.topo, spec.tau);
    }
    const NeighborhoodMask* m = mask ? &*mask : nullptr;
    const Graph* smoothing_graph = spec.engine.mode == Mode::Geometric ? graph : nullptr;

    if (spec.target_k) {
        auto cal = calibrate_preference(similarity, spec.engine, m, *spec.target_k, smoothing_graph);
        return RunOutcome{std::move(cal.result), cal.preference, cal.probes};
    }
    const double p = spec.preference ? *spec.preference : similarity.median_offdiagonal();
    auto result = run(similarity.with_preference(p), m, spec.engine, smoothing_graph);
    return RunOutcome{std::move(result), p, 0};
}

RunOutcome cluster_dataset(const Dataset& dataset, const RunSpec& spec) {
    if (!dataset.features) throw DataError("clustering needs a feature file");
    const auto similarity = build_similarity(*dataset.features, spec.feature_metric);
    return cluster_with(similarity, graph_for(dataset, spec), spec);
}

std::optional<std::size_t> select_optimum(std::span<const SweepRow> rows) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].metrics) continue;
        if (!best) {
            best = i;
            continue;
        }
        const double nmi = rows[i].metrics->nmi;
        const double top = rows[*best].metrics->nmi;
        if (nmi > top || (nmi == top && rows[i].axis < rows[*best].axis)) best = i;
    }
    return best;
}

SweepReport sweep_tau(const Dataset& dataset, const SimilarityMatrix& similarity, TopoDistanceKind topo,
                      std::span<const double> grid, std::size_t target_k, const EngineConfig& engine) {
    const auto& truth = require_truth(dataset);
    RunSpec spec;
    spec.topo = topo;
    spec.engine = engine;
    spec.engine.mode = Mode::Geometric;
    spec.target_k = target_k;
    const Graph* graph = graph_for(dataset, spec);

    SweepReport report;
    report.axis_name = std::string("tau:") + to_string(topo);
    for (double tau : grid) {
        SweepRow row;
        row.axis = tau;
        spec.tau = tau;
        try {
            auto out = cluster_with(similarity, graph, spec);
            row.metrics = evaluate_against(out.result.labels, truth);
            row.preference = out.preference;
            row.clusters = out.result.cluster_count();
        } catch (const Error& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    report.optimum = select_optimum(report.rows);
    return report;
}

SweepReport sweep_k(const Dataset& dataset, const SimilarityMatrix& similarity, const RunSpec& spec,
                    std::span<const std::size_t> ks) {
    SweepReport report;
    report.axis_name = "k";
    if (ks.empty()) return report;
    const auto& truth = require_truth(dataset);
    const Graph* graph = graph_for(dataset, spec);
    RunSpec cell = spec;
    for (std::size_t k : ks) {
        SweepRow row;
        row.axis = static_cast<double>(k);
        cell.target_k = k;
        try {
            auto out = cluster_with(similarity, graph, cell);
            row.metrics = evaluate_against(out.result.labels, truth);
            row.preference = out.preference;
            row.clusters = out.result.cluster_count();
        } catch (const Error& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    report.optimum = select_optimum(report.rows);
    return report;
}

std::uint64_t PermutationGenerator::bounded(std::uint64_t n) {
    if (n == 0) throw ArgumentError("bounded draw from an empty range");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x;
    do {
        x = engine_();
    } while (x < threshold);
    return x % n;
}

std::vector<VertexId> PermutationGenerator::next(std::size_t n) {
    std::vector<VertexId> p(n);
    std::iota(p.begin(), p.end(), VertexId{0});
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(bounded(i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

AblationReport ablation(const Dataset& dataset, const SimilarityMatrix& similarity, const RunSpec& spec,
                        const AblationOptions& options) {
    const auto& truth = require_truth(dataset);
    if (!dataset.graph) throw DataError("ablation needs an edge list");
    if (!spec.target_k) throw ArgumentError("ablation needs a target cluster count");
    RunSpec cell = spec;
    cell.engine.mode = Mode::Geometric;

    AblationReport report;
    report.seed = options.seed;
    PermutationGenerator gen(options.seed);
    const std::size_t n = dataset.size();
    std::vector<Metrics> done;
    for (std::size_t r = 0; r < options.repetitions; ++r) {
        std::vector<VertexId> perm;
        if (options.identity_permutation) {
            perm.resize(n);
            std::iota(perm.begin(), perm.end(), VertexId{0});
        } else {
            perm = gen.next(n);
        }
        AblationRun entry;
        entry.index = r;
        try {
            const Graph shuffled = permute_vertices(*dataset.graph, perm);
            auto out = cluster_with(similarity, &shuffled, cell);
            entry.metrics = evaluate_against(out.result.labels, truth);
            done.push_back(*entry.metrics);
        } catch (const Error& e) {
            entry.error = e.what();
            ++report.failures;
        }
        report.runs.push_back(std::move(entry));
    }
    report.repetitions = done.size();
    if (!done.empty()) {
        Metrics mean{0, 0, 0};
        for (const auto& m : done) {
            mean.nmi += m.nmi;
            mean.cr += m.cr;
            mean.f1 += m.f1;
        }
        const double c = static_cast<double>(done.size());
        mean = {mean.nmi / c, mean.cr / c, mean.f1 / c};
        Metrics var{0, 0, 0};
        for (const auto& m : done) {
            var.nmi += (m.nmi - mean.nmi) * (m.nmi - mean.nmi);
            var.cr += (m.cr - mean.cr) * (m.cr - mean.cr);
            var.f1 += (m.f1 - mean.f1) * (m.f1 - mean.f1);
        }
        const double dof = done.size() > 1 ? c - 1.0 : 1.0;
        report.mean = mean;
        report.stddev = Metrics{std::sqrt(var.nmi / dof), std::sqrt(var.cr / dof), std::sqrt(var.f1 / dof)};
    }
    return report;
}

nlohmann::ordered_json to_json(const SweepReport& report) {
    nlohmann::ordered_json j;
    j["axis"] = report.axis_name;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["value"] = r.axis;
        row["clusters"] = r.clusters;
        row["preference"] = r.preference ? nlohmann::ordered_json(*r.preference) : nullptr;
        row["metrics"] = metrics_json(r.metrics);
        if (!r.error.empty()) row["error"] = r.error;
        rows.push_back(std::move(row));
    }
    j["optimum"] = report.optimum ? nlohmann::ordered_json(report.rows[*report.optimum].axis) : nullptr;
    return j;
}

nlohmann::ordered_json to_json(const AblationReport& report) {
    nlohmann::ordered_json j;
    j["seed"] = report.seed;
    j["generator"] = "mt19937_64 + rejection-bounded Fisher-Yates";
    j["repetitions"] = report.repetitions;
    j["failures"] = report.failures;
    j["mean"] = metrics_json(report.mean);
    j["stddev"] = metrics_json(report.stddev);
    auto& runs = j["runs"] = nlohmann::ordered_json::array();
    for (const auto& r : report.runs) {
        nlohmann::ordered_json row;
        row["index"] = r.index;
        row["metrics"] = metrics_json(r.metrics);
        if (!r.error.empty()) row["error"] = r.error;
        runs.push_back(std::move(row));
    }
    return j;
}

}  // namespace geoap
