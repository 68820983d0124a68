// geoap: command-line front end for standard and geometric affinity propagation.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "geoap/calibration.hpp"
#include "geoap/data_io.hpp"
#include "geoap/errors.hpp"
#include "geoap/experiments.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kData = 2, kConvergence = 3, kCalibration = 4 };

struct Options {
    std::optional<std::string> features, edges, labels, output, trace, predicted, result;
    bool feature_ids = false;
    std::string feature_metric = "euclidean";
    std::string mode = "standard";
    std::string topo = "shortest-path";
    double tau = 1.0;
    std::optional<double> preference;
    std::optional<std::size_t> target_k;
    double damping = 0.9;
    std::size_t max_iter = 1000;
    std::size_t conv_iter = 100;
    bool no_smoothing = false;
    std::optional<std::uint64_t> jitter_seed;
    std::uint64_t seed = 0;
    std::size_t repetitions = 100;
    std::string k_list;
    std::string tau_grid;
    bool identity = false;
};

void add_data_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--features", o.features, "feature file (one row per node)");
    cmd->add_option("--edges", o.edges, "edge list (two node ids per line)");
    cmd->add_option("--labels", o.labels, "truth labels ('node-id label' per line)");
    cmd->add_flag("--feature-ids", o.feature_ids, "first feature column is the node id");
}

void add_run_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--feature-metric", o.feature_metric, "euclidean | manhattan | cosine")
        ->check(CLI::IsMember({"euclidean", "manhattan", "cosine"}));
    cmd->add_option("--mode", o.mode, "standard | geometric")->check(CLI::IsMember({"standard", "geometric"}));
    cmd->add_option("--topo", o.topo, "shortest-path | jaccard | cosine")
        ->check(CLI::IsMember({"shortest-path", "jaccard", "cosine"}));
    cmd->add_option("--tau", o.tau, "neighborhood threshold");
    auto* pref = cmd->add_option("--preference", o.preference, "shared preference");
    auto* k = cmd->add_option("--target-k", o.target_k, "calibrate the preference to this many clusters");
    pref->excludes(k);
    cmd->add_option("--damping", o.damping, "message damping factor")->capture_default_str();
    cmd->add_option("--max-iter", o.max_iter, "iteration cap")->capture_default_str();
    cmd->add_option("--conv-iter", o.conv_iter, "stable iterations required for convergence")->capture_default_str();
    cmd->add_flag("--no-smoothing", o.no_smoothing, "skip majority-vote label smoothing");
    cmd->add_option("--jitter-seed", o.jitter_seed, "perturb similarities by ~1e-16 to break exact ties");
    cmd->add_option("--output", o.output, "write the JSON document here");
}

geoap::RunSpec make_spec(const Options& o) {
    geoap::RunSpec spec;
    spec.feature_metric = geoap::parse_feature_metric(o.feature_metric);
    spec.topo = geoap::parse_topo_distance(o.topo);
    spec.tau = o.tau;
    spec.engine.damping = o.damping;
    spec.engine.max_iter = o.max_iter;
    spec.engine.conv_iter = o.conv_iter;
    spec.engine.mode = geoap::parse_mode(o.mode);
    spec.engine.smoothing = !o.no_smoothing;
    spec.engine.jitter_seed = o.jitter_seed;
    spec.preference = o.preference;
    spec.target_k = o.target_k;
    spec.engine.validate();
    return spec;
}

geoap::Dataset load(const Options& o) {
    auto path = [](const std::optional<std::string>& s) -> std::optional<std::filesystem::path> {
        if (!s) return std::nullopt;
        return std::filesystem::path(*s);
    };
    return geoap::load_dataset(path(o.features), path(o.edges), path(o.labels), {o.feature_ids});
}

nlohmann::ordered_json config_echo(const Options& o, const geoap::RunSpec& spec) {
    nlohmann::ordered_json c;
    c["mode"] = geoap::to_string(spec.engine.mode);
    c["feature_metric"] = geoap::to_string(spec.feature_metric);
    if (spec.engine.mode == geoap::Mode::Geometric) {
        c["topo"] = geoap::to_string(spec.topo);
        c["tau"] = spec.tau;
        c["smoothing"] = spec.engine.smoothing;
    }
    c["damping"] = spec.engine.damping;
    c["max_iter"] = spec.engine.max_iter;
    c["conv_iter"] = spec.engine.conv_iter;
    if (spec.engine.jitter_seed) c["jitter_seed"] = *spec.engine.jitter_seed;
    if (o.target_k) c["target_k"] = *o.target_k;
    return c;
}

void emit(const nlohmann::ordered_json& j, const std::optional<std::string>& path) {
    if (!path) return;
    std::ofstream out(*path);
    if (!out) throw geoap::DataError("cannot write " + *path);
    out << j.dump(2) << '\n';
}

void print_metrics(const geoap::Metrics& m) {
    std::printf("NMI %.2f  CR %.2f  F1 %.2f\n", 100.0 * m.nmi, m.cr, 100.0 * m.f1);
}

template <typename T>
std::vector<T> parse_csv(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::istringstream is(item);
        T v{};
        if (!(is >> v) || !is.eof()) throw geoap::ArgumentError(std::string("bad ") + what + " entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

int cmd_cluster(const Options& o) {
    const auto spec = make_spec(o);
    const auto dataset = load(o);
    auto outcome = geoap::cluster_dataset(dataset, spec);
    if (o.trace) {
        std::ofstream tr(*o.trace);
        if (!tr) throw geoap::DataError("cannot write " + *o.trace);
        tr << "iteration\texemplars\tmax_delta\n";
        tr << std::setprecision(17);
        const auto sim = geoap::build_similarity(*dataset.features, spec.feature_metric).with_preference(outcome.preference);
        std::optional<geoap::NeighborhoodMask> mask;
        if (spec.engine.mode == geoap::Mode::Geometric) mask = geoap::neighborhood_mask(*dataset.graph, spec.topo, spec.tau);
        geoap::run(sim, mask ? &*mask : nullptr, spec.engine, dataset.graph ? &*dataset.graph : nullptr,
                   [&](const geoap::IterationTrace& t) {
                       tr << t.iteration << '\t' << t.exemplar_count << '\t' << t.max_delta << '\n';
                   });
    }
    auto config = config_echo(o, spec);
    config["preference"] = outcome.preference;
    const auto doc = geoap::make_result_document(outcome.result, dataset, config);
    if (o.output) geoap::write_result(doc, *o.output);

    std::printf("clusters %zu  iterations %zu  converged %s  preference %.6g\n", outcome.result.cluster_count(),
                outcome.result.iterations_run, outcome.result.converged ? "yes" : "no", outcome.preference);
    if (doc.metrics) print_metrics(*doc.metrics);
    return outcome.result.converged ? kOk : kConvergence;
}

void print_sweep(const geoap::SweepReport& r) {
    std::printf("%-10s %8s %8s %8s %8s\n", r.axis_name.c_str(), "K", "NMI", "CR", "F1");
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        if (row.metrics) {
            std::printf("%-10g %8zu %8.2f %8.2f %8.2f%s\n", row.axis, row.clusters, 100.0 * row.metrics->nmi,
                        row.metrics->cr, 100.0 * row.metrics->f1, r.optimum == i ? "  *" : "");
        } else {
            std::printf("%-10g failed: %s\n", row.axis, row.error.c_str());
        }
    }
}

int cmd_sweep_tau(const Options& o) {
    if (!o.target_k) throw geoap::ArgumentError("sweep-tau needs --target-k");
    auto spec = make_spec(o);
    const auto dataset = load(o);
    if (!dataset.features) throw geoap::DataError("sweep-tau needs --features");
    std::vector<double> grid = parse_csv<double>(o.tau_grid, "--tau-grid");
    if (o.tau_grid.empty()) {
        grid = spec.topo == geoap::TopoDistanceKind::ShortestPath ? std::vector<double>{1, 2, 3, 4, 5}
                                                                  : std::vector<double>{0.5, 0.6, 0.7, 0.8, 0.9};
    }
    const auto sim = geoap::build_similarity(*dataset.features, spec.feature_metric);
    const auto report = geoap::sweep_tau(dataset, sim, spec.topo, grid, *o.target_k, spec.engine);
    print_sweep(report);
    auto j = geoap::to_json(report);
    j["config"] = config_echo(o, spec);
    emit(j, o.output);
    return kOk;
}

int cmd_sweep_k(const Options& o) {
    auto spec = make_spec(o);
    spec.target_k.reset();
    const auto dataset = load(o);
    if (!dataset.features) throw geoap::DataError("sweep-k needs --features");
    const auto ks = parse_csv<std::size_t>(o.k_list, "--k-list");
    const auto sim = geoap::build_similarity(*dataset.features, spec.feature_metric);
    const auto report = geoap::sweep_k(dataset, sim, spec, ks);
    print_sweep(report);
    auto j = geoap::to_json(report);
    j["config"] = config_echo(o, spec);
    emit(j, o.output);
    return kOk;
}

int cmd_ablation(const Options& o) {
    if (!o.target_k) throw geoap::ArgumentError("ablation needs --target-k");
    auto spec = make_spec(o);
    spec.engine.mode = geoap::Mode::Geometric;
    const auto dataset = load(o);
    if (!dataset.features) throw geoap::DataError("ablation needs --features");
    const auto sim = geoap::build_similarity(*dataset.features, spec.feature_metric);
    geoap::AblationOptions opts{o.repetitions, o.seed, o.identity};
    const auto report = geoap::ablation(dataset, sim, spec, opts);
    std::printf("repetitions %zu  failures %zu  seed %llu\n", report.repetitions, report.failures,
                static_cast<unsigned long long>(report.seed));
    if (report.mean) {
        std::printf("mean   ");
        print_metrics(*report.mean);
        std::printf("stddev ");
        print_metrics(*report.stddev);
    }
    auto j = geoap::to_json(report);
    j["config"] = config_echo(o, spec);
    emit(j, o.output);
    return kOk;
}

int cmd_eval(const Options& o) {
    if (!o.labels) throw geoap::ArgumentError("eval needs --labels");
    if (!o.predicted && !o.result) throw geoap::ArgumentError("eval needs --predicted or --result");

    std::vector<std::pair<std::string, std::string>> predicted;
    if (o.result) {
        const auto doc = geoap::read_result(*o.result);
        for (std::size_t i = 0; i < doc.nodes.size(); ++i) predicted.emplace_back(doc.nodes[i], doc.labels[i]);
    } else {
        std::ifstream in(*o.predicted);
        if (!in) throw geoap::DataError("cannot open " + *o.predicted);
        predicted = geoap::read_label_tokens(in, *o.predicted);
    }
    std::ifstream tin(*o.labels);
    if (!tin) throw geoap::DataError("cannot open " + *o.labels);
    const auto truth = geoap::read_label_tokens(tin, *o.labels);

    std::map<std::string, std::string> truth_of(truth.begin(), truth.end());
    std::map<std::string, std::int64_t> pred_ids, class_ids;
    geoap::LabelVector pred, gold;
    for (const auto& [node, label] : predicted) {
        auto it = truth_of.find(node);
        if (it == truth_of.end()) continue;
        pred.push_back(pred_ids.emplace(label, static_cast<std::int64_t>(pred_ids.size())).first->second);
        gold.push_back(class_ids.emplace(it->second, static_cast<std::int64_t>(class_ids.size())).first->second);
    }
    if (pred.empty()) throw geoap::DataError("no predicted node has a truth label");
    const auto m = geoap::evaluate(pred, gold);
    std::printf("nodes %zu  ", pred.size());
    print_metrics(m);
    emit({{"nodes", pred.size()}, {"nmi", m.nmi}, {"cr", m.cr}, {"f1", m.f1}}, o.output);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Standard and geometric affinity propagation"};
    app.require_subcommand(1);
    Options o;

    auto* cluster = app.add_subcommand("cluster", "cluster one dataset");
    add_data_flags(cluster, o);
    add_run_flags(cluster, o);
    cluster->add_option("--trace", o.trace, "per-iteration trace (TSV)");

    auto* sweep_tau = app.add_subcommand("sweep-tau", "tune the neighborhood threshold at fixed K");
    add_data_flags(sweep_tau, o);
    add_run_flags(sweep_tau, o);
    sweep_tau->add_option("--tau-grid", o.tau_grid, "comma-separated thresholds");

    auto* sweep_k = app.add_subcommand("sweep-k", "metrics as a function of the cluster count");
    add_data_flags(sweep_k, o);
    add_run_flags(sweep_k, o);
    sweep_k->add_option("--k-list", o.k_list, "comma-separated cluster counts");

    auto* abl = app.add_subcommand("ablation", "geometric runs on randomly relabeled networks");
    add_data_flags(abl, o);
    add_run_flags(abl, o);
    abl->add_option("--seed", o.seed, "generator seed")->capture_default_str();
    abl->add_option("--repetitions", o.repetitions, "number of permuted networks")->capture_default_str();
    abl->add_flag("--identity", o.identity, "use the identity relabeling (control)");

    auto* eval = app.add_subcommand("eval", "score predicted labels against truth");
    eval->add_option("--labels", o.labels, "truth labels")->required();
    eval->add_option("--predicted", o.predicted, "predicted labels ('node-id label' per line)");
    eval->add_option("--result", o.result, "result document written by 'cluster'");
    eval->add_option("--output", o.output, "write metrics as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*cluster) return cmd_cluster(o);
        if (*sweep_tau) return cmd_sweep_tau(o);
        if (*sweep_k) return cmd_sweep_k(o);
        if (*abl) return cmd_ablation(o);
        if (*eval) return cmd_eval(o);
    } catch (const geoap::CalibrationError& e) {
        std::cerr << "calibration failed: " << e.what() << '\n';
        return kCalibration;
    } catch (const geoap::ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << '\n';
        return kConvergence;
    } catch (const geoap::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const geoap::ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
