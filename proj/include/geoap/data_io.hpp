#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "geoap/affinity.hpp"
#include "geoap/engine.hpp"
#include "geoap/evaluation.hpp"
#include "geoap/graph.hpp"

namespace geoap {

/// Ground-truth classes; nodes without a label are skipped by the metrics.
struct TruthLabels {
    std::vector<std::optional<std::int64_t>> per_node;
    std::vector<std::string> class_names;  // class id = index, names ascending

    std::size_t labeled_count() const;
};

struct Dataset {
    std::vector<std::string> ids;
    std::optional<FeatureMatrix> features;
    std::optional<Graph> graph;
    std::optional<TruthLabels> truth;

    std::size_t size() const noexcept { return ids.size(); }
};

struct LoadOptions {
    bool feature_ids = false;  // first column of the feature file is the node id
};

/// Node order follows the feature file, else the edge list, else the label
/// file. Every node referenced by the edge or label file must have features
/// when a feature file is given.
Dataset load_dataset(const std::optional<std::filesystem::path>& features_path,
                     const std::optional<std::filesystem::path>& edges_path,
                     const std::optional<std::filesystem::path>& labels_path, const LoadOptions& options = {});

/// Raw token pairs from an edge list; '#' comments and blank lines skipped.
std::vector<std::pair<std::string, std::string>> read_edge_tokens(std::istream& in, const std::string& source);

/// Metrics restricted to nodes that carry a truth label.
Metrics evaluate_against(const Labels& predicted, const TruthLabels& truth);

struct ResultDocument {
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<std::string> nodes;
    std::vector<std::string> exemplars;        // ascending by node index
    std::vector<std::string> assigned_labels;  // exemplar id per node, before smoothing
    std::vector<std::string> labels;           // exemplar id per node, final
    bool converged = false;
    std::size_t iterations = 0;
    std::optional<double> net_similarity;
    bool smoothed = false;
    std::optional<Metrics> metrics;

    friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

ResultDocument make_result_document(const ClusteringResult& result, const Dataset& dataset,
                                    nlohmann::ordered_json config = nlohmann::ordered_json::object());

nlohmann::ordered_json to_json(const ResultDocument& doc);
ResultDocument result_from_json(const nlohmann::ordered_json& j);

void write_result(const ResultDocument& doc, const std::filesystem::path& path);
ResultDocument read_result(const std::filesystem::path& path);

/// Reads "node-id label" lines into a map keyed by node id.
std::vector<std::pair<std::string, std::string>> read_label_tokens(std::istream& in, const std::string& source);

}  // namespace geoap
