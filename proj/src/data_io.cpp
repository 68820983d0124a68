#include "geoap/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_map>

#include "geoap/errors.hpp"

namespace geoap {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

bool skippable(const std::vector<std::string>& fields) {
    return fields.empty() || fields.front().starts_with('#');
}

std::string where(const std::string& source, std::size_t line_no) {
    return source + ":" + std::to_string(line_no) + ": ";
}

double parse_number(const std::string& token, const std::string& source, std::size_t line_no) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw DataError(where(source, line_no) + "not a number: '" + token + "'");
    }
    return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

class IdIndex {
public:
    std::optional<std::size_t> find(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t intern(const std::string& id, std::vector<std::string>& ids) {
        auto [it, inserted] = index_.emplace(id, ids.size());
        if (inserted) ids.push_back(id);
        return it->second;
    }

private:
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace

std::size_t TruthLabels::labeled_count() const {
    return static_cast<std::size_t>(std::count_if(per_node.begin(), per_node.end(), [](const auto& v) {
        return v.has_value();
    }));
}

std::vector<std::pair<std::string, std::string>> read_edge_tokens(std::istream& in, const std::string& source) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        const auto f = split_fields(line);
        if (skippable(f)) continue;
        if (f.size() != 2) {
            throw DataError(where(source, line_no) + "expected two vertex ids, found " + std::to_string(f.size()) +
                            " fields");
        }
        out.emplace_back(f[0], f[1]);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_label_tokens(std::istream& in, const std::string& source) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        const auto f = split_fields(line);
        if (skippable(f)) continue;
        if (f.size() != 2) {
            throw DataError(where(source, line_no) + "expected 'node-id label', found " + std::to_string(f.size()) +
                            " fields");
        }
        out.emplace_back(f[0], f[1]);
    }
    return out;
}

Dataset load_dataset(const std::optional<std::filesystem::path>& features_path,
                     const std::optional<std::filesystem::path>& edges_path,
                     const std::optional<std::filesystem::path>& labels_path, const LoadOptions& options) {
    if (!features_path && !edges_path && !labels_path) {
        throw ArgumentError("load_dataset needs at least one input file");
    }
    Dataset d;
    IdIndex index;

    if (features_path) {
        auto in = open_input(*features_path);
        const std::string source = features_path->string();
        std::vector<double> values;
        std::size_t dim = 0;
        std::string line;
        for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
            const auto f = split_fields(line);
            if (skippable(f)) continue;
            std::size_t first = 0;
            std::string id = std::to_string(d.ids.size());
            if (options.feature_ids) {
                id = f[0];
                first = 1;
            }
            const std::size_t row_dim = f.size() - first;
            if (row_dim == 0) throw DataError(where(source, line_no) + "row has no feature values");
            if (d.ids.empty()) {
                dim = row_dim;
            } else if (row_dim != dim) {
                throw DataError(where(source, line_no) + "row has " + std::to_string(row_dim) +
                                " features, expected " + std::to_string(dim));
            }
            if (index.find(id)) throw DataError(where(source, line_no) + "duplicate feature row for node '" + id + "'");
            index.intern(id, d.ids);
            for (std::size_t k = first; k < f.size(); ++k) values.push_back(parse_number(f[k], source, line_no));
        }
        if (d.ids.empty()) throw DataError(source + ": no feature rows");
        FeatureMatrix fm(d.ids.size(), dim);
        std::copy(values.begin(), values.end(), fm.data());
        d.features = std::move(fm);
    }

    auto resolve = [&](const std::string& id, const std::string& what) {
        if (auto k = index.find(id)) return *k;
        if (d.features) throw DataError(what + " references node '" + id + "' which has no feature row");
        return index.intern(id, d.ids);
    };

    std::vector<Edge> edges;
    if (edges_path) {
        auto in = open_input(*edges_path);
        for (const auto& [u, v] : read_edge_tokens(in, edges_path->string())) {
            if (u == v) throw DataError(edges_path->string() + ": self-loop on node '" + u + "'");
            const std::size_t iu = resolve(u, edges_path->string());
            const std::size_t iv = resolve(v, edges_path->string());
            edges.emplace_back(iu, iv);
        }
    }

    std::vector<std::pair<std::size_t, std::string>> raw_labels;
    if (labels_path) {
        auto in = open_input(*labels_path);
        for (const auto& [id, label] : read_label_tokens(in, labels_path->string())) {
            raw_labels.emplace_back(resolve(id, labels_path->string()), label);
        }
    }

    const std::size_t n = d.ids.size();
    if (edges_path) d.graph = Graph(n, edges);
    if (labels_path) {
        TruthLabels t;
        for (const auto& [node, label] : raw_labels) t.class_names.push_back(label);
        std::sort(t.class_names.begin(), t.class_names.end());
        t.class_names.erase(std::unique(t.class_names.begin(), t.class_names.end()), t.class_names.end());
        t.per_node.assign(n, std::nullopt);
        for (const auto& [node, label] : raw_labels) {
            if (t.per_node[node]) {
                throw DataError(labels_path->string() + ": node '" + d.ids[node] + "' labeled twice");
            }
            t.per_node[node] = static_cast<std::int64_t>(
                std::lower_bound(t.class_names.begin(), t.class_names.end(), label) - t.class_names.begin());
        }
        d.truth = std::move(t);
    }
    return d;
}

Metrics evaluate_against(const Labels& predicted, const TruthLabels& truth) {
    if (predicted.size() != truth.per_node.size()) {
        throw ArgumentError("prediction covers " + std::to_string(predicted.size()) + " nodes, truth covers " +
                            std::to_string(truth.per_node.size()));
    }
    LabelVector pred, gold;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (!truth.per_node[i]) continue;
        pred.push_back(static_cast<std::int64_t>(predicted[i]));
        gold.push_back(*truth.per_node[i]);
    }
    if (pred.empty()) throw DataError("no node carries a truth label");
    return evaluate(pred, gold);
}

ResultDocument make_result_document(const ClusteringResult& result, const Dataset& dataset,
                                    nlohmann::ordered_json config) {
    if (result.labels.size() != dataset.size()) {
        throw ArgumentError("result and dataset disagree on the number of nodes");
    }
    ResultDocument doc;
    doc.config = std::move(config);
    doc.nodes = dataset.ids;
    std::vector<VertexId> ex = result.exemplars;
    std::sort(ex.begin(), ex.end());
    for (VertexId e : ex) doc.exemplars.push_back(dataset.ids.at(e));
    for (VertexId c : result.assigned_labels) doc.assigned_labels.push_back(dataset.ids.at(c));
    for (VertexId c : result.labels) doc.labels.push_back(dataset.ids.at(c));
    doc.converged = result.converged;
    doc.iterations = result.iterations_run;
    doc.net_similarity = result.net_similarity;
    doc.smoothed = result.smoothed;
    if (dataset.truth) doc.metrics = evaluate_against(result.labels, *dataset.truth);
    return doc;
}

nlohmann::ordered_json to_json(const ResultDocument& doc) {
    nlohmann::ordered_json j;
    j["config"] = doc.config;
    j["converged"] = doc.converged;
    j["iterations"] = doc.iterations;
    j["net_similarity"] = doc.net_similarity ? nlohmann::ordered_json(*doc.net_similarity) : nullptr;
    j["cluster_count"] = doc.exemplars.size();
    j["exemplars"] = doc.exemplars;
    j["smoothed"] = doc.smoothed;
    if (doc.metrics) {
        j["metrics"] = {{"nmi", doc.metrics->nmi}, {"cr", doc.metrics->cr}, {"f1", doc.metrics->f1}};
    }
    auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
        nodes.push_back({{"id", doc.nodes[i]}, {"assigned", doc.assigned_labels[i]}, {"label", doc.labels[i]}});
    }
    return j;
}

ResultDocument result_from_json(const nlohmann::ordered_json& j) {
    try {
        ResultDocument doc;
        doc.config = j.at("config");
        doc.converged = j.at("converged").get<bool>();
        doc.iterations = j.at("iterations").get<std::size_t>();
        if (!j.at("net_similarity").is_null()) doc.net_similarity = j.at("net_similarity").get<double>();
        doc.exemplars = j.at("exemplars").get<std::vector<std::string>>();
        doc.smoothed = j.at("smoothed").get<bool>();
        if (j.contains("metrics")) {
            const auto& m = j.at("metrics");
            doc.metrics = Metrics{m.at("nmi").get<double>(), m.at("cr").get<double>(), m.at("f1").get<double>()};
        }
        for (const auto& node : j.at("nodes")) {
            doc.nodes.push_back(node.at("id").get<std::string>());
            doc.assigned_labels.push_back(node.at("assigned").get<std::string>());
            doc.labels.push_back(node.at("label").get<std::string>());
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed result document: ") + e.what());
    }
}

void write_result(const ResultDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write result to " + path.string());
    // max_digits10 keeps doubles exact through the text form
    out << to_json(doc).dump(2) << '\n';
    if (!out) throw DataError("error while writing " + path.string());
}

ResultDocument read_result(const std::filesystem::path& path) {
    auto in = open_input(path);
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return result_from_json(j);
}

}  // namespace geoap
