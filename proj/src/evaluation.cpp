#include "geoap/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "geoap/errors.hpp"

namespace geoap {

namespace {

std::vector<std::int64_t> distinct(std::span<const std::int64_t> v) {
    std::vector<std::int64_t> d(v.begin(), v.end());
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

std::size_t index_of(const std::vector<std::int64_t>& sorted, std::int64_t id) {
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), id) - sorted.begin());
}

double entropy(const std::vector<std::size_t>& sizes, std::size_t n) {
    double h = 0.0;
    for (std::size_t c : sizes) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(n);
        h -= p * std::log(p);
    }
    return h;
}

// Plurality class column for every cluster row, lowest class on ties.
std::vector<std::size_t> plurality_map(const MatchingMatrix& m) {
    std::vector<std::size_t> map(m.clusters.size(), 0);
    for (std::size_t l = 0; l < m.counts.size(); ++l) {
        const auto& row = m.counts[l];
        map[l] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    }
    return map;
}

}  // namespace

std::vector<std::size_t> MatchingMatrix::cluster_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& row : counts) {
        std::size_t s = 0;
        for (auto c : row) s += c;
        out.push_back(s);
    }
    return out;
}

std::vector<std::size_t> MatchingMatrix::class_sizes() const {
    std::vector<std::size_t> out(classes.size(), 0);
    for (const auto& row : counts)
        for (std::size_t h = 0; h < row.size(); ++h) out[h] += row[h];
    return out;
}

MatchingMatrix matching_matrix(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth) {
    if (pred.size() != truth.size()) {
        throw ArgumentError("predicted and true label vectors differ in length (" + std::to_string(pred.size()) +
                            " vs " + std::to_string(truth.size()) + ")");
    }
    MatchingMatrix m;
    m.n = pred.size();
    m.clusters = distinct(pred);
    m.classes = distinct(truth);
    m.counts.assign(m.clusters.size(), std::vector<std::size_t>(m.classes.size(), 0));
    for (std::size_t i = 0; i < pred.size(); ++i) {
        ++m.counts[index_of(m.clusters, pred[i])][index_of(m.classes, truth[i])];
    }
    return m;
}

double nmi(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth) {
    const MatchingMatrix m = matching_matrix(pred, truth);
    if (m.n == 0) throw ArgumentError("NMI of an empty labeling");
    const auto rows = m.cluster_sizes();
    const auto cols = m.class_sizes();
    const double n = static_cast<double>(m.n);
    const double h = entropy(rows, m.n) + entropy(cols, m.n);
    if (h == 0.0) return 1.0;  // both partitions are a single block, hence identical

    double mi = 0.0;
    for (std::size_t l = 0; l < rows.size(); ++l) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const double count = static_cast<double>(m.counts[l][c]);
            if (count == 0.0) continue;
            mi += count / n *
                  std::log(count * n / (static_cast<double>(rows[l]) * static_cast<double>(cols[c])));
        }
    }
    return std::clamp(2.0 * mi / h, 0.0, 1.0);
}

double classification_rate(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth) {
    const MatchingMatrix m = matching_matrix(pred, truth);
    if (m.n == 0) throw ArgumentError("classification rate of an empty labeling");
    const auto map = plurality_map(m);
    std::size_t correct = 0;
    for (std::size_t l = 0; l < map.size(); ++l) correct += m.counts[l][map[l]];
    return 100.0 * static_cast<double>(correct) / static_cast<double>(m.n);
}

double macro_f1(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth) {
    const MatchingMatrix m = matching_matrix(pred, truth);
    if (m.n == 0) throw ArgumentError("F1 of an empty labeling");
    const auto map = plurality_map(m);
    const auto class_sizes = m.class_sizes();
    const auto cluster_sizes = m.cluster_sizes();

    double sum = 0.0;
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
        std::size_t tp = 0, predicted = 0;
        for (std::size_t l = 0; l < map.size(); ++l) {
            if (map[l] != c) continue;
            tp += m.counts[l][c];
            predicted += cluster_sizes[l];
        }
        if (tp == 0) continue;  // precision + recall = 0
        const double precision = static_cast<double>(tp) / static_cast<double>(predicted);
        const double recall = static_cast<double>(tp) / static_cast<double>(class_sizes[c]);
        sum += 2.0 * precision * recall / (precision + recall);
    }
    return sum / static_cast<double>(m.classes.size());
}

Metrics evaluate(std::span<const std::int64_t> pred, std::span<const std::int64_t> truth) {
    return Metrics{nmi(pred, truth), classification_rate(pred, truth), macro_f1(pred, truth)};
}

}  // namespace geoap
