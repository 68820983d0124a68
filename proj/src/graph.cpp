#include "geoap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "geoap/errors.hpp"

namespace geoap {

Graph::Graph(std::size_t n) : adj_(n) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) {
            throw ArgumentError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                ") references a vertex outside [0, " + std::to_string(n) + ")");
        }
        if (u == v) {
            throw ArgumentError("self-loop on vertex " + std::to_string(u));
        }
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        edge_count_ += list.size();
    }
    edge_count_ /= 2;
}

bool Graph::adjacent(VertexId u, VertexId v) const {
    const auto& list = adj_.at(u);
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < adj_.size(); ++u) {
        for (VertexId v : adj_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

NeighborhoodMask::NeighborhoodMask(std::size_t n, TopoDistanceKind kind, double tau)
    : member_(n, n, 0), kind_(kind), tau_(tau) {}

NeighborhoodMask NeighborhoodMask::full(std::size_t n) {
    NeighborhoodMask m(n, TopoDistanceKind::ShortestPath, static_cast<double>(n));
    m.member_.fill(1);
    return m;
}

std::size_t NeighborhoodMask::count() const noexcept {
    std::size_t c = 0;
    for (auto b : member_.values()) c += b;
    return c;
}

namespace {

void check_vertex(const Graph& g, VertexId v) {
    if (v >= g.size()) {
        throw ArgumentError("vertex " + std::to_string(v) + " out of range for graph of size " +
                            std::to_string(g.size()));
    }
}

std::size_t common_neighbors(const Graph& g, VertexId u, VertexId v) {
    auto a = g.neighbors(u);
    auto b = g.neighbors(v);
    std::size_t common = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return common;
}

// Fills hops[v] for every v within max_depth of source; others keep kUnreachable.
void bfs_from(const Graph& g, VertexId source, std::int32_t max_depth, std::span<std::int32_t> hops) {
    std::fill(hops.begin(), hops.end(), kUnreachable);
    hops[source] = 0;
    std::deque<VertexId> frontier{source};
    while (!frontier.empty()) {
        VertexId u = frontier.front();
        frontier.pop_front();
        if (hops[u] == max_depth) continue;
        for (VertexId w : g.neighbors(u)) {
            if (hops[w] == kUnreachable) {
                hops[w] = hops[u] + 1;
                frontier.push_back(w);
            }
        }
    }
}

}  // namespace

AdjacencyProfile adjacency_profile(const Graph& g, VertexId v) {
    check_vertex(g, v);
    AdjacencyProfile p;
    p.bits.assign(g.size(), 0);
    for (VertexId w : g.neighbors(v)) p.bits[w] = 1;
    return p;
}

double jaccard_distance(const Graph& g, VertexId u, VertexId v) {
    check_vertex(g, u);
    check_vertex(g, v);
    if (u == v) return 0.0;
    const std::size_t both = common_neighbors(g, u, v);
    const std::size_t either = g.degree(u) + g.degree(v) - both;
    if (either == 0) return 1.0;
    return static_cast<double>(either - both) / static_cast<double>(either);
}

double cosine_topo_distance(const Graph& g, VertexId u, VertexId v) {
    check_vertex(g, u);
    check_vertex(g, v);
    if (u == v) return 0.0;
    const std::size_t du = g.degree(u);
    const std::size_t dv = g.degree(v);
    if (du == 0 || dv == 0) return 1.0;
    const double dot = static_cast<double>(common_neighbors(g, u, v));
    return std::max(0.0, 1.0 - dot / (std::sqrt(static_cast<double>(du)) * std::sqrt(static_cast<double>(dv))));
}

DenseMatrix<std::int32_t> shortest_path_hops(const Graph& g) {
    const std::size_t n = g.size();
    DenseMatrix<std::int32_t> hops(n, n, kUnreachable);
    const auto unlimited = static_cast<std::int32_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s) {
        bfs_from(g, static_cast<VertexId>(s), unlimited, hops.row(static_cast<std::size_t>(s)));
    }
    return hops;
}

DenseMatrix<std::uint8_t> graph_power_reach(const Graph& g, int nu) {
    if (nu < 1) throw ArgumentError("graph power requires nu >= 1, got " + std::to_string(nu));
    const std::size_t n = g.size();
    DenseMatrix<std::uint8_t> reach(n, n, 0);
#pragma omp parallel
    {
        std::vector<std::int32_t> hops(n);
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s) {
            const auto src = static_cast<VertexId>(s);
            bfs_from(g, src, nu, hops);
            auto out = reach.row(src);
            for (std::size_t v = 0; v < n; ++v) out[v] = hops[v] != kUnreachable ? 1 : 0;
            out[src] = (nu >= 2 && g.degree(src) > 0) ? 1 : 0;
        }
    }
    return reach;
}

NeighborhoodMask neighborhood_mask(const Graph& g, TopoDistanceKind kind, double tau) {
    const std::size_t n = g.size();
    NeighborhoodMask mask(n, kind, tau);
    if (kind == TopoDistanceKind::ShortestPath) {
        if (!(tau >= 0.0) || std::floor(tau) != tau) {
            throw ArgumentError("shortest-path threshold must be a nonnegative whole number, got " +
                                std::to_string(tau));
        }
        if (tau >= 1.0) {
            const int nu = tau > static_cast<double>(n) ? static_cast<int>(n) : static_cast<int>(tau);
            auto reach = graph_power_reach(g, std::max(nu, 1));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) mask.set(i, k, reach(i, k) != 0);
        }
    } else {
        if (!(tau >= 0.0 && tau <= 1.0)) {
            throw ArgumentError(std::string(to_string(kind)) + " threshold must lie in [0, 1], got " +
                                std::to_string(tau));
        }
        auto dist = kind == TopoDistanceKind::Jaccard ? jaccard_distance : cosine_topo_distance;
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
            const auto i = static_cast<VertexId>(si);
            for (VertexId k = i + 1; k < n; ++k) {
                const bool in = dist(g, i, k) <= tau;
                mask.set(i, k, in);
                mask.set(k, i, in);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) mask.set(i, i, true);
    return mask;
}

Graph permute_vertices(const Graph& g, std::span<const VertexId> perm) {
    const std::size_t n = g.size();
    if (perm.size() != n) {
        throw ArgumentError("permutation has " + std::to_string(perm.size()) + " entries for " +
                            std::to_string(n) + " vertices");
    }
    std::vector<std::uint8_t> seen(n, 0);
    for (VertexId p : perm) {
        if (p >= n || seen[p]) throw ArgumentError("vertex relabeling is not a bijection");
        seen[p] = 1;
    }
    std::vector<Edge> mapped;
    mapped.reserve(g.edge_count());
    for (auto [u, v] : g.edges()) mapped.emplace_back(perm[u], perm[v]);
    return Graph(n, mapped);
}

const char* to_string(TopoDistanceKind kind) {
    switch (kind) {
        case TopoDistanceKind::ShortestPath: return "shortest-path";
        case TopoDistanceKind::Jaccard: return "jaccard";
        case TopoDistanceKind::Cosine: return "cosine";
    }
    return "?";
}

TopoDistanceKind parse_topo_distance(const std::string& name) {
    if (name == "shortest-path" || name == "shortest_path") return TopoDistanceKind::ShortestPath;
    if (name == "jaccard") return TopoDistanceKind::Jaccard;
    if (name == "cosine") return TopoDistanceKind::Cosine;
    throw ArgumentError("unknown topological distance '" + name + "'");
}

}  // namespace geoap
