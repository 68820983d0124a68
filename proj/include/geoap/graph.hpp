#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geoap/matrix.hpp"

namespace geoap {

using VertexId = std::size_t;
using Edge = std::pair<VertexId, VertexId>;

/// Undirected, unweighted simple graph over vertices [0, n).
class Graph {
public:
    explicit Graph(std::size_t n = 0);
    /// Duplicate and reversed-duplicate edges collapse. Self-loops and
    /// out-of-range endpoints throw ArgumentError.
    Graph(std::size_t n, std::span<const Edge> edges);

    std::size_t size() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t degree(VertexId v) const { return adj_.at(v).size(); }

    /// Sorted ascending.
    std::span<const VertexId> neighbors(VertexId v) const { return adj_.at(v); }
    bool adjacent(VertexId u, VertexId v) const;

    /// Each edge once as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<VertexId>> adj_;
    std::size_t edge_count_ = 0;
};

enum class TopoDistanceKind { ShortestPath, Jaccard, Cosine };

/// Binary adjacency row of a vertex; bit i set iff the vertex touches i.
struct AdjacencyProfile {
    std::vector<std::uint8_t> bits;
};

/// member(i, k) holds iff k lies within topological distance tau of i.
class NeighborhoodMask {
public:
    NeighborhoodMask() = default;
    NeighborhoodMask(std::size_t n, TopoDistanceKind kind, double tau);

    /// All-true mask; geometric runs over it coincide with standard AP.
    static NeighborhoodMask full(std::size_t n);

    std::size_t size() const noexcept { return member_.rows(); }
    TopoDistanceKind kind() const noexcept { return kind_; }
    double tau() const noexcept { return tau_; }

    bool contains(VertexId i, VertexId k) const noexcept { return member_(i, k) != 0; }
    void set(VertexId i, VertexId k, bool v) noexcept { member_(i, k) = v ? 1 : 0; }
    std::span<const std::uint8_t> row(VertexId i) const noexcept { return member_.row(i); }

    std::size_t count() const noexcept;

private:
    DenseMatrix<std::uint8_t> member_;
    TopoDistanceKind kind_ = TopoDistanceKind::ShortestPath;
    double tau_ = 0.0;
};

/// Hop count marker for vertex pairs with no connecting path.
inline constexpr std::int32_t kUnreachable = -1;

AdjacencyProfile adjacency_profile(const Graph& g, VertexId v);

double jaccard_distance(const Graph& g, VertexId u, VertexId v);
double cosine_topo_distance(const Graph& g, VertexId u, VertexId v);

/// All-pairs BFS. Disconnected pairs hold kUnreachable.
DenseMatrix<std::int32_t> shortest_path_hops(const Graph& g);

/// Indicator of A + A^2 + ... + A^nu. Off-diagonal entries are set iff the
/// pair is at most nu hops apart; a diagonal entry is set iff a closed walk
/// of length <= nu exists (nu >= 2 and the vertex has an edge).
DenseMatrix<std::uint8_t> graph_power_reach(const Graph& g, int nu);

/// Reflexive, symmetric neighborhood relation. ShortestPath thresholds must
/// be whole hop counts >= 0; Jaccard/Cosine thresholds must lie in [0, 1].
NeighborhoodMask neighborhood_mask(const Graph& g, TopoDistanceKind kind, double tau);

/// Relabels vertex v as perm[v].
Graph permute_vertices(const Graph& g, std::span<const VertexId> perm);

const char* to_string(TopoDistanceKind kind);
TopoDistanceKind parse_topo_distance(const std::string& name);

}  // namespace geoap
