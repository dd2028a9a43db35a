#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "powk0/group.hpp"
#include "powk0/int_matrix.hpp"

namespace powk0 {

/// Finite directed graph with labeled vertices and an integer adjacency
/// matrix (entry (u,v) counts edges u -> v). Immutable once built.
struct Digraph {
    std::vector<std::string> labels;
    /// For graphs built from a group: group element index per vertex.
    std::vector<std::size_t> group_elements;
    std::vector<std::vector<int>> adjacency;

    std::size_t size() const { return adjacency.size(); }
    bool is_sink(std::size_t v) const;
    std::vector<std::size_t> sinks() const;
    std::size_t regular_count() const { return size() - sinks().size(); }
    std::size_t edge_count() const;

    /// {"vertices": [labels], "adjacency": [[int]]}
    static Digraph from_json(const nlohmann::json& j);
};

/// Permutation of the vertices: position -> original vertex index.
using VertexOrdering = std::vector<std::size_t>;

/// Pow(G): one vertex per element, edge x -> y iff x != y and y lies in <x>.
/// Punctured drops the identity vertex (rejected for the trivial group).
Digraph power_digraph(const Group& g, bool punctured);

VertexOrdering identity_order(const Digraph& d);

/// Vertices sorted by (element order ascending, element index ascending).
/// For a punctured prime-power cyclic group this groups vertices into the
/// order-p^i blocks, sinks first.
VertexOrdering canonical_order(const Digraph& d, const Group& g);

/// Adjacency matrix with rows/cols permuted by the ordering.
IntMatrix adjacency_matrix(const Digraph& d, const VertexOrdering& order);

/// The matrix whose cokernel is K0 of the Leavitt path algebra of d:
/// take I - A in the given ordering, drop the rows of sinks, transpose.
/// Result has |V| rows and one column per regular vertex.
IntMatrix k0_matrix(const Digraph& d, const VertexOrdering& order);

std::string to_dot(const Digraph& d, const VertexOrdering& order);
nlohmann::json to_json(const Digraph& d, const VertexOrdering& order);

/// Vertex-disjoint union; labels get a per-component suffix when they clash.
Digraph disjoint_union(const std::vector<Digraph>& parts);

} // namespace powk0
