#include "powk0/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace powk0 {

bool Digraph::is_sink(std::size_t v) const {
    for (int e : adjacency[v])
        if (e != 0) return false;
    return true;
}

std::vector<std::size_t> Digraph::sinks() const {
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < size(); ++v)
        if (is_sink(v)) s.push_back(v);
    return s;
}

std::size_t Digraph::edge_count() const {
    std::size_t c = 0;
    for (const auto& row : adjacency)
        for (int e : row) c += static_cast<std::size_t>(e);
    return c;
}

Digraph Digraph::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("adjacency"))
        throw std::invalid_argument("digraph JSON requires vertices and adjacency");
    Digraph d;
    for (const auto& v : j.at("vertices")) d.labels.push_back(v.get<std::string>());
    const auto& adj = j.at("adjacency");
    if (!adj.is_array() || adj.size() != d.labels.size())
        throw std::invalid_argument("digraph JSON: adjacency has wrong row count");
    for (const auto& row : adj) {
        if (!row.is_array() || row.size() != d.labels.size())
            throw std::invalid_argument("digraph JSON: adjacency row has wrong length");
        std::vector<int> r;
        for (const auto& e : row) {
            const int v = e.get<int>();
            if (v < 0) throw std::invalid_argument("digraph JSON: negative edge multiplicity");
            r.push_back(v);
        }
        d.adjacency.push_back(std::move(r));
    }
    return d;
}

Digraph power_digraph(const Group& g, bool punctured) {
    if (punctured && g.order() == 1)
        throw std::invalid_argument("punctured power digraph of the trivial group is empty");

    Digraph d;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (punctured && x == g.identity()) continue;
        d.group_elements.push_back(x);
        d.labels.push_back(g.element_label(x));
    }
    const std::size_t n = d.group_elements.size();
    std::vector<std::size_t> vertex_of(g.order(), n); // element -> vertex, n = absent
    for (std::size_t v = 0; v < n; ++v) vertex_of[d.group_elements[v]] = v;

    d.adjacency.assign(n, std::vector<int>(n, 0));
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t x = d.group_elements[v];
        for (std::size_t y : cyclic_subgroup(g, x)) {
            if (y == x || vertex_of[y] == n) continue;
            d.adjacency[v][vertex_of[y]] = 1;
        }
    }
    return d;
}

VertexOrdering identity_order(const Digraph& d) {
    VertexOrdering o(d.size());
    std::iota(o.begin(), o.end(), 0);
    return o;
}

VertexOrdering canonical_order(const Digraph& d, const Group& g) {
    if (d.group_elements.size() != d.size())
        throw std::invalid_argument("canonical_order needs a digraph built from a group");
    std::vector<std::size_t> ord(d.size());
    for (std::size_t v = 0; v < d.size(); ++v) ord[v] = element_order(g, d.group_elements[v]);
    VertexOrdering o = identity_order(d);
    std::sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) {
        if (ord[a] != ord[b]) return ord[a] < ord[b];
        return d.group_elements[a] < d.group_elements[b];
    });
    return o;
}

namespace {

void check_ordering(const Digraph& d, const VertexOrdering& order) {
    if (order.size() != d.size()) throw std::invalid_argument("ordering has wrong size");
    std::vector<bool> seen(d.size(), false);
    for (std::size_t v : order) {
        if (v >= d.size() || seen[v]) throw std::invalid_argument("ordering is not a permutation");
        seen[v] = true;
    }
}

} // namespace

IntMatrix adjacency_matrix(const Digraph& d, const VertexOrdering& order) {
    check_ordering(d, order);
    const std::size_t n = d.size();
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = d.adjacency[order[i]][order[j]];
    return a;
}

IntMatrix k0_matrix(const Digraph& d, const VertexOrdering& order) {
    check_ordering(d, order);
    const std::size_t n = d.size();
    std::vector<std::size_t> regular; // positions (in the ordering) of non-sinks
    for (std::size_t i = 0; i < n; ++i)
        if (!d.is_sink(order[i])) regular.push_back(i);

    // (I - A) without sink rows, transposed: rows = all vertices, one column
    // per regular vertex.
    IntMatrix m(n, regular.size());
    for (std::size_t c = 0; c < regular.size(); ++c) {
        const std::size_t i = regular[c];
        for (std::size_t u = 0; u < n; ++u) {
            int v = (i == u ? 1 : 0) - d.adjacency[order[i]][order[u]];
            m.at(u, c) = v;
        }
    }
    return m;
}

std::string to_dot(const Digraph& d, const VertexOrdering& order) {
    check_ordering(d, order);
    std::ostringstream os;
    os << "digraph {\n";
    for (std::size_t i = 0; i < d.size(); ++i)
        os << "  " << i << " [label=\"" << d.labels[order[i]] << "\"];\n";
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            for (int e = 0; e < d.adjacency[order[i]][order[j]]; ++e)
                os << "  " << i << " -> " << j << ";\n";
    os << "}\n";
    return os.str();
}

nlohmann::json to_json(const Digraph& d, const VertexOrdering& order) {
    check_ordering(d, order);
    nlohmann::json vertices = nlohmann::json::array(), adj = nlohmann::json::array();
    for (std::size_t i = 0; i < d.size(); ++i) vertices.push_back(d.labels[order[i]]);
    for (std::size_t i = 0; i < d.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < d.size(); ++j) row.push_back(d.adjacency[order[i]][order[j]]);
        adj.push_back(std::move(row));
    }
    return {{"vertices", std::move(vertices)}, {"adjacency", std::move(adj)}};
}

Digraph disjoint_union(const std::vector<Digraph>& parts) {
    Digraph d;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    d.adjacency.assign(total, std::vector<int>(total, 0));
    std::size_t base = 0;
    for (std::size_t c = 0; c < parts.size(); ++c) {
        const Digraph& p = parts[c];
        for (std::size_t v = 0; v < p.size(); ++v) {
            d.labels.push_back(parts.size() > 1 ? p.labels[v] + "#" + std::to_string(c)
                                                : p.labels[v]);
            for (std::size_t w = 0; w < p.size(); ++w)
                d.adjacency[base + v][base + w] = p.adjacency[v][w];
        }
        base += p.size();
    }
    return d;
}

} // namespace powk0
