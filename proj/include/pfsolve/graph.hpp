#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pfsolve/bitset.hpp"
#include "pfsolve/errors.hpp"

namespace pfsolve {

using VertexId = std::string;

/// Oriented graph: at most one of (u,v), (v,u) per unordered pair, no loops.
/// Vertices are addressed by index 0..size()-1; each carries a string id.
class OrientedGraph {
public:
    OrientedGraph() = default;

    explicit OrientedGraph(std::vector<VertexId> ids) : ids_(std::move(ids)) {
        const auto n = ids_.size();
        arc_.assign(n * n, 0);
        adj_.assign(n, Bitset(n));
        for (std::size_t i = 0; i < n; ++i)
            if (!index_.emplace(ids_[i], i).second) throw KeyError("duplicate vertex id '" + ids_[i] + "'");
    }

    /// Graph with ids "0", "1", ..., "n-1".
    static OrientedGraph with_size(std::size_t n) {
        std::vector<VertexId> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
        return OrientedGraph(std::move(ids));
    }

    std::size_t size() const { return ids_.size(); }
    const std::vector<VertexId>& ids() const { return ids_; }
    const VertexId& id(std::size_t i) const { return ids_.at(i); }

    std::size_t index_of(const VertexId& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw KeyError("unknown vertex id '" + id + "'");
        return it->second;
    }

    /// Adds the arc u -> v, replacing any arc v -> u.
    void add_arc(std::size_t u, std::size_t v) {
        check(u);
        check(v);
        if (u == v) throw PreconditionError("self-loops are not allowed in an oriented graph");
        arc_[v * size() + u] = 0;
        arc_[u * size() + v] = 1;
        adj_[u].set(v);
        adj_[v].set(u);
    }

    void remove_edge(std::size_t u, std::size_t v) {
        check(u);
        check(v);
        arc_[u * size() + v] = arc_[v * size() + u] = 0;
        adj_[u].reset(v);
        adj_[v].reset(u);
    }

    bool has_arc(std::size_t u, std::size_t v) const { return arc_[u * size() + v] != 0; }
    bool adjacent(std::size_t u, std::size_t v) const { return adj_[u].test(v); }
    const Bitset& neighbours(std::size_t v) const { return adj_[v]; }

    Bitset closed_neighbourhood(std::size_t v) const {
        Bitset b = adj_[v];
        b.set(v);
        return b;
    }

    std::size_t degree(std::size_t v) const { return adj_[v].count(); }

    /// All arcs (u, v) ordered lexicographically by index.
    std::vector<std::pair<std::size_t, std::size_t>> arcs() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t u = 0; u < size(); ++u)
            for (std::size_t v = 0; v < size(); ++v)
                if (has_arc(u, v)) out.emplace_back(u, v);
        return out;
    }

    std::size_t edge_count() const {
        std::size_t c = 0;
        for (auto b : arc_) c += b;
        return c;
    }

    Bitset all_vertices() const {
        Bitset b(size());
        for (std::size_t i = 0; i < size(); ++i) b.set(i);
        return b;
    }

    /// Same ids, same adjacency, and same arc directions.
    friend bool operator==(const OrientedGraph& a, const OrientedGraph& b) {
        return a.ids_ == b.ids_ && a.arc_ == b.arc_;
    }

    /// Equality of the underlying undirected graphs (ids must also agree).
    bool same_underlying(const OrientedGraph& o) const { return ids_ == o.ids_ && adj_ == o.adj_; }

private:
    void check(std::size_t v) const {
        if (v >= size()) throw KeyError("vertex index " + std::to_string(v) + " out of range");
    }

    std::vector<VertexId> ids_;
    std::map<VertexId, std::size_t> index_;
    std::vector<std::uint8_t> arc_;
    std::vector<Bitset> adj_;
};

/// Sub-graph induced by `subset` (indices into g); vertex order follows the
/// order in `subset`, orientation is preserved.
inline OrientedGraph induced_subgraph(const OrientedGraph& g, const std::vector<std::size_t>& subset) {
    std::vector<VertexId> ids;
    for (auto v : subset) {
        if (v >= g.size()) throw KeyError("vertex index " + std::to_string(v) + " out of range");
        ids.push_back(g.id(v));
    }
    OrientedGraph h(std::move(ids));
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = 0; j < subset.size(); ++j)
            if (g.has_arc(subset[i], subset[j])) h.add_arc(i, j);
    return h;
}

inline OrientedGraph induced_subgraph(const OrientedGraph& g, const Bitset& subset) {
    return induced_subgraph(g, subset.indices());
}

inline OrientedGraph induced_subgraph_by_id(const OrientedGraph& g, const std::vector<VertexId>& subset) {
    std::vector<std::size_t> idx;
    for (const auto& id : subset) idx.push_back(g.index_of(id));
    return induced_subgraph(g, idx);
}

/// Reverses every edge with exactly one endpoint in `switched`.
inline OrientedGraph apply_switching(const OrientedGraph& g, const Bitset& switched) {
    OrientedGraph h(g.ids());
    for (auto [u, v] : g.arcs()) {
        if (switched.test(u) != switched.test(v))
            h.add_arc(v, u);
        else
            h.add_arc(u, v);
    }
    return h;
}

inline OrientedGraph apply_switching(const OrientedGraph& g, const std::vector<std::size_t>& switched) {
    Bitset s(g.size());
    for (auto v : switched) {
        if (v >= g.size()) throw KeyError("vertex index " + std::to_string(v) + " out of range");
        s.set(v);
    }
    return apply_switching(g, s);
}

}  // namespace pfsolve
