#pragma once

// Decision procedures on oriented graphs: independent sets, claws, chordality,
// indifference orderings, dipath orientation and oriented elimination orderings.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "pfsolve/bitset.hpp"
#include "pfsolve/errors.hpp"
#include "pfsolve/graph.hpp"

namespace pfsolve {

/// Largest graph for which independent sets are enumerated exhaustively.
inline constexpr std::size_t kDefaultEnumerationCap = 24;

/// Calls f(u, v, w) once for every induced path u - v - w (u < w).
template <class F>
void for_each_induced_p2(const OrientedGraph& g, F&& f) {
    for (std::size_t v = 0; v < g.size(); ++v) {
        const auto nb = g.neighbours(v).indices();
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b)
                if (!g.adjacent(nb[a], nb[b])) f(nb[a], v, nb[b]);
    }
}

namespace detail {

template <class F>
void enumerate_independent(const OrientedGraph& g, std::size_t start, Bitset& chosen, Bitset& blocked,
                           std::vector<std::size_t>& stack, F& f) {
    f(static_cast<const std::vector<std::size_t>&>(stack));
    for (std::size_t v = start; v < g.size(); ++v) {
        if (blocked.test(v)) continue;
        Bitset saved = blocked;
        blocked |= g.neighbours(v);
        blocked.set(v);
        chosen.set(v);
        stack.push_back(v);
        enumerate_independent(g, v + 1, chosen, blocked, stack, f);
        stack.pop_back();
        chosen.reset(v);
        blocked = std::move(saved);
    }
}

inline void check_enumeration_cap(const OrientedGraph& g, std::size_t cap) {
    if (g.size() > cap)
        throw ResourceError("independent-set enumeration on " + std::to_string(g.size()) +
                            " vertices exceeds cap " + std::to_string(cap));
}

}  // namespace detail

/// Calls f(indices) for every independent set (including the empty set), in
/// lexicographic order of sorted index lists.
template <class F>
void for_each_independent_set(const OrientedGraph& g, F&& f, std::size_t cap = kDefaultEnumerationCap) {
    detail::check_enumeration_cap(g, cap);
    Bitset chosen(g.size()), blocked(g.size());
    std::vector<std::size_t> stack;
    detail::enumerate_independent(g, 0, chosen, blocked, stack, f);
}

/// All independent sets of exactly `order` vertices, edge directions ignored.
inline std::vector<std::vector<std::size_t>> independent_sets(const OrientedGraph& g, std::size_t order,
                                                              std::size_t cap = kDefaultEnumerationCap) {
    std::vector<std::vector<std::size_t>> out;
    for_each_independent_set(
        g,
        [&](const std::vector<std::size_t>& s) {
            if (s.size() == order) out.push_back(s);
        },
        cap);
    return out;
}

struct ClawCheck {
    bool claw_free = true;
    std::array<std::size_t, 4> witness{};  // centre, then the three leaves
};

inline ClawCheck is_claw_free(const OrientedGraph& g) {
    for (std::size_t c = 0; c < g.size(); ++c) {
        const auto nb = g.neighbours(c).indices();
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b) {
                if (g.adjacent(nb[a], nb[b])) continue;
                for (std::size_t e = b + 1; e < nb.size(); ++e)
                    if (!g.adjacent(nb[a], nb[e]) && !g.adjacent(nb[b], nb[e]))
                        return {false, {c, nb[a], nb[b], nb[e]}};
            }
    }
    return {};
}

enum class OrderingKind { PEO, Indifference, OrientedPEO, OrientedIndifference };

inline const char* to_string(OrderingKind k) {
    switch (k) {
        case OrderingKind::PEO: return "PEO";
        case OrderingKind::Indifference: return "indifference";
        case OrderingKind::OrientedPEO: return "oriented-PEO";
        case OrderingKind::OrientedIndifference: return "oriented-indifference";
    }
    return "?";
}

struct EliminationOrdering {
    std::vector<std::size_t> order;  // vertex indices, first to last
    OrderingKind kind = OrderingKind::PEO;
    std::string strategy;            // how it was found, e.g. "lexbfs", "greedy"

    std::size_t last() const { return order.back(); }
};

inline std::vector<std::size_t> positions_of(const std::vector<std::size_t>& order, std::size_t n) {
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    return pos;
}

inline bool is_permutation_of_vertices(const OrientedGraph& g, const std::vector<std::size_t>& order) {
    if (order.size() != g.size()) return false;
    std::vector<bool> seen(g.size(), false);
    for (auto v : order) {
        if (v >= g.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

/// Earlier neighbours of every vertex form a clique.
inline bool is_perfect_elimination_ordering(const OrientedGraph& g, const std::vector<std::size_t>& order) {
    if (!is_permutation_of_vertices(g, order)) return false;
    Bitset earlier(g.size());
    for (auto v : order) {
        Bitset nb = g.neighbours(v);
        nb &= earlier;
        const auto idx = nb.indices();
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                if (!g.adjacent(idx[a], idx[b])) return false;
        earlier.set(v);
    }
    return true;
}

/// Every induced path is increasing or decreasing. It suffices to check the
/// induced paths on three vertices: the middle vertex must lie between the ends.
inline bool is_indifference_ordering(const OrientedGraph& g, const std::vector<std::size_t>& order) {
    if (!is_permutation_of_vertices(g, order)) return false;
    const auto pos = positions_of(order, g.size());
    bool ok = true;
    for_each_induced_p2(g, [&](std::size_t u, std::size_t v, std::size_t w) {
        if (!((pos[u] < pos[v] && pos[v] < pos[w]) || (pos[w] < pos[v] && pos[v] < pos[u]))) ok = false;
    });
    return ok;
}

/// Every arc points from the earlier to the later vertex.
inline bool is_forward_oriented(const OrientedGraph& g, const std::vector<std::size_t>& order) {
    if (!is_permutation_of_vertices(g, order)) return false;
    const auto pos = positions_of(order, g.size());
    for (auto [u, v] : g.arcs())
        if (pos[u] > pos[v]) return false;
    return true;
}

namespace detail {

/// Lexicographic breadth-first search. With `previous` set, ties are broken
/// in favour of the vertex appearing last in it (LBFS+); otherwise the
/// smallest index wins.
inline std::vector<std::size_t> lexbfs(const OrientedGraph& g, const std::vector<std::size_t>* previous = nullptr) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::size_t>> label(n);
    std::vector<bool> visited(n, false);
    std::vector<std::size_t> prev_pos;
    if (previous) prev_pos = positions_of(*previous, n);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (visited[v]) continue;
            if (best == n || label[v] > label[best] ||
                (label[v] == label[best] && previous && prev_pos[v] > prev_pos[best]))
                best = v;
        }
        visited[best] = true;
        order.push_back(best);
        for (auto u : g.neighbours(best).indices())
            if (!visited[u]) label[u].push_back(n - step);
    }
    return order;
}

}  // namespace detail

/// A PEO (earlier neighbours form a clique) when the underlying graph is chordal.
inline std::optional<EliminationOrdering> perfect_elimination_ordering(const OrientedGraph& g) {
    auto order = detail::lexbfs(g);
    if (!is_perfect_elimination_ordering(g, order)) return std::nullopt;
    return EliminationOrdering{std::move(order), OrderingKind::PEO, "lexbfs"};
}

/// An ordering in which every induced path is monotone. Candidates come from
/// three LBFS sweeps (unit-interval recognition) and are verified explicitly.
inline std::optional<EliminationOrdering> indifference_ordering(const OrientedGraph& g) {
    auto s1 = detail::lexbfs(g);
    auto s2 = detail::lexbfs(g, &s1);
    auto s3 = detail::lexbfs(g, &s2);
    for (auto* cand : {&s3, &s2, &s1})
        if (is_indifference_ordering(g, *cand)) return EliminationOrdering{*cand, OrderingKind::Indifference, "lbfs-3-sweep"};
    return std::nullopt;
}

struct DipathCheck {
    bool dipath_oriented = true;
    std::array<std::size_t, 3> witness{};  // induced path (u, v, w) that is not a dipath
};

/// A path is a dipath iff each consecutive triple is, and the triples of an
/// induced path are themselves induced, so length-2 paths suffice.
inline DipathCheck is_dipath_oriented(const OrientedGraph& g) {
    DipathCheck out;
    for_each_induced_p2(g, [&](std::size_t u, std::size_t v, std::size_t w) {
        if (!out.dipath_oriented) return;
        const bool forward = g.has_arc(u, v) && g.has_arc(v, w);
        const bool backward = g.has_arc(w, v) && g.has_arc(v, u);
        if (!forward && !backward) out = {false, {u, v, w}};
    });
    return out;
}

namespace detail {

/// v is simplicial in G[alive] and every edge of G[alive] at v points into v.
inline bool is_simplicial_sink(const OrientedGraph& g, const Bitset& alive, std::size_t v) {
    Bitset nb = g.neighbours(v);
    nb &= alive;
    const auto idx = nb.indices();
    for (auto u : idx)
        if (!g.has_arc(u, v)) return false;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (!g.adjacent(idx[a], idx[b])) return false;
    return true;
}

inline bool oriented_peo_backtrack(const OrientedGraph& g, Bitset& alive, std::vector<std::size_t>& tail,
                                   std::unordered_set<Bitset, BitsetHash>& failed) {
    if (alive.none()) return true;
    if (failed.count(alive)) return false;
    for (auto v : alive.indices()) {
        if (!is_simplicial_sink(g, alive, v)) continue;
        alive.reset(v);
        tail.push_back(v);
        if (oriented_peo_backtrack(g, alive, tail, failed)) return true;
        tail.pop_back();
        alive.set(v);
    }
    failed.insert(alive);
    return false;
}

}  // namespace detail

/// Largest graph on which the backtracking fallback of oriented_peo runs.
inline constexpr std::size_t kOrientedPeoBacktrackCap = 24;

/// PEO whose every edge to an earlier neighbour points into the later vertex.
/// Built from the back by removing simplicial sinks; strategy records whether
/// the greedy pass sufficed or backtracking was needed.
inline std::optional<EliminationOrdering> oriented_peo(const OrientedGraph& g) {
    Bitset alive = g.all_vertices();
    std::vector<std::size_t> tail;
    bool stuck = false;
    while (alive.any()) {
        std::size_t pick = g.size();
        for (auto v : alive.indices())
            if (detail::is_simplicial_sink(g, alive, v)) {
                pick = v;
                break;
            }
        if (pick == g.size()) {
            stuck = true;
            break;
        }
        alive.reset(pick);
        tail.push_back(pick);
    }
    std::string strategy = "greedy";
    if (stuck) {
        if (g.size() > kOrientedPeoBacktrackCap) return std::nullopt;
        alive = g.all_vertices();
        tail.clear();
        std::unordered_set<Bitset, BitsetHash> failed;
        if (!detail::oriented_peo_backtrack(g, alive, tail, failed)) return std::nullopt;
        strategy = "backtracking";
    }
    std::reverse(tail.begin(), tail.end());
    return EliminationOrdering{std::move(tail), OrderingKind::OrientedPEO, strategy};
}

/// Smallest-index-first topological order, or nullopt if the graph has a cycle.
inline std::optional<std::vector<std::size_t>> topological_order(const OrientedGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> indeg(n, 0);
    for (auto [u, v] : g.arcs()) ++indeg[v];
    std::vector<std::size_t> order;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!done[v] && indeg[v] == 0) {
                pick = v;
                break;
            }
        if (pick == n) return std::nullopt;
        done[pick] = true;
        order.push_back(pick);
        for (std::size_t w = 0; w < n; ++w)
            if (g.has_arc(pick, w)) --indeg[w];
    }
    return order;
}

/// Indifference ordering with every arc pointing forward.
///
/// Two routes are computed and must agree: (a) a topological order verified
/// as an indifference ordering, and (b) dipath orientation together with an
/// oriented PEO. Disagreement indicates a bug and throws.
inline std::optional<EliminationOrdering> is_oriented_indifference(const OrientedGraph& g) {
    std::optional<EliminationOrdering> direct;
    if (auto topo = topological_order(g); topo && is_indifference_ordering(g, *topo))
        direct = EliminationOrdering{std::move(*topo), OrderingKind::OrientedIndifference, "topological"};

    const bool via_peo = is_dipath_oriented(g).dipath_oriented && oriented_peo(g).has_value();
    if (via_peo != direct.has_value())
        throw NumericalError("oriented-indifference routes disagree (topological vs dipath+oriented PEO)");
    return direct;
}

/// alpha(G): by enumeration under the cap, otherwise via a maximum independent
/// set along a PEO (greedy from the end is optimal on chordal graphs).
inline std::size_t independence_number(const OrientedGraph& g, std::size_t cap = kDefaultEnumerationCap) {
    if (g.size() <= cap) {
        std::size_t best = 0;
        for_each_independent_set(g, [&](const std::vector<std::size_t>& s) { best = std::max(best, s.size()); }, cap);
        return best;
    }
    auto peo = perfect_elimination_ordering(g);
    if (!peo)
        throw ResourceError("independence number: " + std::to_string(g.size()) +
                            " vertices exceeds the enumeration cap and the graph is not chordal");
    // Walking the PEO backwards every vertex is simplicial in what remains;
    // greedily taking unblocked simplicial vertices is optimal (Gavril).
    Bitset blocked(g.size());
    std::size_t alpha = 0;
    for (auto it = peo->order.rbegin(); it != peo->order.rend(); ++it) {
        if (blocked.test(*it)) continue;
        ++alpha;
        blocked |= g.neighbours(*it);
    }
    return alpha;
}

}  // namespace pfsolve
