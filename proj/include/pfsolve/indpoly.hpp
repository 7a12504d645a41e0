#pragma once

// Weighted independence polynomial Z_G(x) = sum_{I independent} prod_{v in I} x w_v.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "pfsolve/bitset.hpp"
#include "pfsolve/errors.hpp"
#include "pfsolve/graph.hpp"
#include "pfsolve/graph_algorithms.hpp"
#include "pfsolve/hamiltonian.hpp"
#include "pfsolve/weyl.hpp"

namespace pfsolve {

/// Real weight per vertex, indexed like the graph's vertices.
using VertexWeights = std::vector<double>;

/// Coefficients c_0..c_alpha in ascending powers.
struct IndependencePolynomial {
    std::vector<double> coeffs{1.0};

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    /// Horner evaluation.
    cplx evaluate(cplx x) const {
        cplx acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Derivative dZ/dx at x.
    cplx derivative(cplx x) const {
        cplx acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * coeffs[i];
        return acc;
    }

    double abs_sum() const {
        double s = 0;
        for (auto c : coeffs) s += std::abs(c);
        return s;
    }

    double max_abs() const {
        double s = 0;
        for (auto c : coeffs) s = std::max(s, std::abs(c));
        return s;
    }

    friend bool operator==(const IndependencePolynomial&, const IndependencePolynomial&) = default;
};

inline cplx evaluate(const IndependencePolynomial& z, cplx x) { return z.evaluate(x); }

namespace detail {

inline void check_weights(const OrientedGraph& g, const VertexWeights& w) {
    if (w.size() != g.size())
        throw DimensionError("weight vector has " + std::to_string(w.size()) + " entries for " +
                             std::to_string(g.size()) + " vertices");
    for (std::size_t v = 0; v < w.size(); ++v)
        if (w[v] == 0.0 || !std::isfinite(w[v]))
            throw PreconditionError("vertex weight for '" + g.id(v) + "' must be finite and nonzero");
}

}  // namespace detail

/// lambda_v = b_v^d * sigma_v where w_v^d = sigma_v I. Only sigma_v = +-1 is
/// supported; other phases would need complex weights.
inline VertexWeights weights_for_spectrum(const Hamiltonian& h) {
    VertexWeights w;
    const int d = h.dims().d;
    for (const auto& t : h.terms()) {
        const PhaseScalar sigma = dth_power_scalar(t.label);
        double sign;
        if (sigma.k2 == 0)
            sign = 1.0;
        else if (sigma.k2 == d)
            sign = -1.0;
        else
            throw UnsupportedError("term '" + t.id + "' has w^d = exp(i pi " + std::to_string(sigma.k2) + "/" +
                                   std::to_string(d) + ") I, which is not real");
        w.push_back(sign * std::pow(t.coeff, d));
    }
    return w;
}

/// Exhaustive sum over all independent sets.
inline IndependencePolynomial indpoly_bruteforce(const OrientedGraph& g, const VertexWeights& w,
                                                 std::size_t cap = kDefaultEnumerationCap) {
    detail::check_weights(g, w);
    std::vector<double> c(g.size() + 1, 0.0);
    std::size_t alpha = 0;
    for_each_independent_set(
        g,
        [&](const std::vector<std::size_t>& s) {
            double p = 1.0;
            for (auto v : s) p *= w[v];
            c[s.size()] += p;
            alpha = std::max(alpha, s.size());
        },
        cap);
    // Length alpha+1 even if the top coefficient cancels.
    c.resize(alpha + 1);
    return {std::move(c)};
}

/// Clique recursion along a perfect elimination ordering:
///   Z_G = Z_{G \ K} + x sum_{u in K} w_u Z_{G \ N[u]},  K = N[v] for the last
/// PEO vertex v of the current residual graph, memoized on the residual set.
inline IndependencePolynomial indpoly_chordal(const OrientedGraph& g, const VertexWeights& w) {
    detail::check_weights(g, w);
    auto peo = perfect_elimination_ordering(g);
    if (!peo) throw PreconditionError("indpoly_chordal: underlying graph is not chordal");
    const auto pos = positions_of(peo->order, g.size());

    std::unordered_map<Bitset, std::vector<double>, BitsetHash> memo;
    auto solve = [&](auto&& self, const Bitset& rest) -> std::vector<double> {
        if (rest.none()) return {1.0};
        if (auto it = memo.find(rest); it != memo.end()) return it->second;
        std::size_t v = rest.first();
        for (auto u = rest.first(); u < rest.size(); u = rest.next(u))
            if (pos[u] > pos[v]) v = u;
        Bitset clique = g.closed_neighbourhood(v);
        clique &= rest;

        Bitset without_clique = rest;
        without_clique.subtract(clique);
        std::vector<double> out = self(self, without_clique);
        for (auto u = clique.first(); u < clique.size(); u = clique.next(u)) {
            Bitset r = rest;
            r.subtract(g.closed_neighbourhood(u));
            const auto sub = self(self, r);
            if (out.size() < sub.size() + 1) out.resize(sub.size() + 1, 0.0);
            for (std::size_t i = 0; i < sub.size(); ++i) out[i + 1] += w[u] * sub[i];
        }
        memo.emplace(rest, out);
        return out;
    };
    return {solve(solve, g.all_vertices())};
}

/// Chordal recursion when a PEO exists, exhaustive enumeration otherwise.
inline IndependencePolynomial independence_polynomial(const OrientedGraph& g, const VertexWeights& w) {
    if (perfect_elimination_ordering(g)) return indpoly_chordal(g, w);
    return indpoly_bruteforce(g, w);
}

/// Weights restricted to the vertices of induced_subgraph(g, subset).
inline VertexWeights restrict_weights(const VertexWeights& w, const std::vector<std::size_t>& subset) {
    VertexWeights out;
    for (auto v : subset) out.push_back(w.at(v));
    return out;
}

}  // namespace pfsolve
