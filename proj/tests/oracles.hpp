#pragma once

// Independent reference implementations used only by the tests.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "pfsolve.hpp"

namespace oracle {

using pfsolve::cplx;
using pfsolve::Matrix;

inline Matrix shift(int d) {
    Matrix x = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
    return x;
}

inline Matrix clock(int d) {
    Matrix z = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) z(k, k) = std::polar(1.0, 2 * M_PI * k / d);
    return z;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix power(const Matrix& m, int e) {
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < e; ++i) out = out * m;
    return out;
}

/// omega^{phase2/2} (x) X^a Z^b via Kronecker products of clock/shift matrices.
inline Matrix naive_dense(const pfsolve::WeylLabel& u) {
    const int d = u.d;
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t l = 0; l < u.sites(); ++l) out = kron(out, power(shift(d), u.x[l]) * power(clock(d), u.z[l]));
    return std::polar(1.0, M_PI * u.phase2 / d) * out;
}

inline pfsolve::WeylLabel random_label(std::mt19937_64& rng, int d, int n, bool with_phase = true) {
    std::uniform_int_distribution<int> e(0, d - 1), ph(0, 2 * d - 1);
    std::vector<int> x(n), z(n);
    for (int i = 0; i < n; ++i) {
        x[i] = e(rng);
        z[i] = e(rng);
    }
    return pfsolve::WeylLabel(d, x, z, with_phase ? ph(rng) : 0);
}

/// Uniformly random orientation of a G(n, p) graph.
inline pfsolve::OrientedGraph random_oriented(std::mt19937_64& rng, std::size_t n, double p) {
    auto g = pfsolve::OrientedGraph::with_size(n);
    std::bernoulli_distribution edge(p), dir(0.5);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (edge(rng)) dir(rng) ? g.add_arc(u, v) : g.add_arc(v, u);
    return g;
}

/// Oriented graph number `code` in base 3 over the pairs (u < v): 0 none, 1 u->v, 2 v->u.
inline pfsolve::OrientedGraph oriented_from_code(std::size_t n, std::uint64_t code) {
    auto g = pfsolve::OrientedGraph::with_size(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const auto t = code % 3;
            code /= 3;
            if (t == 1) g.add_arc(u, v);
            if (t == 2) g.add_arc(v, u);
        }
    return g;
}

/// Random chordal graph: each new vertex joins a random clique of the current graph.
inline pfsolve::OrientedGraph random_chordal(std::mt19937_64& rng, std::size_t n) {
    auto g = pfsolve::OrientedGraph::with_size(n);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> pick(0, v - 1);
        if (coin(rng) && coin(rng)) continue;  // sometimes start a new component
        std::vector<std::size_t> clique{pick(rng)};
        std::vector<std::size_t> order(v);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (auto w : order) {
            if (w == clique[0] || !coin(rng)) continue;
            if (std::all_of(clique.begin(), clique.end(), [&](std::size_t c) { return g.adjacent(c, w); })) clique.push_back(w);
        }
        for (auto c : clique) coin(rng) ? g.add_arc(c, v) : g.add_arc(v, c);
    }
    return g;
}

/// Brute-force switching feasibility over all subsets.
inline bool brute_switchable(const pfsolve::OrientedGraph& g) {
    const std::size_t n = g.size();
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        pfsolve::Bitset s(n);
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.set(i);
        if (pfsolve::is_dipath_oriented(pfsolve::apply_switching(g, s)).dipath_oriented) return true;
    }
    return false;
}

/// Some permutation of the vertices is an indifference ordering.
inline bool brute_indifference(const pfsolve::OrientedGraph& g) {
    std::vector<std::size_t> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (pfsolve::is_indifference_ordering(g, perm)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Some permutation is an oriented PEO (clique of earlier neighbours, all pointing in).
inline bool brute_oriented_peo(const pfsolve::OrientedGraph& g) {
    std::vector<std::size_t> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (pfsolve::is_perfect_elimination_ordering(g, perm) && pfsolve::is_forward_oriented(g, perm)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Sorted (re, im) copy.
inline std::vector<cplx> sorted(std::vector<cplx> v) {
    pfsolve::sort_complex(v);
    return v;
}

/// Claw-frustration control: centre Z0 Z1 Z2, leaves X0, X1, X2 (d = 3).
inline pfsolve::Hamiltonian claw_hamiltonian() {
    const pfsolve::QuditDims dims(3, 3);
    std::vector<pfsolve::HamTerm> t;
    t.push_back({"c", pfsolve::WeylLabel(3, {0, 0, 0}, {1, 1, 1}), 1.0});
    t.push_back({"l0", pfsolve::WeylLabel::single(dims, 0, 1, 0), 0.9});
    t.push_back({"l1", pfsolve::WeylLabel::single(dims, 1, 1, 0), 1.1});
    t.push_back({"l2", pfsolve::WeylLabel::single(dims, 2, 1, 0), 0.8});
    return pfsolve::Hamiltonian(dims, t);
}

}  // namespace oracle
