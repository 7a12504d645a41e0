#pragma once

// Generators for three one-dimensional qudit chains. Sites are flat indices
// 0..n_sites-1.

#include <cmath>
#include <string>
#include <vector>

#include "pfsolve/errors.hpp"
#include "pfsolve/hamiltonian.hpp"
#include "pfsolve/weyl.hpp"

namespace pfsolve {

namespace detail {

inline void require_coupling(double c, const std::string& name) {
    if (!std::isfinite(c) || std::abs(c) < kMinCoefficient)
        throw PreconditionError("coupling " + name + " must be finite and nonzero");
}

}  // namespace detail

/// sum_j a Z_j^dag Z_{j+1} + sum_j b X_j on n+1 sites. Terms are interleaved
/// x1, zz1, x2, ..., x_{n+1}, so the frustration graph is a dipath in term order.
inline Hamiltonian gen_baxter(int n, int d, double a, double b) {
    if (n < 1) throw PreconditionError("baxter: n must be >= 1");
    detail::require_coupling(a, "a");
    detail::require_coupling(b, "b");
    const QuditDims dims(d, n + 1);
    std::vector<HamTerm> terms;
    for (int j = 0; j <= n; ++j) {
        terms.push_back({"x" + std::to_string(j + 1), WeylLabel::single(dims, j, 1, 0), b});
        if (j == n) break;
        auto zz = WeylLabel::identity(dims);
        zz.z[static_cast<std::size_t>(j)] = d - 1;
        zz.z[static_cast<std::size_t>(j + 1)] = 1;
        terms.push_back({"zz" + std::to_string(j + 1), zz, a});
    }
    return Hamiltonian(dims, std::move(terms));
}

/// sum_j a_j X_j ... X_{j+p-1} Z_{j+p} on n+p sites, ids t1..tn.
inline Hamiltonian gen_alcaraz_pimenta(int n, int p, int d, const std::vector<double>& a) {
    if (n < 1) throw PreconditionError("alcaraz_pimenta: n must be >= 1");
    if (p < 1) throw PreconditionError("alcaraz_pimenta: p must be >= 1");
    if (a.size() != static_cast<std::size_t>(n))
        throw PreconditionError("alcaraz_pimenta: expected " + std::to_string(n) + " couplings, got " + std::to_string(a.size()));
    const QuditDims dims(d, n + p);
    std::vector<HamTerm> terms;
    for (int j = 0; j < n; ++j) {
        detail::require_coupling(a[static_cast<std::size_t>(j)], "a" + std::to_string(j + 1));
        auto w = WeylLabel::identity(dims);
        for (int s = j; s < j + p; ++s) w.x[static_cast<std::size_t>(s)] = 1;
        w.z[static_cast<std::size_t>(j + p)] = 1;
        terms.push_back({"t" + std::to_string(j + 1), w, a[static_cast<std::size_t>(j)]});
    }
    return Hamiltonian(dims, std::move(terms));
}

struct ThreeCouplingParams {
    double a = 1, b = 1, c = 1, dd = 1, e = 1, f = 1;
};

/// d = 3 chain with sites j, j+1/3, j+2/3 at flat indices 3(j-1), 3(j-1)+1,
/// 3(j-1)+2 and the final site n+1 at 3n. Per cell j, in order:
///   a  X_j Z^dag_{j+1/3}
///   b  w (X Z^dag)_{j+1/3} Z_{j+2/3}
///   c  X_{j+1/3} Z_{j+2/3}
///   d  Z^dag_{j+1/3} X_{j+2/3}
///   e  w^{1/2} Z^dag_{j+1/3} (X Z)_{j+2/3}
///   f  Z_{j+2/3} Z^dag_{j+1}
/// with ids a1, b1, ..., f1, a2, ...
inline Hamiltonian gen_three_coupling(int n, const ThreeCouplingParams& cp) {
    if (n < 1) throw PreconditionError("three_coupling: n must be >= 1");
    detail::require_coupling(cp.a, "a");
    detail::require_coupling(cp.b, "b");
    detail::require_coupling(cp.c, "c");
    detail::require_coupling(cp.dd, "d");
    detail::require_coupling(cp.e, "e");
    detail::require_coupling(cp.f, "f");
    const int d = 3;
    const QuditDims dims(d, 3 * n + 1);
    std::vector<HamTerm> terms;
    auto label = [&](std::vector<std::pair<int, int>> xs, std::vector<std::pair<int, int>> zs, int phase2) {
        auto w = WeylLabel::identity(dims);
        for (auto [s, e] : xs) w.x[static_cast<std::size_t>(s)] = e;
        for (auto [s, e] : zs) w.z[static_cast<std::size_t>(s)] = e;
        w.phase2 = phase2;
        return w;
    };
    for (int j = 0; j < n; ++j) {
        const int s0 = 3 * j, s1 = s0 + 1, s2 = s0 + 2, s3 = s0 + 3;
        const std::string cell = std::to_string(j + 1);
        terms.push_back({"a" + cell, label({{s0, 1}}, {{s1, 2}}, 0), cp.a});
        terms.push_back({"b" + cell, label({{s1, 1}}, {{s1, 2}, {s2, 1}}, 2), cp.b});
        terms.push_back({"c" + cell, label({{s1, 1}}, {{s2, 1}}, 0), cp.c});
        terms.push_back({"d" + cell, label({{s2, 1}}, {{s1, 2}}, 0), cp.dd});
        terms.push_back({"e" + cell, label({{s2, 1}}, {{s1, 2}, {s2, 1}}, 1), cp.e});
        terms.push_back({"f" + cell, label({}, {{s2, 1}, {s3, 2}}, 0), cp.f});
    }
    return Hamiltonian(dims, std::move(terms));
}

}  // namespace pfsolve
