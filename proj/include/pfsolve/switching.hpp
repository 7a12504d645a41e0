#pragma once

// Deciding whether an oriented graph can be dipath oriented by switching.
//
// Every induced path u - v - w gives one equation over GF(2):
//     s_u + s_w = x_(u,v) + x_(v,w)
// where x_(a,b) = 1 iff the edge is oriented a -> b and s_a = 1 iff vertex a
// is switched. The path is a dipath iff x_(u,v) + x_(v,w) = 0 after switching,
// and switching at u or w flips exactly one of the two edges.

#include <cstddef>
#include <optional>
#include <vector>

#include "pfsolve/bitset.hpp"
#include "pfsolve/graph.hpp"
#include "pfsolve/graph_algorithms.hpp"

namespace pfsolve {

struct SwitchingEquation {
    std::size_t u = 0, v = 0, w = 0;  // the induced path, v in the middle
    bool rhs = false;                 // x_(u,v) + x_(v,w)
};

struct SwitchingSolution {
    bool feasible = false;
    std::vector<std::size_t> switch_set;           // canonical solution, free variables = 0
    std::vector<SwitchingEquation> certificate;    // equations summing to 0 = 1 when infeasible
    std::size_t equation_count = 0;
    std::size_t free_variables = 0;
};

inline std::vector<SwitchingEquation> switching_equations(const OrientedGraph& g) {
    std::vector<SwitchingEquation> eqs;
    for_each_induced_p2(g, [&](std::size_t u, std::size_t v, std::size_t w) {
        eqs.push_back({u, v, w, g.has_arc(u, v) != g.has_arc(v, w)});
    });
    return eqs;
}

namespace detail {

struct Gf2System {
    std::vector<Bitset> rows;     // coefficient rows over the switch variables
    std::vector<bool> rhs;
    std::vector<Bitset> origin;   // which original equations were combined
    std::vector<std::size_t> pivot_col;  // per reduced row
    std::size_t rank = 0;
    std::optional<std::size_t> inconsistent_row;
};

/// Gauss-Jordan elimination to reduced row echelon form.
inline Gf2System eliminate(const std::vector<SwitchingEquation>& eqs, std::size_t n_vars) {
    Gf2System sys;
    const std::size_t m = eqs.size();
    for (std::size_t i = 0; i < m; ++i) {
        Bitset r(n_vars);
        r.flip(eqs[i].u);
        r.flip(eqs[i].w);
        sys.rows.push_back(std::move(r));
        sys.rhs.push_back(eqs[i].rhs);
        Bitset o(m);
        o.set(i);
        sys.origin.push_back(std::move(o));
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < n_vars && r < m; ++col) {
        std::size_t piv = m;
        for (std::size_t i = r; i < m; ++i)
            if (sys.rows[i].test(col)) {
                piv = i;
                break;
            }
        if (piv == m) continue;
        std::swap(sys.rows[r], sys.rows[piv]);
        std::swap(sys.origin[r], sys.origin[piv]);
        {
            bool tmp = sys.rhs[r];
            sys.rhs[r] = sys.rhs[piv];
            sys.rhs[piv] = tmp;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || !sys.rows[i].test(col)) continue;
            sys.rows[i] ^= sys.rows[r];
            sys.origin[i] ^= sys.origin[r];
            sys.rhs[i] = sys.rhs[i] != sys.rhs[r];
        }
        sys.pivot_col.push_back(col);
        ++r;
    }
    sys.rank = r;
    for (std::size_t i = r; i < m; ++i)
        if (sys.rhs[i]) {
            sys.inconsistent_row = i;
            break;
        }
    return sys;
}

inline std::vector<std::size_t> free_columns(const Gf2System& sys, std::size_t n_vars) {
    std::vector<bool> is_pivot(n_vars, false);
    for (auto c : sys.pivot_col) is_pivot[c] = true;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < n_vars; ++c)
        if (!is_pivot[c]) out.push_back(c);
    return out;
}

inline Bitset back_substitute(const Gf2System& sys, std::size_t n_vars, const Bitset& free_assignment) {
    Bitset s = free_assignment;
    for (std::size_t i = 0; i < sys.rank; ++i) {
        Bitset row = sys.rows[i];
        row.reset(sys.pivot_col[i]);
        row &= free_assignment;
        const bool val = sys.rhs[i] != (row.count() % 2 == 1);
        if (val) s.set(sys.pivot_col[i]);
    }
    (void)n_vars;
    return s;
}

}  // namespace detail

/// Finds a switching set making g dipath oriented, or an inconsistent subset
/// of the path equations proving none exists.
inline SwitchingSolution switching_solve(const OrientedGraph& g) {
    const std::size_t n = g.size();
    const auto eqs = switching_equations(g);
    const auto sys = detail::eliminate(eqs, n);
    SwitchingSolution out;
    out.equation_count = eqs.size();
    if (sys.inconsistent_row) {
        for (auto i : sys.origin[*sys.inconsistent_row].indices()) out.certificate.push_back(eqs[i]);
        return out;
    }
    out.feasible = true;
    out.free_variables = n - sys.rank;
    out.switch_set = detail::back_substitute(sys, n, Bitset(n)).indices();
    return out;
}

/// Up to `cap` switching sets (all of them when 2^free <= cap), in order of
/// the binary counter over free variables.
inline std::vector<std::vector<std::size_t>> switching_solutions(const OrientedGraph& g, std::size_t cap = 1024) {
    const std::size_t n = g.size();
    const auto sys = detail::eliminate(switching_equations(g), n);
    std::vector<std::vector<std::size_t>> out;
    if (sys.inconsistent_row) return out;
    const auto free = detail::free_columns(sys, n);
    for (std::size_t mask = 0; out.size() < cap; ++mask) {
        if (free.size() < 64 && mask >> free.size()) break;
        Bitset assign(n);
        for (std::size_t b = 0; b < free.size() && b < 64; ++b)
            if ((mask >> b) & 1U) assign.set(free[b]);
        out.push_back(detail::back_substitute(sys, n, assign).indices());
    }
    return out;
}

}  // namespace pfsolve
