#pragma once

// Dense-matrix oracle: charges Q^(i), transfer operator T(x), simplicial mode,
// parafermionic modes psi_{p,k}, projectors P_{r,k}, and numerical checks of
// the identities they satisfy.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "pfsolve/errors.hpp"
#include "pfsolve/graph.hpp"
#include "pfsolve/graph_algorithms.hpp"
#include "pfsolve/hamiltonian.hpp"
#include "pfsolve/indpoly.hpp"
#include "pfsolve/linalg.hpp"
#include "pfsolve/spectrum.hpp"
#include "pfsolve/weyl.hpp"

namespace pfsolve {

inline constexpr double kDefaultCheckTolerance = 1e-8;
inline constexpr double kDefaultSpectrumTolerance = 1e-6;

/// d^n cap for dense work; PFSOLVE_DENSE_CAP overrides the default.
inline std::size_t dense_cap() {
    if (const char* s = std::getenv("PFSOLVE_DENSE_CAP"); s && *s) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultDenseCap;
}

struct CheckReport {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
    nlohmann::json details = nlohmann::json::object();
};

inline Matrix hamiltonian_matrix(const Hamiltonian& h, std::size_t cap = dense_cap()) {
    const auto dim = static_cast<Eigen::Index>(h.dims().hilbert_dim(cap));
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto& t : h.terms()) accumulate_label(m, t.label, h.dims(), t.coeff, cap);
    return m;
}

/// Q^(0..alpha): Q^(i) = sum over independent sets S of size i of h_S.
struct Charges {
    std::vector<Matrix> q;

    std::size_t alpha() const { return q.size() - 1; }
    Eigen::Index dim() const { return q.front().rows(); }
};

namespace detail {

/// Exact label and scalar of h_S (factors in increasing vertex index).
inline std::pair<WeylLabel, cplx> independent_product(const Hamiltonian& h, const std::vector<std::size_t>& s) {
    WeylLabel acc = WeylLabel::identity(h.dims());
    cplx scalar = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& t = h.term(s[i]);
        for (std::size_t j = 0; j < i; ++j)
            if (symplectic_phase(h.term(s[j]).label, t.label) != 0)
                throw NumericalError("independent set contains non-commuting terms '" + h.term(s[j]).id + "', '" + t.id + "'");
        auto prod = multiply_labels(acc, t.label);
        acc = std::move(prod.label);
        scalar *= prod.scalar.value() * t.coeff;
    }
    return {acc, scalar};
}

}  // namespace detail

inline Charges compute_charges(const Hamiltonian& h, const OrientedGraph& g, std::size_t cap = dense_cap()) {
    if (g.size() != h.size()) throw DimensionError("graph and Hamiltonian have different vertex counts");
    const auto dim = static_cast<Eigen::Index>(h.dims().hilbert_dim(cap));
    Charges c;
    c.q.push_back(Matrix::Identity(dim, dim));
    for_each_independent_set(g, [&](const std::vector<std::size_t>& s) {
        if (s.empty()) return;
        while (c.q.size() <= s.size()) c.q.push_back(Matrix::Zero(dim, dim));
        auto [label, scalar] = detail::independent_product(h, s);
        accumulate_label(c.q[s.size()], label, h.dims(), scalar, cap);
    });
    return c;
}

inline Matrix charge_matrix(const Hamiltonian& h, const OrientedGraph& g, std::size_t i, std::size_t cap = dense_cap()) {
    auto c = compute_charges(h, g, cap);
    if (i > c.alpha())
        throw PreconditionError("charge order " + std::to_string(i) + " exceeds alpha = " + std::to_string(c.alpha()));
    return std::move(c.q[i]);
}

/// T(x) = sum_k (-x)^k Q^(k).
inline Matrix transfer_matrix(const Charges& c, cplx x) {
    Matrix t = c.q[0];
    cplx coef = 1.0;
    for (std::size_t k = 1; k < c.q.size(); ++k) {
        coef *= -x;
        t += coef * c.q[k];
    }
    return t;
}

inline Matrix transfer_matrix(const Hamiltonian& h, const OrientedGraph& g, cplx x, std::size_t cap = dense_cap()) {
    return transfer_matrix(compute_charges(h, g, cap), x);
}

/// d/d eps of T(c / eps) = sum_k (-c)^k (-k) eps^{-k-1} Q^(k).
inline Matrix transfer_derivative(const Charges& ch, cplx c, cplx eps) {
    Matrix t = Matrix::Zero(ch.dim(), ch.dim());
    for (std::size_t k = 1; k < ch.q.size(); ++k) {
        const double kk = static_cast<double>(k);
        t += std::pow(-c, kk) * (-kk) * std::pow(eps, -kk - 1.0) * ch.q[k];
    }
    return t;
}

namespace detail {

inline bool is_prime(int d) {
    if (d < 2) return false;
    for (int p = 2; p * p <= d; ++p)
        if (d % p == 0) return false;
    return true;
}

inline int inverse_mod(int a, int p) {
    for (int b = 1; b < p; ++b)
        if (mod(static_cast<long long>(a) * b, p) == 1) return b;
    throw NumericalError("no inverse mod " + std::to_string(p));
}

/// Solves A y = rhs over Z_p (p prime), free variables set to 0.
inline std::optional<std::vector<int>> solve_mod_prime(std::vector<std::vector<int>> a, std::vector<int> rhs, int p) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(rhs[piv], rhs[r]);
        const int inv = inverse_mod(a[r][c], p);
        for (auto& e : a[r]) e = mod(static_cast<long long>(e) * inv, p);
        rhs[r] = mod(static_cast<long long>(rhs[r]) * inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const int f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(a[i][j] - static_cast<long long>(f) * a[r][j], p);
            rhs[i] = mod(rhs[i] - static_cast<long long>(f) * rhs[r], p);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    std::vector<int> y(cols, 0);
    for (std::size_t i = 0; i < r; ++i) y[pivot_col[i]] = rhs[i];
    return y;
}

}  // namespace detail

/// Label chi with phase(u, chi) = 0 for u != v and phase(v, chi) = 1, where v
/// is the last vertex of `ordering`.
inline WeylLabel find_simplicial_mode(const Hamiltonian& h, const OrientedGraph& g, const EliminationOrdering& ordering) {
    if (ordering.order.size() != g.size() || g.size() != h.size())
        throw DimensionError("ordering does not cover the Hamiltonian's terms");
    const std::size_t v = ordering.order.back();
    const int d = h.dims().d;
    const int n = h.dims().n;
    // phase(u, c) = z_u . x_c - x_u . z_c; unknowns (x_c, z_c).
    std::vector<std::vector<int>> a;
    std::vector<int> rhs;
    for (std::size_t u = 0; u < h.size(); ++u) {
        const auto& l = h.term(u).label;
        std::vector<int> row(static_cast<std::size_t>(2 * n));
        for (int s = 0; s < n; ++s) {
            row[static_cast<std::size_t>(s)] = l.z[static_cast<std::size_t>(s)];
            row[static_cast<std::size_t>(n + s)] = mod(-l.x[static_cast<std::size_t>(s)], d);
        }
        a.push_back(std::move(row));
        rhs.push_back(u == v ? 1 : 0);
    }
    auto make = [&](const std::vector<int>& y) {
        return WeylLabel(d, std::vector<int>(y.begin(), y.begin() + n), std::vector<int>(y.begin() + n, y.end()), 0);
    };
    if (detail::is_prime(d)) {
        auto y = detail::solve_mod_prime(a, rhs, d);
        if (!y) throw PreconditionError("no simplicial mode exists for last vertex '" + h.term(v).id + "'");
        return make(*y);
    }
    if (n > 3) throw UnsupportedError("simplicial mode for composite d = " + std::to_string(d) + " needs n <= 3");
    std::vector<int> y(static_cast<std::size_t>(2 * n), 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
            long long s = 0;
            for (std::size_t j = 0; j < y.size(); ++j) s += static_cast<long long>(a[i][j]) * y[j];
            ok = mod(s, d) == rhs[i];
        }
        if (ok) return make(y);
        std::size_t j = y.size();
        while (j > 0 && ++y[j - 1] == d) y[--j] = 0;
        if (j == 0) break;
    }
    throw PreconditionError("no simplicial mode exists for last vertex '" + h.term(v).id + "'");
}

struct ModeSet {
    WeylLabel chi;
    std::size_t last_vertex = 0;
    SingleParticleEnergies eps;
    std::vector<cplx> norm;                      // N_k
    std::vector<cplx> dz;                        // dZ(-eps^{-d})/deps at eps_k
    std::vector<std::vector<Matrix>> psi;        // [k][p]
    std::vector<std::vector<Matrix>> proj;       // [k][r], product form
    std::vector<std::vector<Matrix>> proj_closed;  // [k][r], closed form
};

/// Builds psi_{p,k} and P_{r,k}. `norm_branch` multiplies every N_k by omega^branch.
inline ModeSet build_modes(const Hamiltonian& h, const OrientedGraph& g, const SingleParticleEnergies& eps,
                           int norm_branch = 0, std::size_t cap = dense_cap()) {
    auto ordering = is_oriented_indifference(g);
    if (!ordering) throw PreconditionError("frustration graph is not an oriented indifference graph");
    if (eps.degenerate) throw NumericalError("single-particle energies are degenerate; modes are ill-defined");
    const int d = h.dims().d;
    const auto weights = weights_for_spectrum(h);
    const auto z = independence_polynomial(g, weights);
    if (z.degree() != eps.size()) throw DimensionError("energies do not match the independence polynomial");

    ModeSet m;
    m.eps = eps;
    m.last_vertex = ordering->order.back();
    m.chi = find_simplicial_mode(h, g, *ordering);

    std::vector<std::size_t> rest;
    for (std::size_t u = 0; u < g.size(); ++u)
        if (u != m.last_vertex) rest.push_back(u);
    const IndependencePolynomial z_rest =
        rest.empty() ? IndependencePolynomial{} : independence_polynomial(induced_subgraph(g, rest), restrict_weights(weights, rest));

    const Charges ch = compute_charges(h, g, cap);
    const Matrix chi = dense_label(m.chi, h.dims(), cap);
    const cplx omega = root_power(1, d);
    const double dd = d;

    for (std::size_t k = 0; k < eps.size(); ++k) {
        const cplx e = eps.eps(k);
        const cplx y = -std::pow(e, -dd);
        const cplx dz = z.derivative(y) * dd * std::pow(e, -dd - 1.0);
        if (std::abs(dz) < 1e-8 * std::max(1.0, z.abs_sum()))
            throw NumericalError("dZ/deps vanishes at eps_" + std::to_string(k));
        const cplx inner = dd * z_rest.evaluate(y) * std::pow(e * dz, dd - 1.0);
        const cplx nk = (1.0 - omega) * principal_root(inner, d) * root_power(norm_branch, d);
        if (std::abs(nk) < 1e-300) throw NumericalError("N_" + std::to_string(k) + " vanishes");
        m.dz.push_back(dz);
        m.norm.push_back(nk);

        // tp[p] = T(eps^{-1} omega^{-p}); after[p] = prod_{m=1}^{d-1} tp[p+m].
        std::vector<Matrix> tp, after;
        for (int p = 0; p < d; ++p) tp.push_back(transfer_matrix(ch, root_power(-p, d) / e));
        for (int p = 0; p < d; ++p) {
            Matrix acc = tp[static_cast<std::size_t>(mod(p + 1, d))];
            for (int q = 2; q < d; ++q) acc = acc * tp[static_cast<std::size_t>(mod(p + q, d))];
            after.push_back(std::move(acc));
        }
        std::vector<Matrix> psi;
        for (int p = 0; p < d; ++p) psi.push_back((tp[static_cast<std::size_t>(p)] * chi * after[static_cast<std::size_t>(p)]) / nk);

        std::vector<Matrix> proj, closed;
        for (int r = 0; r < d; ++r) {
            Matrix acc = psi[static_cast<std::size_t>(mod(r - 1, d))];
            for (int p = 2; p <= d; ++p) acc = acc * psi[static_cast<std::size_t>(mod(r - p, d))];
            proj.push_back(std::move(acc));
            closed.push_back(after[static_cast<std::size_t>(r)] * transfer_derivative(ch, root_power(-r, d), e) / dz);
        }
        m.psi.push_back(std::move(psi));
        m.proj.push_back(std::move(proj));
        m.proj_closed.push_back(std::move(closed));
    }
    return m;
}

namespace detail {

inline CheckReport finish(std::string name, double residual, double tol, nlohmann::json details = nlohmann::json::object()) {
    CheckReport r;
    r.name = std::move(name);
    r.residual = residual;
    r.tolerance = tol;
    r.pass = std::isfinite(residual) && residual <= tol;
    r.details = std::move(details);
    return r;
}

inline double safe_ratio(double num, double den) { return den > 0 ? num / den : num; }

/// Scale for products of two operators: |A|_F |B|_F / sqrt(dim).
inline double product_scale(const Matrix& a, const Matrix& b) {
    return a.norm() * b.norm() / std::sqrt(static_cast<double>(a.rows()));
}

}  // namespace detail

inline CheckReport check_theorem1(const Charges& c, double tol = kDefaultCheckTolerance) {
    double worst = 0.0;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < c.q.size(); ++i)
        for (std::size_t j = i + 1; j < c.q.size(); ++j) {
            const double r = detail::safe_ratio(commutator(c.q[i], c.q[j]).norm(), c.q[i].norm() * c.q[j].norm());
            if (r > worst) {
                worst = r;
                wi = i;
                wj = j;
            }
        }
    return detail::finish("theorem1", worst, tol, {{"alpha", c.alpha()}, {"worst_pair", {wi, wj}}});
}

inline CheckReport check_theorem1(const Hamiltonian& h, const OrientedGraph& g, double tol = kDefaultCheckTolerance) {
    return check_theorem1(compute_charges(h, g), tol);
}

inline CheckReport check_lemma1(const Hamiltonian& h, const OrientedGraph& g, std::uint64_t seed, int trials = 5,
                                double tol = kDefaultCheckTolerance) {
    const int d = h.dims().d;
    const Charges c = compute_charges(h, g);
    const auto z = independence_polynomial(g, weights_for_spectrum(h));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.1, 2.0), angle(-std::numbers::pi, std::numbers::pi);
    const Matrix id = Matrix::Identity(c.dim(), c.dim());
    double worst = 0.0, worst_rel = 0.0, worst_order = 0.0;
    nlohmann::json samples = nlohmann::json::array();
    for (int t = 0; t < trials; ++t) {
        const cplx u = std::polar(radius(rng), angle(rng));
        std::vector<Matrix> factors;
        for (int m = 0; m < d; ++m) factors.push_back(transfer_matrix(c, u * root_power(-m, d)));
        Matrix prod = factors[0];
        for (int m = 1; m < d; ++m) prod = prod * factors[static_cast<std::size_t>(m)];
        // Order of the factors is immaterial when the transfer operators commute.
        Matrix rev = factors.back();
        for (int m = d - 2; m >= 0; --m) rev = rev * factors[static_cast<std::size_t>(m)];
        const cplx zv = z.evaluate(-std::pow(u, static_cast<double>(d)));
        const double res = (prod - zv * id).norm() / static_cast<double>(c.dim());
        worst = std::max(worst, res);
        worst_rel = std::max(worst_rel, detail::safe_ratio(res, std::abs(zv)));
        worst_order = std::max(worst_order, detail::safe_ratio((prod - rev).norm(), prod.norm()));
        samples.push_back({u.real(), u.imag()});
    }
    return detail::finish("lemma1", std::max(worst, worst_order), tol,
                          {{"trials", trials}, {"seed", seed}, {"identity_residual", worst},
                           {"relative_to_Z", worst_rel}, {"order_residual", worst_order}, {"u", samples}});
}

/// [H, psi_{p,k}] = (1 - w) w^{p+1} eps_k psi_{p,k}. For d >= 3 the modes built
/// here satisfy [H, psi_{p,k}] = (w - 1) w^p eps_k psi_{p,k} instead (the two
/// agree for d = 2); that residual is reported as "shifted_residual".
inline CheckReport check_lemma2(const Hamiltonian& h, const ModeSet& m, double tol = kDefaultCheckTolerance) {
    const int d = h.dims().d;
    const Matrix hm = hamiltonian_matrix(h);
    const cplx omega = root_power(1, d);
    double worst = 0.0, worst_shifted = 0.0;
    for (std::size_t k = 0; k < m.psi.size(); ++k)
        for (int p = 0; p < d; ++p) {
            const Matrix& psi = m.psi[k][static_cast<std::size_t>(p)];
            const Matrix lhs = commutator(hm, psi);
            const Matrix rhs = (1.0 - omega) * root_power(p + 1, d) * m.eps.eps(k) * psi;
            const Matrix alt = (omega - 1.0) * root_power(p, d) * m.eps.eps(k) * psi;
            worst = std::max(worst, detail::safe_ratio((lhs - rhs).norm(), std::max(lhs.norm(), rhs.norm())));
            worst_shifted = std::max(worst_shifted, detail::safe_ratio((lhs - alt).norm(), std::max(lhs.norm(), alt.norm())));
        }
    return detail::finish("lemma2", worst, tol,
                          {{"modes", m.psi.size() * static_cast<std::size_t>(d)}, {"shifted_residual", worst_shifted}});
}

inline CheckReport check_lemma3(const Hamiltonian& h, const ModeSet& m, double tol = kDefaultCheckTolerance) {
    const int d = h.dims().d;
    double worst_exchange = 0.0, worst_nilpotent = 0.0;
    std::size_t pairs = 0;
    for (std::size_t k = 0; k < m.psi.size(); ++k)
        for (std::size_t l = 0; l < m.psi.size(); ++l)
            for (int p = 0; p < d; ++p)
                for (int q = 0; q < d; ++q) {
                    const Matrix& a = m.psi[k][static_cast<std::size_t>(p)];
                    const Matrix& b = m.psi[l][static_cast<std::size_t>(q)];
                    if (k == l) {
                        if (mod(p - q - 1, d) == 0) continue;
                        worst_nilpotent = std::max(worst_nilpotent, detail::safe_ratio((a * b).norm(), detail::product_scale(a, b)));
                    } else {
                        const cplx ek = m.eps.eps(k), el = m.eps.eps(l);
                        const cplx c1 = root_power(p, d) * ek - root_power(q + 1, d) * el;
                        const cplx c2 = root_power(q, d) * el - root_power(p + 1, d) * ek;
                        const Matrix t1 = c1 * (a * b), t2 = c2 * (b * a);
                        const double den = std::max(t1.norm() + t2.norm(),
                                                    (std::abs(c1) + std::abs(c2)) * detail::product_scale(a, b));
                        worst_exchange = std::max(worst_exchange, detail::safe_ratio((t1 + t2).norm(), den));
                    }
                    ++pairs;
                }
    return detail::finish("lemma3", std::max(worst_exchange, worst_nilpotent), tol,
                          {{"pairs", pairs}, {"exchange_residual", worst_exchange}, {"same_mode_residual", worst_nilpotent}});
}

inline CheckReport check_lemma4(const Hamiltonian& h, const ModeSet& m, double tol = kDefaultCheckTolerance) {
    const int d = h.dims().d;
    double idem = 0.0, orth = 0.0, closed = 0.0;
    for (std::size_t k = 0; k < m.proj.size(); ++k)
        for (int r = 0; r < d; ++r) {
            const Matrix& pr = m.proj[k][static_cast<std::size_t>(r)];
            idem = std::max(idem, detail::safe_ratio((pr * pr - pr).norm(), pr.norm()));
            const Matrix& pc = m.proj_closed[k][static_cast<std::size_t>(r)];
            closed = std::max(closed, detail::safe_ratio((pr - pc).norm(), pc.norm()));
            for (int s = 0; s < d; ++s) {
                if (s == r) continue;
                const Matrix& ps = m.proj[k][static_cast<std::size_t>(s)];
                orth = std::max(orth, detail::safe_ratio((pr * ps).norm(), detail::product_scale(pr, ps)));
            }
        }
    return detail::finish("lemma4", std::max({idem, orth, closed}), tol,
                          {{"idempotence", idem}, {"orthogonality", orth}, {"closed_form", closed}});
}

inline CheckReport check_lemma5(const Hamiltonian& h, const ModeSet& m, double tol = kDefaultCheckTolerance) {
    const int d = h.dims().d;
    const Matrix hm = hamiltonian_matrix(h);
    Matrix sum = Matrix::Zero(hm.rows(), hm.cols());
    for (std::size_t k = 0; k < m.proj.size(); ++k)
        for (int r = 0; r < d; ++r) sum += root_power(r, d) * m.eps.eps(k) * m.proj[k][static_cast<std::size_t>(r)];
    return detail::finish("lemma5", detail::safe_ratio((hm - sum).norm(), hm.norm()), tol);
}

namespace detail {

using IntPoly = std::vector<long long>;  // ascending powers

inline void strip(IntPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

/// Quotient of a by monic b; throws if the division is not exact.
inline IntPoly divide_exact(IntPoly a, const IntPoly& b) {
    strip(a);
    if (a.size() < b.size()) throw NumericalError("cyclotomic division failed");
    IntPoly q(a.size() - b.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        const long long c = a[i + b.size() - 1];
        q[i] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
    }
    for (auto c : a)
        if (c != 0) throw NumericalError("cyclotomic division left a remainder");
    return q;
}

/// Remainder of a modulo monic b.
inline IntPoly remainder(IntPoly a, const IntPoly& b) {
    strip(a);
    for (std::size_t i = a.size(); i >= b.size(); --i) {
        const long long c = a[i - 1];
        const std::size_t shift = i - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    a.resize(b.size() - 1);
    return a;
}

inline IntPoly cyclotomic(int n) {
    IntPoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int e = 1; e < n; ++e)
        if (n % e == 0) p = divide_exact(p, cyclotomic(e));
    return p;
}

}  // namespace detail

/// Exact check that (-1)^l e_l(omega^0, omega^{-1}, ..., omega^{-(d-1)}) is 1
/// for l = 0, -1 for l = d, and 0 otherwise, by reducing the exponent-count
/// polynomial modulo the d-th cyclotomic polynomial; plus the float check
/// prod_{p=0}^{d-2} (1 - omega^{p+1}) = d.
inline CheckReport check_root_identities(int d, double tol = 1e-10) {
    if (d < 2 || d > 20) throw DimensionError("check_root_identities supports 2 <= d <= 20");
    const auto phi = detail::cyclotomic(d);
    bool exact = true;
    nlohmann::json failures = nlohmann::json::array();
    for (int l = 0; l <= d; ++l) {
        detail::IntPoly counts(static_cast<std::size_t>(d), 0);
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            if (std::popcount(mask) != l) continue;
            long long s = 0;
            for (int b = 0; b < d; ++b)
                if (mask >> b & 1u) s -= b;
            ++counts[static_cast<std::size_t>(mod(s, d))];
        }
        const long long sign = l % 2 ? -1 : 1;
        for (auto& c : counts) c *= sign;
        counts[0] -= l == 0 ? 1 : (l == d ? -1 : 0);
        const auto rem = detail::remainder(counts, phi);
        if (std::any_of(rem.begin(), rem.end(), [](long long c) { return c != 0; })) {
            exact = false;
            failures.push_back(l);
        }
    }
    cplx prod = 1.0;
    for (int p = 0; p <= d - 2; ++p) prod *= 1.0 - root_power(p + 1, d);
    const double res = std::abs(prod - static_cast<double>(d));
    auto r = detail::finish("root_identities", res, tol,
                            {{"d", d}, {"subset_sums_exact", exact}, {"failed_orders", failures}, {"product_residual", res}});
    r.pass = r.pass && exact;
    return r;
}

/// Predicted spectrum against dense eigenvalues; tolerance scales with max|eps|.
struct SpectrumCheck {
    CheckReport report;
    MatchReport match;
    SingleParticleEnergies eps;
};

inline SpectrumCheck check_spectrum(const Hamiltonian& h, const OrientedGraph& g, double tol = kDefaultSpectrumTolerance) {
    const auto z = independence_polynomial(g, weights_for_spectrum(h));
    SpectrumCheck out;
    out.eps = single_particle_energies(z, h.dims().d);
    const auto pred = full_spectrum(out.eps);
    const auto obs = eigenvalues(hamiltonian_matrix(h), dense_cap());
    double scale = 1.0;
    for (auto e : out.eps.values()) scale = std::max(scale, std::abs(e));
    out.match = match_spectra(pred, obs, tol * scale);
    out.report = detail::finish("spectrum", out.match.max_distance, tol * scale,
                                {{"alpha", pred.alpha}, {"predicted", out.match.predicted_count},
                                 {"observed", out.match.observed_count}, {"multiplicity", out.match.multiplicity},
                                 {"multiplicity_deviation", out.match.max_multiplicity_deviation},
                                 {"size_compatible", out.match.size_compatible}});
    out.report.pass = out.match.pass;
    return out;
}

}  // namespace pfsolve
