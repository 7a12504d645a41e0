#pragma once

// Single-particle energies from the roots of Z_G(-eps^{-d}) and the
// free-parafermion spectrum { sum_k omega^{x_k} eps_k : x in Z_d^alpha }.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "pfsolve/errors.hpp"
#include "pfsolve/indpoly.hpp"
#include "pfsolve/linalg.hpp"
#include "pfsolve/weyl.hpp"

namespace pfsolve {

/// Roots closer than this are reported as degenerate.
inline constexpr double kDegenerateRootGap = 1e-8;
inline constexpr std::size_t kDefaultSpectrumCap = 2'000'000;

/// Roots of sum_i c_i y^i: eigenvalues of the balanced companion matrix,
/// then two Newton steps (each kept only if it lowers |p(y)|).
inline std::vector<cplx> polynomial_roots(const std::vector<double>& c) {
    if (c.size() < 2) return {};
    const std::size_t deg = c.size() - 1;
    if (c[deg] == 0.0) throw NumericalError("polynomial_roots: leading coefficient is zero");
    Matrix comp = Matrix::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    for (std::size_t i = 1; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i)
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -c[i] / c[deg];
    auto roots = eigenvalues(comp, std::numeric_limits<std::size_t>::max());
    const IndependencePolynomial p{c};
    for (auto& y : roots) {
        for (int step = 0; step < 2; ++step) {
            const cplx dp = p.derivative(y);
            if (dp == cplx(0.0)) break;
            const cplx cand = y - p.evaluate(y) / dp;
            if (std::abs(p.evaluate(cand)) < std::abs(p.evaluate(y))) y = cand;
        }
    }
    return roots;
}

/// Principal d-th root: |z|^{1/d} exp(i arg(z)/d), arg in (-pi, pi].
inline cplx principal_root(cplx z, int d) { return std::polar(std::pow(std::abs(z), 1.0 / d), std::arg(z) / d); }

struct SingleParticleEnergies {
    int d = 2;
    std::vector<cplx> principal;       // principal d-th root of -1/y_k
    std::vector<int> branch;           // eps_k = omega^{branch_k} * principal_k
    std::vector<cplx> roots;           // y_k with Z(y_k) = 0, y_k = -eps_k^{-d}
    std::vector<double> root_residuals;  // |Z(y_k)| after polishing
    double min_root_gap = std::numeric_limits<double>::infinity();
    bool degenerate = false;

    std::size_t size() const { return principal.size(); }

    cplx eps(std::size_t k) const { return root_power(branch.at(k), d) * principal.at(k); }

    std::vector<cplx> values() const {
        std::vector<cplx> out;
        for (std::size_t k = 0; k < size(); ++k) out.push_back(eps(k));
        return out;
    }

    /// Same energies with eps_k replaced by omega^steps eps_k.
    SingleParticleEnergies rotated(std::size_t k, int steps = 1) const {
        auto out = *this;
        out.branch.at(k) = mod(out.branch.at(k) + steps, d);
        return out;
    }
};

/// eps_k with Z(-eps_k^{-d}) = 0, sorted by (|eps|, arg eps) on the principal branch.
inline SingleParticleEnergies single_particle_energies(const IndependencePolynomial& z, int d) {
    if (d < 2) throw DimensionError("single_particle_energies: d must be >= 2");
    if (z.coeffs.empty() || z.coeffs[0] != 1.0) throw PreconditionError("independence polynomial must have c_0 = 1");
    if (z.degree() < 1) throw PreconditionError("independence polynomial has degree 0");
    auto ys = polynomial_roots(z.coeffs);

    struct Entry {
        cplx y, eps;
    };
    std::vector<Entry> entries;
    for (auto y : ys) entries.push_back({y, principal_root(-1.0 / y, d)});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        const double ma = std::abs(a.eps), mb = std::abs(b.eps);
        if (ma != mb) return ma < mb;
        return std::arg(a.eps) < std::arg(b.eps);
    });

    SingleParticleEnergies out;
    out.d = d;
    for (const auto& e : entries) {
        out.roots.push_back(e.y);
        out.principal.push_back(e.eps);
        out.branch.push_back(0);
        out.root_residuals.push_back(std::abs(z.evaluate(e.y)));
    }
    for (std::size_t i = 0; i < ys.size(); ++i)
        for (std::size_t j = i + 1; j < ys.size(); ++j)
            out.min_root_gap = std::min(out.min_root_gap, std::abs(ys[i] - ys[j]));
    out.degenerate = out.min_root_gap < kDegenerateRootGap;
    return out;
}

struct PredictedSpectrum {
    int d = 2;
    std::size_t alpha = 0;
    std::vector<cplx> energies;
    bool truncated = false;
};

/// All sum_k omega^{x_k} eps_k with x enumerated lexicographically (x_1 slowest).
inline PredictedSpectrum full_spectrum(const SingleParticleEnergies& eps, std::size_t cap = kDefaultSpectrumCap,
                                       bool allow_truncation = false) {
    const int d = eps.d;
    const std::size_t alpha = eps.size();
    std::size_t total = 1;
    bool over = false;
    for (std::size_t k = 0; k < alpha; ++k) {
        if (total > cap / static_cast<std::size_t>(d)) {
            over = true;
            break;
        }
        total *= static_cast<std::size_t>(d);
    }
    if (over && !allow_truncation)
        throw ResourceError("full spectrum has " + std::to_string(d) + "^" + std::to_string(alpha) +
                            " values, above cap " + std::to_string(cap));
    const std::size_t count = over ? cap : total;

    std::vector<cplx> table(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) table[static_cast<std::size_t>(r)] = root_power(r, d);

    PredictedSpectrum out;
    out.d = d;
    out.alpha = alpha;
    out.truncated = over;
    out.energies.reserve(count);
    std::vector<int> x(alpha, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        cplx e = 0.0;
        for (std::size_t k = 0; k < alpha; ++k)
            e += table[static_cast<std::size_t>(mod(x[k] + eps.branch[k], d))] * eps.principal[k];
        out.energies.push_back(e);
        for (std::size_t k = alpha; k-- > 0;) {
            if (++x[k] < d) break;
            x[k] = 0;
        }
    }
    return out;
}

/// Orders complex numbers by (real, imag).
inline void sort_complex(std::vector<cplx>& v) {
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

struct MatchReport {
    bool size_compatible = false;
    std::size_t predicted_count = 0;
    std::size_t observed_count = 0;
    std::size_t multiplicity = 0;           // observed / predicted
    double max_distance = std::numeric_limits<double>::infinity();
    std::size_t max_multiplicity_deviation = 0;  // over clusters of equal predicted values
    double tolerance = 0.0;
    bool pass = false;
};

/// Matches each observed value to the nearest unused copy of a predicted value
/// (each predicted value replicated `multiplicity` times).
inline MatchReport match_spectra(const PredictedSpectrum& predicted, const std::vector<cplx>& observed, double tol) {
    MatchReport rep;
    rep.tolerance = tol;
    rep.predicted_count = predicted.energies.size();
    rep.observed_count = observed.size();
    if (rep.predicted_count == 0 || rep.observed_count % rep.predicted_count != 0) return rep;
    rep.size_compatible = true;
    rep.multiplicity = rep.observed_count / rep.predicted_count;

    std::vector<cplx> pred = predicted.energies;
    sort_complex(pred);
    std::vector<cplx> obs = observed;
    sort_complex(obs);

    // Clusters of numerically equal predicted values.
    std::vector<std::size_t> cluster_of(pred.size());
    std::vector<std::size_t> cluster_size;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        std::size_t found = cluster_size.size();
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(pred[i] - pred[j]) <= tol) {
                found = cluster_of[j];
                break;
            }
        if (found == cluster_size.size()) cluster_size.push_back(0);
        cluster_of[i] = found;
        ++cluster_size[found];
    }

    std::vector<std::size_t> remaining(pred.size(), rep.multiplicity);
    rep.max_distance = 0.0;
    for (auto o : obs) {
        std::size_t best = pred.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pred.size(); ++i) {
            if (!remaining[i]) continue;
            const double dist = std::abs(o - pred[i]);
            if (dist < best_d) {
                best_d = dist;
                best = i;
            }
        }
        --remaining[best];
        rep.max_distance = std::max(rep.max_distance, best_d);
    }

    // Multiplicity per cluster, counted by nearest predicted value.
    std::vector<std::size_t> nearest_hits(cluster_size.size(), 0);
    for (auto o : obs) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pred.size(); ++i)
            if (double dist = std::abs(o - pred[i]); dist < best_d) {
                best_d = dist;
                best = i;
            }
        ++nearest_hits[cluster_of[best]];
    }
    for (std::size_t c = 0; c < cluster_size.size(); ++c) {
        const std::size_t expect = cluster_size[c] * rep.multiplicity;
        const std::size_t got = nearest_hits[c];
        rep.max_multiplicity_deviation = std::max(rep.max_multiplicity_deviation, got > expect ? got - expect : expect - got);
    }
    rep.pass = rep.max_distance <= tol && rep.max_multiplicity_deviation == 0;
    return rep;
}

}  // namespace pfsolve
