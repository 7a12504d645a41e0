#pragma once

// Exact algebra of n-qudit Weyl operators
//
//   w = omega^{phase2/2} * (X^{x_0} Z^{z_0}) (x) ... (x) (X^{x_{n-1}} Z^{z_{n-1}})
//
// with omega = exp(2 pi i / d), X|k> = |k+1>, Z|k> = omega^k |k>. Phases are
// kept as integers modulo 2d; floating point only appears in dense().

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "pfsolve/errors.hpp"

namespace pfsolve {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Default cap on the dense Hilbert-space dimension d^n.
inline constexpr std::size_t kDefaultDenseCap = 4096;

inline int mod(long long a, long long m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

/// omega_d^{k2/2} = exp(i pi k2 / d).
inline cplx half_root_power(long long k2, int d) {
    const int r = mod(k2, 2LL * d);
    return std::polar(1.0, std::numbers::pi * r / d);
}

/// omega_d^k = exp(2 pi i k / d).
inline cplx root_power(long long k, int d) { return half_root_power(2 * mod(k, d), d); }

struct QuditDims {
    int d = 2;
    int n = 1;

    QuditDims() = default;
    QuditDims(int d_, int n_) : d(d_), n(n_) {
        if (d < 2) throw DimensionError("qudit dimension d must be >= 2, got " + std::to_string(d));
        if (n < 1) throw DimensionError("site count n must be >= 1, got " + std::to_string(n));
    }

    /// d^n, or throws ResourceError when it exceeds cap.
    std::size_t hilbert_dim(std::size_t cap = SIZE_MAX) const {
        std::size_t dim = 1;
        for (int i = 0; i < n; ++i) {
            if (dim > cap / static_cast<std::size_t>(d))
                throw ResourceError("Hilbert dimension " + std::to_string(d) + "^" + std::to_string(n) +
                                    " exceeds cap " + std::to_string(cap));
            dim *= static_cast<std::size_t>(d);
        }
        return dim;
    }

    friend bool operator==(const QuditDims&, const QuditDims&) = default;
};

/// Exact scalar omega_d^{k2/2}.
struct PhaseScalar {
    int d = 2;
    int k2 = 0;

    PhaseScalar() = default;
    PhaseScalar(int d_, long long k2_) : d(d_), k2(mod(k2_, 2LL * d_)) {}

    cplx value() const { return half_root_power(k2, d); }
    bool is_one() const { return k2 == 0; }

    friend bool operator==(const PhaseScalar&, const PhaseScalar&) = default;
};

struct WeylLabel {
    int d = 2;
    std::vector<int> x;  // X exponents per site
    std::vector<int> z;  // Z exponents per site
    int phase2 = 0;      // global phase in units of omega^{1/2}

    WeylLabel() = default;

    /// Builds a label, reducing exponents mod d and the phase mod 2d.
    WeylLabel(int d_, std::vector<int> x_, std::vector<int> z_, long long phase2_ = 0)
        : d(d_), x(std::move(x_)), z(std::move(z_)) {
        if (d < 2) throw DimensionError("qudit dimension d must be >= 2");
        if (x.size() != z.size()) throw DimensionError("x and z exponent vectors differ in length");
        for (auto& e : x) e = mod(e, d);
        for (auto& e : z) e = mod(e, d);
        phase2 = mod(phase2_, 2LL * d);
    }

    static WeylLabel identity(const QuditDims& dims) {
        return WeylLabel(dims.d, std::vector<int>(dims.n, 0), std::vector<int>(dims.n, 0), 0);
    }

    /// Single-site X^xp Z^zp at `site`.
    static WeylLabel single(const QuditDims& dims, int site, int xp, int zp) {
        auto w = identity(dims);
        w.x.at(site) = mod(xp, dims.d);
        w.z.at(site) = mod(zp, dims.d);
        return w;
    }

    std::size_t sites() const { return x.size(); }

    bool is_identity() const {
        for (std::size_t l = 0; l < x.size(); ++l)
            if (x[l] || z[l]) return false;
        return true;
    }

    /// Same operator up to the global phase.
    bool same_support(const WeylLabel& o) const { return d == o.d && x == o.x && z == o.z; }

    friend bool operator==(const WeylLabel&, const WeylLabel&) = default;
    friend auto operator<=>(const WeylLabel&, const WeylLabel&) = default;
};

namespace detail {

inline void check_same_shape(const WeylLabel& u, const WeylLabel& v) {
    if (u.d != v.d) throw DimensionError("Weyl labels have different qudit dimensions");
    if (u.sites() != v.sites()) throw DimensionError("Weyl labels have different site counts");
}

inline long long dot(const std::vector<int>& a, const std::vector<int>& b) {
    long long s = 0;
    for (std::size_t l = 0; l < a.size(); ++l) s += static_cast<long long>(a[l]) * b[l];
    return s;
}

}  // namespace detail

/// k in [0, d) with w_u w_v = omega^k w_v w_u, i.e. k = z_u.x_v - x_u.z_v mod d.
inline int symplectic_phase(const WeylLabel& u, const WeylLabel& v) {
    detail::check_same_shape(u, v);
    return mod(detail::dot(u.z, v.x) - detail::dot(u.x, v.z), u.d);
}

inline int symplectic_phase(const WeylLabel& u, const WeylLabel& v, const QuditDims& dims) {
    if (u.d != dims.d || v.d != dims.d) throw DimensionError("label dimension does not match d");
    if (static_cast<int>(u.sites()) != dims.n || static_cast<int>(v.sites()) != dims.n)
        throw DimensionError("label length does not match n");
    return symplectic_phase(u, v);
}

/// Hermitian conjugate: (w^{p/2} X^a Z^b)^dagger = w^{-p/2 + a.b} X^{-a} Z^{-b}.
inline WeylLabel conjugate_label(const WeylLabel& u) {
    std::vector<int> x(u.x.size()), z(u.z.size());
    for (std::size_t l = 0; l < x.size(); ++l) {
        x[l] = -u.x[l];
        z[l] = -u.z[l];
    }
    return WeylLabel(u.d, std::move(x), std::move(z), -static_cast<long long>(u.phase2) + 2 * detail::dot(u.x, u.z));
}

struct LabelProduct {
    WeylLabel label;
    PhaseScalar scalar;
};

/// u*v = scalar * label. Exponents add mod d; the label carries the summed
/// global phases and the scalar the reordering factor omega^{z_u.x_v}.
inline LabelProduct multiply_labels(const WeylLabel& u, const WeylLabel& v) {
    detail::check_same_shape(u, v);
    std::vector<int> x(u.x.size()), z(u.z.size());
    for (std::size_t l = 0; l < x.size(); ++l) {
        x[l] = u.x[l] + v.x[l];
        z[l] = u.z[l] + v.z[l];
    }
    WeylLabel w(u.d, std::move(x), std::move(z), static_cast<long long>(u.phase2) + v.phase2);
    return {std::move(w), PhaseScalar(u.d, 2 * detail::dot(u.z, v.x))};
}

/// lambda with w^d = lambda * I. Per site (X^a Z^b)^d = omega^{ab d(d-1)/2}.
inline PhaseScalar dth_power_scalar(const WeylLabel& u) {
    const long long d = u.d;
    return PhaseScalar(u.d, static_cast<long long>(u.phase2) * d + detail::dot(u.x, u.z) % (2 * d) * (d * (d - 1) % (2 * d)));
}

inline PhaseScalar dth_power_scalar(const WeylLabel& u, const QuditDims& dims) {
    if (u.d != dims.d || static_cast<int>(u.sites()) != dims.n) throw DimensionError("label does not match dims");
    return dth_power_scalar(u);
}

/// Calls f(row, col, value) for the single nonzero entry in each column of
/// the d^n x d^n matrix of u. Site 0 is the most significant tensor factor.
template <class F>
void for_each_label_entry(const WeylLabel& u, const QuditDims& dims, std::size_t cap, F&& f) {
    if (u.d != dims.d || static_cast<int>(u.sites()) != dims.n) throw DimensionError("label does not match dims");
    const std::size_t dim = dims.hilbert_dim(cap);
    const int d = dims.d;
    const int n = dims.n;
    std::vector<cplx> roots(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) roots[static_cast<std::size_t>(k)] = root_power(k, d);
    const cplx global = half_root_power(u.phase2, d);
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t col = 0; col < dim; ++col) {
        // Z^b acts first, then X^a.
        long long zexp = 0;
        std::size_t row = 0;
        for (int l = 0; l < n; ++l) {
            const auto ls = static_cast<std::size_t>(l);
            zexp += static_cast<long long>(u.z[ls]) * digits[ls];
            row = row * static_cast<std::size_t>(d) + static_cast<std::size_t>(mod(digits[ls] + u.x[ls], d));
        }
        f(row, col, global * roots[static_cast<std::size_t>(mod(zexp, d))]);
        for (int l = n - 1; l >= 0; --l) {
            auto& dg = digits[static_cast<std::size_t>(l)];
            if (++dg < d) break;
            dg = 0;
        }
    }
}

/// m += coeff * dense(u).
inline void accumulate_label(Matrix& m, const WeylLabel& u, const QuditDims& dims, cplx coeff,
                             std::size_t cap = kDefaultDenseCap) {
    const auto dim = static_cast<Eigen::Index>(dims.hilbert_dim(cap));
    if (m.rows() != dim || m.cols() != dim) throw DimensionError("accumulate_label: matrix size mismatch");
    for_each_label_entry(u, dims, cap, [&](std::size_t r, std::size_t c, cplx v) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += coeff * v;
    });
}

/// Dense d^n x d^n realization of u.
inline Matrix dense_label(const WeylLabel& u, const QuditDims& dims, std::size_t cap = kDefaultDenseCap) {
    const auto dim = static_cast<Eigen::Index>(dims.hilbert_dim(cap));
    Matrix m = Matrix::Zero(dim, dim);
    accumulate_label(m, u, dims, 1.0, cap);
    return m;
}

/// Human-readable form, e.g. "w^1/2 X0 Z0^2 Z1".
inline std::string to_string(const WeylLabel& u) {
    std::string s;
    if (u.phase2) s += "w^" + std::to_string(u.phase2) + "/2 ";
    bool any = false;
    for (std::size_t l = 0; l < u.sites(); ++l) {
        auto emit = [&](char op, int e) {
            if (!e) return;
            if (any) s += ' ';
            s += op + std::to_string(l);
            if (e != 1) s += '^' + std::to_string(e);
            any = true;
        };
        emit('X', u.x[l]);
        emit('Z', u.z[l]);
    }
    if (!any) s += "I";
    return s;
}

}  // namespace pfsolve
