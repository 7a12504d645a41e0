#pragma once

// Dense eigenvalues of general complex matrices: diagonal balancing followed
// by Hessenberg reduction and shifted QR (Eigen's complex Schur solver).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "pfsolve/errors.hpp"
#include "pfsolve/weyl.hpp"

namespace pfsolve {

/// Parlett-Reinsch balancing with radix-2 scalings; returns D^{-1} M D.
inline Matrix balance(Matrix m) {
    const Eigen::Index n = m.rows();
    constexpr double radix = 2.0;
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(m(j, i));
                r += std::abs(m(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
    }
    return m;
}

/// All eigenvalues of a square complex matrix.
inline std::vector<cplx> eigenvalues(const Matrix& m, std::size_t cap = kDefaultDenseCap) {
    if (m.rows() != m.cols()) throw DimensionError("eigenvalues: matrix is not square");
    if (static_cast<std::size_t>(m.rows()) > cap)
        throw ResourceError("eigenvalues: dimension " + std::to_string(m.rows()) + " exceeds cap " + std::to_string(cap));
    if (m.rows() == 0) return {};
    for (Eigen::Index i = 0; i < m.size(); ++i)
        if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag()))
            throw NumericalError("eigenvalues: matrix has non-finite entries");
    Eigen::ComplexEigenSolver<Matrix> solver(balance(m), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericalError("eigenvalues: QR iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

inline double frobenius(const Matrix& m) { return m.norm(); }

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace pfsolve
