#pragma once

// Dense complex matrix primitives: SVD, Moore-Penrose inverse, principal
// square root of a PSD matrix, and the norms every certificate is phrased in.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>

#include "opeq/errors.hpp"

namespace opeq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// The two knobs behind every range decision.
struct ToleranceConfig {
    double rank_rel = 1e-10;      ///< sigma counts iff sigma > sigma_max * rank_rel * max(rows, cols)
    double residual_rel = 1e-8;   ///< relative residual accepted as "zero"

    void validate() const {
        auto ok = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; };
        if (!ok(rank_rel) || !ok(residual_rel)) {
            throw InvalidArgument("tolerances must lie strictly between 0 and 1");
        }
    }
};

/// Thin SVD: m = u * diag(singular_values) * v^*.
struct SvdResult {
    ComplexMatrix u;
    RealVector singular_values;  // descending
    ComplexMatrix v;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;

    double threshold(const ToleranceConfig& tol) const {
        if (singular_values.size() == 0) return 0.0;
        return singular_values(0) * tol.rank_rel * static_cast<double>(std::max(rows, cols));
    }

    std::size_t rank(const ToleranceConfig& tol) const {
        const double cut = threshold(tol);
        std::size_t r = 0;
        for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
            if (singular_values(i) > cut) ++r;
        }
        return r;
    }
};

inline bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

inline void require_finite(const ComplexMatrix& m, const std::string& what) {
    if (!all_finite(m)) throw InvalidArgument(what + " contains a non-finite entry");
}

/// Builds a matrix from row-major entries.
inline ComplexMatrix make_matrix(Eigen::Index rows, Eigen::Index cols, std::span<const Complex> row_major) {
    if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != row_major.size()) {
        throw ShapeError("entry count " + std::to_string(row_major.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = row_major[static_cast<std::size_t>(i * cols + j)];
    require_finite(m, "matrix");
    return m;
}

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

inline ComplexMatrix zeros(Eigen::Index rows, Eigen::Index cols) { return ComplexMatrix::Zero(rows, cols); }

inline ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

inline ComplexMatrix hstack(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row counts differ");
    ComplexMatrix out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

inline ComplexMatrix vstack(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column counts differ");
    ComplexMatrix out(a.rows() + b.rows(), a.cols());
    out << a, b;
    return out;
}

inline double frobenius(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.norm(); }

/// value / scale, or value itself when the scale vanishes.
inline double relative_to(double value, double scale) { return scale > 0.0 ? value / scale : value; }

inline SvdResult svd(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw EmptyMatrix();
    Eigen::JacobiSVD<ComplexMatrix> jac(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return SvdResult{jac.matrixU(), jac.singularValues(), jac.matrixV(), m.rows(), m.cols()};
}

inline double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> jac(m);
    return jac.singularValues()(0);
}

/// Moore-Penrose inverse from the rank-truncated SVD. Zero or empty input
/// gives the transpose-shaped zero matrix.
inline ComplexMatrix pinv(const ComplexMatrix& m, const ToleranceConfig& tol = {}) {
    if (m.size() == 0) return zeros(m.cols(), m.rows());
    const SvdResult s = svd(m);
    const auto r = static_cast<Eigen::Index>(s.rank(tol));
    if (r == 0) return zeros(m.cols(), m.rows());
    const RealVector inv = s.singular_values.head(r).cwiseInverse();
    return s.v.leftCols(r) * inv.asDiagonal() * s.u.leftCols(r).adjoint();
}

inline double hermitian_defect(const ComplexMatrix& m) { return frobenius(m - m.adjoint()); }

/// Smallest eigenvalue of the Hermitian part of a square matrix.
inline double min_eigenvalue(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw DimensionMismatch("min_eigenvalue: matrix is not square");
    if (h.size() == 0) throw EmptyMatrix();
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues within
/// dim * eps * max(||M||, reference_norm) of zero (either sign) are treated
/// as zero; pass the norm M was derived from when M itself may be roundoff.
/// The Hermitian and sign checks use the same scale.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m, double reference_norm = 0.0) {
    if (m.rows() != m.cols()) throw DimensionMismatch("psd_sqrt: matrix is not square");
    if (m.size() == 0) throw EmptyMatrix();
    const double scale = std::max({frobenius(m), reference_norm, std::numeric_limits<double>::min()});
    if (hermitian_defect(m) > 1e-10 * scale) {
        throw NotPSD("psd_sqrt: matrix is not Hermitian");
    }
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
    const RealVector& ev = es.eigenvalues();
    const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    if (ev(0) < -1e-10 * std::max(norm, reference_norm)) {
        throw NotPSD("psd_sqrt: minimum eigenvalue " + std::to_string(ev(0)) + " is negative");
    }
    const double cutoff =
        static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() * std::max(norm, reference_norm);
    RealVector roots(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) roots(i) = ev(i) > cutoff ? std::sqrt(ev(i)) : 0.0;
    const ComplexMatrix& q = es.eigenvectors();
    const ComplexMatrix s = q * roots.asDiagonal() * q.adjoint();
    return 0.5 * (s + s.adjoint());
}

}  // namespace opeq
