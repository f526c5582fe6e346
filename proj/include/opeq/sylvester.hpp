#pragma once

// AX + YB = C with two independent unknowns, and AX + BY = C when A^*B = 0.
//
// Shapes: A is m x p, B is q x n, C is m x n, so X is p x n and Y is m x q.
// Every formula is written with the four range projections of A and B:
// P_A, P_{A^*}, N_A = I - P_{A^*}, N_{A^*} = I - P_A (and likewise for B).

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "opeq/douglas.hpp"
#include "opeq/kernel.hpp"
#include "opeq/projections.hpp"
#include "opeq/random.hpp"

namespace opeq {

struct SylvesterDiagnosis {
    RangeDecision cond_range_cnb;   ///< R(C·N_B) ⊆ R(A)
    RangeDecision cond_range_pbc;   ///< R(P_{B^*}·C^*) ⊆ R(B^*)
    double classical_residual = 0.0; ///< ||N_{A^*}·C·N_B||_F, absolute
    double scale = 0.0;              ///< ||C||_F

    bool solvable() const { return cond_range_cnb.holds && cond_range_pbc.holds; }
    bool classical_holds(const ToleranceConfig& tol) const {
        return classical_residual <= tol.residual_rel * scale;
    }
    /// The range conditions and the classical test disagree; only possible
    /// when singular values sit near the rank threshold.
    bool tolerance_anomaly(const ToleranceConfig& tol) const { return solvable() != classical_holds(tol); }
};

/// Free parameters of the homogeneous solution. W1 is p x n, Wprime is
/// p x q, W4 is m x q.
struct SylvesterParams {
    ComplexMatrix w1;
    ComplexMatrix wprime;
    ComplexMatrix w4;
};

struct SylvesterSolution {
    ComplexMatrix x_p;
    ComplexMatrix y_p;
    ComplexMatrix x;
    ComplexMatrix y;
    double residual = 0.0;  ///< ||A·x + y·B - C||_F relative to ||C||_F
    SylvesterParams params_used;
};

struct CompletenessWitness {
    double residual = 0.0;   ///< relative residual of the supplied pair
    double witness_x = 0.0;  ///< ||P_{A^*}(x0 - x_p)N_B||_F / scale
    double witness_y = 0.0;  ///< ||N_{A^*}(y0 - y_p)P_B||_F / scale
    double scale = 0.0;
    bool pass = false;
};

struct OrthogonalSolution {
    ComplexMatrix x;
    ComplexMatrix y;
    double lambda = 0.0;             ///< ||[x; y]||_2^2, CC^* <= lambda(AA^* + BB^*)
    double residual = 0.0;           ///< ||A·x + B·y - C||_F / ||C||_F
    double hypothesis_residual = 0.0; ///< ||A^*B||_F / (||A||_F ||B||_F)
    double off_block_residual = 0.0; ///< max(||N_A x||, ||N_B y||) / ||[x; y]||
    bool off_block_anomaly = false;
    bool majorization_certified = false;
};

namespace detail {

inline void check_sylvester_shapes(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
    if (c.rows() != a.rows() || c.cols() != b.cols()) {
        throw DimensionMismatch("AX + YB = C needs C to be " + std::to_string(a.rows()) + "x" +
                                std::to_string(b.cols()) + ", got " + std::to_string(c.rows()) + "x" +
                                std::to_string(c.cols()));
    }
    require_finite(a, "A");
    require_finite(b, "B");
    require_finite(c, "C");
}

}  // namespace detail

inline SylvesterDiagnosis diagnose_ax_yb(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                         const ToleranceConfig& tol = {}) {
    detail::check_sylvester_shapes(a, b, c);
    const ProjectionQuad qa = projection_quad(a, tol);
    const ProjectionQuad qb = projection_quad(b, tol);
    const ComplexMatrix bstar = b.adjoint();
    SylvesterDiagnosis d;
    d.scale = frobenius(c);
    d.cond_range_cnb = range_inclusion_with(c * qb.n_a, a, qa.p_a, tol, d.scale);
    d.cond_range_pbc = range_inclusion_with(qb.p_astar * c.adjoint(), bstar, qb.p_astar, tol, d.scale);
    d.classical_residual = frobenius(qa.n_astar * c * qb.n_a);
    return d;
}

/// x_p = pinv(A)·C·N_B and y_p = C·pinv(B): the reduced solutions of
/// AX = P_A·C·N_B and B^*Y^* = P_{B^*}·C^*.
inline std::pair<ComplexMatrix, ComplexMatrix> particular_ax_yb(const ComplexMatrix& a, const ComplexMatrix& b,
                                                                const ComplexMatrix& c,
                                                                const ToleranceConfig& tol = {}) {
    const SylvesterDiagnosis diag = diagnose_ax_yb(a, b, c, tol);
    if (!diag.cond_range_cnb.holds) throw NotSolvable("R(C N_B) in R(A)", diag.cond_range_cnb.residual);
    if (!diag.cond_range_pbc.holds) throw NotSolvable("R(P_B* C*) in R(B*)", diag.cond_range_pbc.residual);
    const ProjectionQuad qb = projection_quad(b, tol);
    ComplexMatrix x_p = pinv(a, tol) * c * qb.n_a;
    ComplexMatrix y_p = c * pinv(b, tol);
    return {std::move(x_p), std::move(y_p)};
}

/// x_h = N_A·W1 - P_{A^*}·W'·B·P_{B^*}, y_h = A·W'·P_B + W4·N_{B^*}.
/// A·x_h + y_h·B vanishes identically: -A W' B + A W' B = 0.
inline std::pair<ComplexMatrix, ComplexMatrix> homogeneous_ax_yb(const ComplexMatrix& a, const ComplexMatrix& b,
                                                                 const SylvesterParams& params,
                                                                 const ToleranceConfig& tol = {}) {
    const Eigen::Index m = a.rows(), p = a.cols(), q = b.rows(), n = b.cols();
    auto expect = [](const ComplexMatrix& w, Eigen::Index r, Eigen::Index cc, const char* name) {
        if (w.rows() != r || w.cols() != cc) {
            throw DimensionMismatch(std::string(name) + " must be " + std::to_string(r) + "x" + std::to_string(cc));
        }
    };
    expect(params.w1, p, n, "W1");
    expect(params.wprime, p, q, "W'");
    expect(params.w4, m, q, "W4");
    const ProjectionQuad qa = projection_quad(a, tol);
    const ProjectionQuad qb = projection_quad(b, tol);
    ComplexMatrix x_h = qa.n_a * params.w1 - qa.p_astar * params.wprime * b * qb.p_astar;
    ComplexMatrix y_h = a * params.wprime * qb.p_a + params.w4 * qb.n_astar;
    return {std::move(x_h), std::move(y_h)};
}

inline SylvesterParams zero_params(const ComplexMatrix& a, const ComplexMatrix& b) {
    return {zeros(a.cols(), b.cols()), zeros(a.cols(), b.rows()), zeros(a.rows(), b.rows())};
}

/// Gaussian W1, W', W4 drawn (in that order) from the seeded generator.
inline SylvesterParams sample_params(const ComplexMatrix& a, const ComplexMatrix& b, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    SylvesterParams params;
    params.w1 = gaussian_matrix(a.cols(), b.cols(), rng);
    params.wprime = gaussian_matrix(a.cols(), b.rows(), rng);
    params.w4 = gaussian_matrix(a.rows(), b.rows(), rng);
    return params;
}

/// General solution X = X_p + X_h, Y = Y_p + Y_h.
inline SylvesterSolution solve_ax_yb(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                     const SylvesterParams& params, const ToleranceConfig& tol = {}) {
    auto [x_p, y_p] = particular_ax_yb(a, b, c, tol);
    auto [x_h, y_h] = homogeneous_ax_yb(a, b, params, tol);
    SylvesterSolution s;
    s.x = x_p + x_h;
    s.y = y_p + y_h;
    s.x_p = std::move(x_p);
    s.y_p = std::move(y_p);
    s.params_used = params;
    s.residual = relative_to(frobenius(a * s.x + s.y * b - c), frobenius(c));
    return s;
}

inline SylvesterSolution solve_ax_yb(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                     const ToleranceConfig& tol = {}) {
    return solve_ax_yb(a, b, c, zero_params(a, b), tol);
}

/// Checks that a known solution (x0, y0) lies in the parameterized family:
/// the components P_{A^*}(x0 - x_p)N_B and N_{A^*}(y0 - y_p)P_B, which no
/// choice of parameters can produce, must vanish.
inline CompletenessWitness completeness_witness(const ComplexMatrix& a, const ComplexMatrix& b,
                                                const ComplexMatrix& c, const ComplexMatrix& x0,
                                                const ComplexMatrix& y0, const ToleranceConfig& tol = {}) {
    detail::check_sylvester_shapes(a, b, c);
    if (x0.rows() != a.cols() || x0.cols() != b.cols() || y0.rows() != a.rows() || y0.cols() != b.rows()) {
        throw DimensionMismatch("completeness_witness: x0 must be p x n and y0 must be m x q");
    }
    CompletenessWitness w;
    const double cn = frobenius(c);
    const double terms = frobenius(a * x0) + frobenius(y0 * b);
    w.residual = relative_to(frobenius(a * x0 + y0 * b - c), cn > 0.0 ? cn : terms);
    if (w.residual > tol.residual_rel) throw NotASolution(w.residual);

    auto [x_p, y_p] = particular_ax_yb(a, b, c, tol);
    const ProjectionQuad qa = projection_quad(a, tol);
    const ProjectionQuad qb = projection_quad(b, tol);
    w.scale = std::max({frobenius(x0), frobenius(y0), frobenius(x_p), frobenius(y_p)});
    w.witness_x = relative_to(frobenius(qa.p_astar * (x0 - x_p) * qb.n_a), w.scale);
    w.witness_y = relative_to(frobenius(qa.n_astar * (y0 - y_p) * qb.p_a), w.scale);
    w.pass = w.witness_x <= 1e-8 && w.witness_y <= 1e-8;
    return w;
}

/// AX + BY = C under A^*B = 0, through the stacked operator T = [A B]:
/// R(C) ⊆ R(A) + R(B) decides solvability and [x; y] = pinv(T)·C.
/// A is m x p, B is m x q, C is m x n.
inline OrthogonalSolution solve_ax_by_orthogonal(const ComplexMatrix& a, const ComplexMatrix& b,
                                                 const ComplexMatrix& c, const ToleranceConfig& tol = {}) {
    if (a.rows() != b.rows() || a.rows() != c.rows()) {
        throw DimensionMismatch("AX + BY = C needs A, B and C with equal row counts");
    }
    require_finite(a, "A");
    require_finite(b, "B");
    require_finite(c, "C");
    OrthogonalSolution s;
    const double ab_scale = frobenius(a) * frobenius(b);
    s.hypothesis_residual = relative_to(frobenius(a.adjoint() * b), ab_scale);
    if (ab_scale > 0.0 && s.hypothesis_residual > 1e-10) {
        throw HypothesisViolated("A*B = 0", s.hypothesis_residual);
    }
    const ComplexMatrix t = hstack(a, b);
    const ProjectionQuad qt = projection_quad(t, tol);
    const RangeDecision inc = range_inclusion_with(c, t, qt.p_a, tol);
    if (!inc.holds) throw NotSolvable("R(C) in R(A) + R(B)", inc.residual);

    const ComplexMatrix stacked = pinv(t, tol) * c;
    s.x = stacked.topRows(a.cols());
    s.y = stacked.bottomRows(b.cols());
    s.residual = relative_to(frobenius(a * s.x + b * s.y - c), frobenius(c));
    const double top = spectral_norm(stacked);
    s.lambda = top * top;

    const ProjectionQuad qa = projection_quad(a, tol);
    const ProjectionQuad qb = projection_quad(b, tol);
    const double off = std::max(frobenius(qa.n_a * s.x), frobenius(qb.n_a * s.y));
    s.off_block_residual = relative_to(off, frobenius(stacked));
    s.off_block_anomaly = s.off_block_residual > 1e-10;
    s.majorization_certified = majorization_holds(t, c, s.lambda);
    return s;
}

}  // namespace opeq
