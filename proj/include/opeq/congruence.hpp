#pragma once

// AXA^* + BYB^* = 0, AXA^* + BYB^* = C, the intersection R(A) ∩ R(B) read
// off the kernel projection of [A -B], and AXA^* + BYB^* = CZ.
//
// Shapes: A is m x p, B is m x q, so X is p x p and Y is q x q. C is m x m
// for the congruence equation and m x r for the CZ equation (Z is r x m).

#include <algorithm>
#include <string>

#include "opeq/douglas.hpp"
#include "opeq/kernel.hpp"
#include "opeq/projections.hpp"

namespace opeq {

struct HomogeneousCongruence {
    ComplexMatrix x;
    ComplexMatrix y;
    double residual = 0.0;  ///< ||A x A^* + B y B^*||_F / (||A x A^*||_F + ||B y B^*||_F)
};

struct CongruenceDiagnosis {
    RangeDecision hyp_c_in_b;              ///< R(C) ⊆ R(B)
    RangeDecision hyp_cstar_in_a;          ///< R(C^*) ⊆ R(A)
    double hyp_cstar_pa_in_nbstar = 0.0;   ///< ||B^* C^* P_A||_F / (||B||_F ||C||_F)
    RangeDecision cond_cnbstar_in_a;       ///< R(C N_{B^*}) ⊆ R(A)
    RangeDecision cond_cstar_nastar_in_b;  ///< R(C^* N_{A^*}) ⊆ R(B)

    bool hypotheses_hold(const ToleranceConfig& tol) const {
        return hyp_c_in_b.holds && hyp_cstar_in_a.holds && hyp_cstar_pa_in_nbstar <= tol.residual_rel;
    }
    bool criteria_hold() const { return cond_cnbstar_in_a.holds && cond_cstar_nastar_in_b.holds; }
};

struct CongruenceSolution {
    ComplexMatrix x;
    ComplexMatrix y;
    ComplexMatrix x_hat;       ///< reduced solution of A·X̂ = P_A C N_{B^*}; x A^* = x_hat
    ComplexMatrix y_hat_star;  ///< reduced solution of B·Ŷ^* = P_B C^*; y^* B^* = y_hat_star
    double residual = 0.0;     ///< ||A x A^* + B y B^* - C||_F / ||C||_F
    CongruenceDiagnosis diagnosis;
};

struct NecessityReport {
    double residual = 0.0;
    RangeDecision cstar_nastar_in_b;  ///< R(C^* N_{A^*}) ⊆ R(B)
    RangeDecision cnbstar_in_a;       ///< R(C N_{B^*}) ⊆ R(A)

    bool pass() const { return cstar_nastar_in_b.holds && cnbstar_in_a.holds; }
};

/// Kernel projection P = [X Z^*; Z Y] of T = [A -B] and what it says about
/// R(A) ∩ R(B).
struct IntersectionReport {
    ComplexMatrix p;
    ComplexMatrix x;      ///< p x p, Hermitian PSD
    ComplexMatrix z;      ///< q x p
    ComplexMatrix y;      ///< q x q, Hermitian PSD
    ComplexMatrix intersection_basis;  ///< m x dim, orthonormal columns
    std::size_t dim = 0;
    std::size_t rank_formula_dim = 0;  ///< rank A + rank B - rank [A B]
    double projection_residual = 0.0;  ///< max(||P^2 - P||_F, ||P - P^*||_F)
    double kernel_residual = 0.0;      ///< ||T P||_F / ||T||_F
    double block_identity_residual = 0.0; ///< max(||X^2 + Z^*Z - X||_F, ||Y^2 + Z Z^* - Y||_F)
    double ax_bz_residual = 0.0;       ///< max(||AX - BZ||_F, ||AZ^* - BY||_F) / (||A||_F + ||B||_F)
    RangeDecision sqrt_axa_in_intersection;  ///< R((A X A^*)^{1/2}) ⊆ R(A) ∩ R(B)
    RangeDecision sqrt_byb_in_intersection;  ///< R((B Y B^*)^{1/2}) ⊆ R(A) ∩ R(B)
    double pn_s_invariant_residual = 0.0;    ///< ||(I - Q_S) P Q_S||_F, Q_S onto N([A B])

    bool dims_agree() const { return dim == rank_formula_dim; }
};

struct CzSolution {
    ComplexMatrix x;
    ComplexMatrix y;
    ComplexMatrix z;
    ComplexMatrix rhs;      ///< A x A^* + B y B^*
    double residual = 0.0;  ///< ||C z - rhs||_F / ||rhs||_F
    RangeDecision intersection_in_c;
    IntersectionReport intersection;
};

namespace detail {

inline void check_pair_rows(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows()) {
        throw DimensionMismatch(std::string(op) + ": A and B must have the same row count");
    }
    require_finite(a, "A");
    require_finite(b, "B");
}

inline void check_congruence_shapes(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
    check_pair_rows(a, b, "AXA* + BYB* = C");
    if (c.rows() != a.rows() || c.cols() != a.rows()) {
        throw DimensionMismatch("AXA* + BYB* = C needs C to be " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.rows()));
    }
    require_finite(c, "C");
}

}  // namespace detail

/// Nonzero solutions of AXA^* + BYB^* = 0 from three free operators:
/// x = pinv(A)(B V1 P_{A^*} + V2 N_A), y = (N_B V3 - P_{B^*} V1 A^*) pinv(B^*).
/// V1 is q x p, V2 is m x p, V3 is q x m.
inline HomogeneousCongruence homogeneous_congruence(const ComplexMatrix& a, const ComplexMatrix& b,
                                                    const ComplexMatrix& v1, const ComplexMatrix& v2,
                                                    const ComplexMatrix& v3, const ToleranceConfig& tol = {}) {
    detail::check_pair_rows(a, b, "homogeneous_congruence");
    const Eigen::Index m = a.rows(), p = a.cols(), q = b.cols();
    if (v1.rows() != q || v1.cols() != p || v2.rows() != m || v2.cols() != p || v3.rows() != q || v3.cols() != m) {
        throw DimensionMismatch("homogeneous_congruence: V1 must be q x p, V2 m x p, V3 q x m");
    }
    const ProjectionQuad qa = projection_quad(a, tol);
    const ProjectionQuad qb = projection_quad(b, tol);

    const ComplexMatrix ax_rhs = b * v1 * qa.p_astar + v2 * qa.n_a;
    const ComplexMatrix ybstar_rhs = qb.n_a * v3 - qb.p_astar * v1 * a.adjoint();
    const ComplexMatrix ybstar_rhs_adj = ybstar_rhs.adjoint();

    const RangeDecision first = range_inclusion_with(ax_rhs, a, qa.p_a, tol,
                                                     frobenius(b * v1) + frobenius(v2));
    if (!first.holds) throw HypothesisViolated("R(B V1 P_A* + V2 N_A) in R(A)", first.residual);
    const RangeDecision second = range_inclusion_with(ybstar_rhs_adj, b, qb.p_a, tol,
                                                      frobenius(v3) + frobenius(a * v1.adjoint()));
    if (!second.holds) throw HypothesisViolated("R(V3* N_B - A V1* P_B*) in R(B)", second.residual);

    HomogeneousCongruence h;
    h.x = pinv(a, tol) * ax_rhs;
    h.y = ybstar_rhs * pinv(b, tol).adjoint();
    const ComplexMatrix axa = a * h.x * a.adjoint();
    const ComplexMatrix byb = b * h.y * b.adjoint();
    h.residual = relative_to(frobenius(axa + byb), frobenius(axa) + frobenius(byb));
    return h;
}

inline CongruenceDiagnosis diagnose_congruence(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                               const ToleranceConfig& tol = {}) {
    detail::check_congruence_shapes(a, b, c);
    const ProjectionQuad qa = projection_quad(a, tol);
    const ProjectionQuad qb = projection_quad(b, tol);
    const double cn = frobenius(c);
    CongruenceDiagnosis d;
    d.hyp_c_in_b = range_inclusion_with(c, b, qb.p_a, tol);
    d.hyp_cstar_in_a = range_inclusion_with(c.adjoint(), a, qa.p_a, tol);
    d.hyp_cstar_pa_in_nbstar = relative_to(frobenius(b.adjoint() * c.adjoint() * qa.p_a), frobenius(b) * cn);
    d.cond_cnbstar_in_a = range_inclusion_with(c * qb.n_astar, a, qa.p_a, tol, cn);
    d.cond_cstar_nastar_in_b = range_inclusion_with(c.adjoint() * qa.n_astar, b, qb.p_a, tol, cn);
    return d;
}

/// Solves AXA^* + BYB^* = C under R(C) ⊆ R(B), R(C^*) ⊆ R(A) and
/// R(C^* P_A) ⊆ N(B^*). Solvable iff R(C N_{B^*}) ⊆ R(A) and
/// R(C^* N_{A^*}) ⊆ R(B).
///
/// The equation is first reduced to A·X̂ + Ŷ·B^* = C with X̂ = X A^*,
/// Ŷ = B Y, whose reduced solutions are X̂ = pinv(A)·C·N_{B^*} and
/// Ŷ^* = pinv(B)·C^*. Then x = X̂·pinv(A^*) and y^* = Ŷ^*·pinv(B^*).
inline CongruenceSolution solve_congruence(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                           const ToleranceConfig& tol = {}) {
    CongruenceSolution s;
    s.diagnosis = diagnose_congruence(a, b, c, tol);
    const CongruenceDiagnosis& d = s.diagnosis;
    if (!d.hyp_c_in_b.holds) throw HypothesisViolated("R(C) in R(B)", d.hyp_c_in_b.residual);
    if (!d.hyp_cstar_in_a.holds) throw HypothesisViolated("R(C*) in R(A)", d.hyp_cstar_in_a.residual);
    if (d.hyp_cstar_pa_in_nbstar > tol.residual_rel) {
        throw HypothesisViolated("R(C* P_A) in N(B*)", d.hyp_cstar_pa_in_nbstar);
    }
    if (!d.cond_cnbstar_in_a.holds) throw NotSolvable("R(C N_B*) in R(A)", d.cond_cnbstar_in_a.residual);
    if (!d.cond_cstar_nastar_in_b.holds) throw NotSolvable("R(C* N_A*) in R(B)", d.cond_cstar_nastar_in_b.residual);

    const ProjectionQuad qb = projection_quad(b, tol);
    const ComplexMatrix a_pinv = pinv(a, tol);
    const ComplexMatrix b_pinv = pinv(b, tol);
    s.x_hat = a_pinv * c * qb.n_astar;
    s.y_hat_star = b_pinv * c.adjoint();
    s.x = s.x_hat * a_pinv.adjoint();
    s.y = (s.y_hat_star * b_pinv.adjoint()).adjoint();
    s.residual = relative_to(frobenius(a * s.x * a.adjoint() + b * s.y * b.adjoint() - c), frobenius(c));
    return s;
}

/// Necessity direction on a known solution: whenever AxA^* + ByB^* = C,
/// both R(C^* N_{A^*}) ⊆ R(B) and R(C N_{B^*}) ⊆ R(A) hold.
inline NecessityReport solvability_necessity_check(const ComplexMatrix& a, const ComplexMatrix& b,
                                                   const ComplexMatrix& c, const ComplexMatrix& x,
                                                   const ComplexMatrix& y, const ToleranceConfig& tol = {}) {
    detail::check_congruence_shapes(a, b, c);
    if (x.rows() != a.cols() || x.cols() != a.cols() || y.rows() != b.cols() || y.cols() != b.cols()) {
        throw DimensionMismatch("solvability_necessity_check: x must be p x p and y q x q");
    }
    NecessityReport r;
    const ComplexMatrix axa = a * x * a.adjoint();
    const ComplexMatrix byb = b * y * b.adjoint();
    const double cn = frobenius(c);
    r.residual = relative_to(frobenius(axa + byb - c), cn > 0.0 ? cn : frobenius(axa) + frobenius(byb));
    if (r.residual > tol.residual_rel) throw NotASolution(r.residual);
    const ProjectionQuad qa = projection_quad(a, tol);
    const ProjectionQuad qb = projection_quad(b, tol);
    r.cstar_nastar_in_b = range_inclusion_with(c.adjoint() * qa.n_astar, b, qb.p_a, tol, cn);
    r.cnbstar_in_a = range_inclusion_with(c * qb.n_astar, a, qa.p_a, tol, cn);
    return r;
}

/// R(A) ∩ R(B) through the orthogonal projection P onto N([A -B]).
inline IntersectionReport range_intersection(const ComplexMatrix& a, const ComplexMatrix& b,
                                             const ToleranceConfig& tol = {}) {
    detail::check_pair_rows(a, b, "range_intersection");
    if (a.size() == 0 || b.size() == 0) throw EmptyMatrix();
    const Eigen::Index p = a.cols(), q = b.cols();
    IntersectionReport r;

    const ComplexMatrix t = hstack(a, -b);
    const ProjectionQuad qt = projection_quad(t, tol);
    r.p = qt.n_a;
    r.x = r.p.topLeftCorner(p, p);
    r.z = r.p.bottomLeftCorner(q, p);
    r.y = r.p.bottomRightCorner(q, q);
    const ComplexMatrix zstar = r.p.topRightCorner(p, q);

    r.projection_residual = std::max(frobenius(r.p * r.p - r.p), hermitian_defect(r.p));
    r.kernel_residual = relative_to(frobenius(t * r.p), frobenius(t));
    r.block_identity_residual = std::max(frobenius(r.x * r.x + r.z.adjoint() * r.z - r.x),
                                         frobenius(r.y * r.y + r.z * r.z.adjoint() - r.y));

    const ComplexMatrix ax = a * r.x;
    const ComplexMatrix azs = a * zstar;
    const double ab_scale = frobenius(a) + frobenius(b);
    r.ax_bz_residual = relative_to(std::max(frobenius(ax - b * r.z), frobenius(azs - b * r.y)), ab_scale);

    const ComplexMatrix spanning = hstack(ax, azs);
    const SvdResult sw = svd(spanning);
    // Columns of [AX AZ*] are A applied to a contraction, so their scale is
    // ||A||; rank them against that rather than their own largest value.
    const double a_norm = spectral_norm(a);
    const double cut = std::max(sw.threshold(tol),
                                a_norm * tol.rank_rel * static_cast<double>(std::max(spanning.rows(), spanning.cols())));
    for (Eigen::Index i = 0; i < sw.singular_values.size(); ++i) {
        if (sw.singular_values(i) > cut) ++r.dim;
    }
    r.intersection_basis = sw.u.leftCols(static_cast<Eigen::Index>(r.dim));

    const std::size_t rank_a = numerical_rank(a, tol);
    const std::size_t rank_b = numerical_rank(b, tol);
    const std::size_t rank_ab = numerical_rank(hstack(a, b), tol);
    r.rank_formula_dim = rank_a + rank_b - rank_ab;

    const ComplexMatrix p_int = r.intersection_basis * r.intersection_basis.adjoint();
    const double a2 = a_norm * a_norm;
    const double b_norm = spectral_norm(b);
    const double b2 = b_norm * b_norm;
    // X and Y inherit the kernel projector's error, which grows with the
    // condition number of [A -B] on its numerical range.
    const SvdResult st = svd(t);
    const std::size_t rank_t = st.rank(tol);
    const double kappa =
        rank_t > 0 ? st.singular_values(0) / st.singular_values(static_cast<Eigen::Index>(rank_t) - 1) : 1.0;
    const ComplexMatrix sqrt_axa = psd_sqrt(a * r.x * a.adjoint(), a2 * kappa);
    const ComplexMatrix sqrt_byb = psd_sqrt(b * r.y * b.adjoint(), b2 * kappa);
    r.sqrt_axa_in_intersection = range_inclusion_with(sqrt_axa, r.intersection_basis, p_int, tol, a_norm);
    r.sqrt_byb_in_intersection = range_inclusion_with(sqrt_byb, r.intersection_basis, p_int, tol, b_norm);

    const ComplexMatrix q_s = projection_quad(hstack(a, b), tol).n_a;
    const ComplexMatrix outside = identity(p + q) - q_s;
    r.pn_s_invariant_residual = frobenius(outside * r.p * q_s);
    return r;
}

/// Nonzero X, Y >= 0 and Z with AXA^* + BYB^* = CZ, given
/// 0 != R(A) ∩ R(B) ⊆ R(C). X and Y are the diagonal blocks of the kernel
/// projection of [A -B], compressed to the co-ranges of A and B; Z is the reduced solution of CZ = AXA^* + BYB^*.
inline CzSolution solve_congruence_cz(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                      const ToleranceConfig& tol = {}) {
    detail::check_pair_rows(a, b, "solve_congruence_cz");
    if (c.rows() != a.rows()) throw DimensionMismatch("solve_congruence_cz: C must have the row count of A");
    require_finite(c, "C");

    CzSolution s;
    s.intersection = range_intersection(a, b, tol);
    const IntersectionReport& ir = s.intersection;
    if (ir.dim == 0) throw EmptyIntersection();
    s.intersection_in_c = range_inclusion(ir.intersection_basis, c, tol);
    if (!s.intersection_in_c.holds) throw IntersectionNotInRangeC(s.intersection_in_c.residual);
    if (ir.pn_s_invariant_residual > tol.residual_rel) {
        throw HypothesisViolated("P N(S) in N(S)", ir.pn_s_invariant_residual);
    }

    // Compress the blocks to N(A)^⊥ and N(B)^⊥: AXA^* and BYB^* are unchanged
    // and the kernel directions contribute nothing.
    const ComplexMatrix pa = projection_quad(a, tol).p_astar;
    const ComplexMatrix pb = projection_quad(b, tol).p_astar;
    s.x = pa * ir.x * pa;
    s.y = pb * ir.y * pb;
    s.rhs = a * s.x * a.adjoint() + b * s.y * b.adjoint();
    s.z = pinv(c, tol) * s.rhs;
    s.residual = relative_to(frobenius(c * s.z - s.rhs), frobenius(s.rhs));

    const double scale = frobenius(a) + frobenius(b) + frobenius(c);
    if (frobenius(s.x) <= 1e-10 * scale || frobenius(s.y) <= 1e-10 * scale || frobenius(s.z) <= 1e-10 * scale) {
        throw NumericalAnomaly("solve_congruence_cz: a factor vanished despite a nonzero intersection");
    }
    return s;
}

}  // namespace opeq
