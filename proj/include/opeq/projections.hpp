#pragma once

// The four range projections of an operator and the tolerance-based range
// decisions (inclusion, equality, numerical rank) built on them.

#include <algorithm>
#include <cstddef>

#include "opeq/kernel.hpp"

namespace opeq {

/// Projections attached to one operator A : C^cols -> C^rows.
struct ProjectionQuad {
    ComplexMatrix p_a;      ///< onto R(A), rows x rows
    ComplexMatrix p_astar;  ///< onto R(A^*), cols x cols
    ComplexMatrix n_a;      ///< I - p_astar, onto N(A)
    ComplexMatrix n_astar;  ///< I - p_a, onto N(A^*)
    std::size_t rank = 0;
};

/// Ranks consulted by a range decision. `joint` is the rank of the
/// concatenation [target subject]; inclusion by rank means joint == target.
struct RankData {
    std::size_t subject = 0;
    std::size_t target = 0;
    std::size_t joint = 0;

    bool corroborates_inclusion() const { return joint == target; }
};

struct RangeDecision {
    bool holds = true;
    double residual = 0.0;  ///< relative
    RankData ranks;
};

inline std::size_t numerical_rank(const ComplexMatrix& a, const ToleranceConfig& tol = {}) {
    if (a.size() == 0) return 0;
    return svd(a).rank(tol);
}

/// Built from the rank-truncated SVD factors: p_a = U_r U_r^*, p_astar = V_r V_r^*.
inline ProjectionQuad projection_quad(const ComplexMatrix& a, const ToleranceConfig& tol = {}) {
    ProjectionQuad q;
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    if (a.size() == 0) {
        q.p_a = zeros(m, m);
        q.p_astar = zeros(n, n);
        q.n_a = identity(n);
        q.n_astar = identity(m);
        return q;
    }
    const SvdResult s = svd(a);
    q.rank = s.rank(tol);
    const auto r = static_cast<Eigen::Index>(q.rank);
    const auto ur = s.u.leftCols(r);
    const auto vr = s.v.leftCols(r);
    q.p_a = ur * ur.adjoint();
    q.p_astar = vr * vr.adjoint();
    q.n_a = identity(n) - q.p_astar;
    q.n_astar = identity(m) - q.p_a;
    return q;
}

/// Decides R(subject) ⊆ R(target) against an already computed projection
/// onto R(target).
///
/// The residual is ||(I - P)·subject||_F / max(||subject||_F, reference_scale).
/// Pass the norm of the operator a composite subject was derived from as
/// `reference_scale`; a subject that is itself roundoff then counts as zero.
inline RangeDecision range_inclusion_with(const ComplexMatrix& subject, const ComplexMatrix& target,
                                          const ComplexMatrix& p_target, const ToleranceConfig& tol,
                                          double reference_scale = 0.0) {
    if (subject.rows() != target.rows() || p_target.rows() != subject.rows()) {
        throw DimensionMismatch("range_inclusion: row counts differ (" + std::to_string(subject.rows()) + " vs " +
                                std::to_string(target.rows()) + ")");
    }
    RangeDecision d;
    d.ranks.subject = numerical_rank(subject, tol);
    d.ranks.target = numerical_rank(target, tol);
    d.ranks.joint = numerical_rank(hstack(target, subject), tol);
    const double scale = std::max(frobenius(subject), reference_scale);
    if (scale == 0.0) return d;
    d.residual = frobenius(subject - p_target * subject) / scale;
    d.holds = d.residual <= tol.residual_rel;
    return d;
}

/// R(c) ⊆ R(a).
inline RangeDecision range_inclusion(const ComplexMatrix& c, const ComplexMatrix& a, const ToleranceConfig& tol = {},
                                     double reference_scale = 0.0) {
    if (c.rows() != a.rows()) {
        throw DimensionMismatch("range_inclusion: row counts differ (" + std::to_string(c.rows()) + " vs " +
                                std::to_string(a.rows()) + ")");
    }
    return range_inclusion_with(c, a, projection_quad(a, tol).p_a, tol, reference_scale);
}

/// R(a) = R(b): inclusion both ways; the residual is the larger of the two.
inline RangeDecision range_equal(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    if (a.rows() != b.rows()) throw DimensionMismatch("range_equal: row counts differ");
    const RangeDecision ab = range_inclusion(a, b, tol);
    const RangeDecision ba = range_inclusion(b, a, tol);
    RangeDecision d;
    d.holds = ab.holds && ba.holds;
    d.residual = std::max(ab.residual, ba.residual);
    d.ranks.subject = ab.ranks.subject;
    d.ranks.target = ab.ranks.target;
    d.ranks.joint = ab.ranks.joint;
    return d;
}

}  // namespace opeq
