#pragma once

// AX = C: reduced solutions, the majorization factor lambda with
// CC^* <= lambda AA^*, the CC^* = lambda AA^* solvability theorem and the
// R(T) = R(|T^*|) corollary.
//
// Only the direction "AX = C solvable => CC^* <= lambda AA^*" is implemented
// and certified here.

#include <optional>

#include "opeq/kernel.hpp"
#include "opeq/projections.hpp"

namespace opeq {

struct ReducedSolutionReport {
    ComplexMatrix d;                  ///< the reduced solution pinv(A)·C
    double residual = 0.0;            ///< ||A·d - C||_F / ||C||_F
    double reduced_certificate = 0.0; ///< ||d - P_{A^*}·d||_F
    double lambda_factor = 0.0;       ///< ||d||_2^2; mu = sqrt(lambda_factor)
};

/// Smallest eigenvalue of lambda·AA^* - CC^*.
inline double majorization_margin(const ComplexMatrix& a, const ComplexMatrix& c, double lambda) {
    if (a.rows() != c.rows()) throw DimensionMismatch("majorization: row counts differ");
    return min_eigenvalue(lambda * (a * a.adjoint()) - c * c.adjoint());
}

/// PSD probe for CC^* <= lambda AA^* with relative slack:
/// min eig(lambda(1 + slack)·AA^* - CC^*) >= -slack·||AA^*||_2.
inline bool majorization_holds(const ComplexMatrix& a, const ComplexMatrix& c, double lambda, double slack = 1e-8) {
    const double aa = spectral_norm(a * a.adjoint());
    return majorization_margin(a, c, lambda * (1.0 + slack)) >= -slack * aa;
}

inline void require_same_rows(const ComplexMatrix& a, const ComplexMatrix& c, const char* op) {
    if (a.rows() != c.rows()) {
        throw DimensionMismatch(std::string(op) + ": A has " + std::to_string(a.rows()) + " rows, C has " +
                                std::to_string(c.rows()));
    }
}

/// The unique solution of AX = C with R(X) ⊆ N(A)^⊥. Throws
/// RangeNotContained when R(C) ⊄ R(A), i.e. AX = C has no solution.
inline ReducedSolutionReport reduced_solution(const ComplexMatrix& a, const ComplexMatrix& c,
                                              const ToleranceConfig& tol = {}) {
    require_same_rows(a, c, "reduced_solution");
    require_finite(a, "A");
    require_finite(c, "C");
    const ProjectionQuad qa = projection_quad(a, tol);
    const RangeDecision inc = range_inclusion_with(c, a, qa.p_a, tol);
    if (!inc.holds) throw RangeNotContained(inc.residual);

    ReducedSolutionReport r;
    r.d = pinv(a, tol) * c;
    r.residual = relative_to(frobenius(a * r.d - c), frobenius(c));
    r.reduced_certificate = frobenius(r.d - qa.p_astar * r.d);
    const double top = spectral_norm(r.d);
    r.lambda_factor = top * top;
    return r;
}

/// lambda = ||pinv(A)·C||_2^2 when AX = C is solvable, otherwise no value.
/// The returned lambda is always certified by the PSD probe.
inline std::optional<double> douglas_factor(const ComplexMatrix& a, const ComplexMatrix& c,
                                            const ToleranceConfig& tol = {}) {
    require_same_rows(a, c, "douglas_factor");
    const RangeDecision inc = range_inclusion(c, a, tol);
    if (!inc.holds) return std::nullopt;
    const double top = spectral_norm(pinv(a, tol) * c);
    const double lambda = top * top;
    if (!majorization_holds(a, c, lambda)) {
        throw NumericalAnomaly("douglas_factor: lambda = " + std::to_string(lambda) + " fails the PSD probe");
    }
    return lambda;
}

/// Solves AX = C under the hypothesis CC^* = lambda·AA^*.
inline ReducedSolutionReport solve_scaled_equality(const ComplexMatrix& a, const ComplexMatrix& c, double lambda,
                                                   const ToleranceConfig& tol = {}) {
    require_same_rows(a, c, "solve_scaled_equality");
    if (!(lambda > 0.0)) throw InvalidArgument("solve_scaled_equality: lambda must be positive");
    const ComplexMatrix aa = a * a.adjoint();
    const double defect = frobenius(c * c.adjoint() - lambda * aa);
    const double bound = tol.residual_rel * frobenius(aa) * lambda;
    if (defect > bound) {
        throw HypothesisViolated("CC* = lambda AA*", relative_to(defect, frobenius(aa) * lambda));
    }
    const RangeDecision eq = range_equal(a, c, tol);
    if (!eq.holds) {
        throw NumericalAnomaly("solve_scaled_equality: CC* = lambda AA* holds but R(A) != R(C) (residual " +
                               std::to_string(eq.residual) + ")");
    }
    try {
        return reduced_solution(a, c, tol);
    } catch (const RangeNotContained& e) {
        throw NumericalAnomaly(std::string("solve_scaled_equality: ") + e.what());
    }
}

/// R(T) = R(|T^*|) with |T^*| = (TT^*)^{1/2}. Holds for every T.
inline RangeDecision polar_range_check(const ComplexMatrix& t, const ToleranceConfig& tol = {}) {
    if (t.size() == 0) throw EmptyMatrix();
    const ComplexMatrix abs_tstar = psd_sqrt(t * t.adjoint());
    return range_equal(t, abs_tstar, tol);
}

}  // namespace opeq
