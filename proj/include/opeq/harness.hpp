#pragma once

// Seeded instance generation with prescribed range relationships, and
// certificate verification of candidate solutions.
//
// Every generated matrix is built from explicit factors (isometries from the
// seeded generator, singular values log-uniform in [1e-2, 1]) so the range
// relationships a family promises hold by construction, not by tolerance.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opeq/congruence.hpp"
#include "opeq/douglas.hpp"
#include "opeq/kernel.hpp"
#include "opeq/projections.hpp"
#include "opeq/random.hpp"
#include "opeq/sylvester.hpp"

namespace opeq {

enum class Family {
    DouglasSolvable,
    SylvesterSolvable,
    SylvesterUnsolvable,
    OrthogonalPair,
    CongruenceSolvable,
    CongruenceCriterionViolating,
    CongruenceCz,
    EqualRangePair,
    ScaledEqualityPair,
};

inline constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames{{
    {Family::DouglasSolvable, "douglas-solvable"},
    {Family::SylvesterSolvable, "sylvester-solvable"},
    {Family::SylvesterUnsolvable, "sylvester-unsolvable"},
    {Family::OrthogonalPair, "orthogonal-pair"},
    {Family::CongruenceSolvable, "congruence-solvable"},
    {Family::CongruenceCriterionViolating, "congruence-criterion-violating"},
    {Family::CongruenceCz, "congruence-cz"},
    {Family::EqualRangePair, "equal-range-pair"},
    {Family::ScaledEqualityPair, "scaled-equality-pair"},
}};

inline std::string_view to_string(Family f) {
    for (const auto& [family, name] : kFamilyNames)
        if (family == f) return name;
    return "unknown";
}

inline Family parse_family(std::string_view name) {
    for (const auto& [family, n] : kFamilyNames)
        if (n == name) return family;
    throw InvalidArgument("unknown instance family '" + std::string(name) + "'");
}

/// Module-level shape. Matrices are flattened: an operator between A^p and
/// A^m with A = M_k is (m*k) x (p*k).
struct Shape {
    std::size_t m = 4;
    std::size_t n = 4;
    std::size_t p = 4;
    std::size_t q = 4;
    std::size_t k = 1;
};

/// Rank targets apply to flattened matrices. Recognized keys: a, b, c,
/// x0, y0, s (intersection dimension for the congruence families).
struct InstanceSpec {
    std::uint64_t seed = 0;
    Shape shape;
    std::map<std::string, std::size_t> ranks;
    Family family = Family::SylvesterSolvable;
    double lambda = 4.0;  ///< scaled-equality-pair only
};

using NamedOperators = std::map<std::string, ComplexMatrix>;

namespace detail {

struct Factored {
    ComplexMatrix matrix;
    ComplexMatrix left;   ///< orthonormal basis of the range
    ComplexMatrix right;  ///< orthonormal basis of the co-range
};

inline RealVector log_uniform_sigma(Eigen::Index r, Xoshiro256& rng) {
    RealVector sigma(r);
    for (Eigen::Index i = 0; i < r; ++i) sigma(i) = rng.log_uniform(1e-2, 1.0);
    return sigma;
}

inline Factored factored(Eigen::Index rows, Eigen::Index cols, Eigen::Index rank, Xoshiro256& rng) {
    Factored f;
    f.left = random_isometry(rows, rank, rng);
    f.right = random_isometry(cols, rank, rng);
    f.matrix = f.left * log_uniform_sigma(rank, rng).asDiagonal() * f.right.adjoint();
    return f;
}

class RankTable {
public:
    explicit RankTable(const InstanceSpec& spec) : ranks_(spec.ranks) {
        static constexpr std::array<std::string_view, 6> known{"a", "b", "c", "x0", "y0", "s"};
        for (const auto& [key, value] : ranks_) {
            bool ok = false;
            for (auto k : known) ok = ok || key == k;
            if (!ok) throw InfeasibleSpec("unknown rank key '" + key + "'");
        }
    }

    Eigen::Index get(const std::string& key, std::size_t fallback) const {
        auto it = ranks_.find(key);
        return static_cast<Eigen::Index>(it == ranks_.end() ? fallback : it->second);
    }

    bool has(const std::string& key) const { return ranks_.count(key) != 0; }

private:
    std::map<std::string, std::size_t> ranks_;
};

inline void require_rank(Eigen::Index r, Eigen::Index rows, Eigen::Index cols, const char* name) {
    if (r < 0 || r > std::min(rows, cols)) {
        throw InfeasibleSpec(std::string("rank of ") + name + " = " + std::to_string(r) + " incompatible with " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
}

/// Gaussian unless a rank target is given.
inline ComplexMatrix hidden(const RankTable& ranks, const std::string& key, Eigen::Index rows, Eigen::Index cols,
                            Xoshiro256& rng) {
    if (!ranks.has(key)) return gaussian_matrix(rows, cols, rng);
    const Eigen::Index r = ranks.get(key, 0);
    require_rank(r, rows, cols, key.c_str());
    return factored(rows, cols, r, rng).matrix;
}

inline std::size_t deficient(std::size_t rows, std::size_t cols) {
    const std::size_t lo = std::min(rows, cols);
    return lo > 1 ? lo - 1 : 1;
}

inline std::size_t half(std::size_t rows, std::size_t cols) { return std::max<std::size_t>(1, (std::min(rows, cols) + 1) / 2); }

}  // namespace detail

/// Deterministic in `spec.seed`. Draws happen in a fixed order per family.
inline NamedOperators generate(const InstanceSpec& spec) {
    const Shape& sh = spec.shape;
    if (sh.k == 0 || sh.m == 0 || sh.n == 0 || sh.p == 0 || sh.q == 0) {
        throw InfeasibleSpec("shape entries must be positive");
    }
    const auto M = static_cast<Eigen::Index>(sh.m * sh.k);
    const auto N = static_cast<Eigen::Index>(sh.n * sh.k);
    const auto P = static_cast<Eigen::Index>(sh.p * sh.k);
    const auto Q = static_cast<Eigen::Index>(sh.q * sh.k);
    const detail::RankTable ranks(spec);
    Xoshiro256 rng(spec.seed);
    NamedOperators out;

    using detail::deficient;
    using detail::half;
    using detail::require_rank;

    switch (spec.family) {
    case Family::DouglasSolvable: {
        const Eigen::Index ra = ranks.get("a", deficient(M, P));
        require_rank(ra, M, P, "A");
        const ComplexMatrix a = detail::factored(M, P, ra, rng).matrix;
        const ComplexMatrix x0 = detail::hidden(ranks, "x0", P, N, rng);
        out["A"] = a;
        out["X0"] = x0;
        out["C"] = a * x0;
        break;
    }
    case Family::SylvesterSolvable:
    case Family::SylvesterUnsolvable: {
        const Eigen::Index ra = ranks.get("a", deficient(M, P));
        const Eigen::Index rb = ranks.get("b", deficient(Q, N));
        require_rank(ra, M, P, "A");
        require_rank(rb, Q, N, "B");
        const detail::Factored fa = detail::factored(M, P, ra, rng);
        const detail::Factored fb = detail::factored(Q, N, rb, rng);
        const ComplexMatrix x0 = detail::hidden(ranks, "x0", P, N, rng);
        const ComplexMatrix y0 = detail::hidden(ranks, "y0", M, Q, rng);
        ComplexMatrix c = fa.matrix * x0 + y0 * fb.matrix;
        out["A"] = fa.matrix;
        out["B"] = fb.matrix;
        if (spec.family == Family::SylvesterSolvable) {
            out["X0"] = x0;
            out["Y0"] = y0;
        } else {
            if (ra >= M || rb >= N) {
                throw InfeasibleSpec("sylvester-unsolvable needs rank A < rows(A) and rank B < cols(B)");
            }
            ComplexMatrix e = gaussian_matrix(M, N, rng);
            e /= e.norm();
            const ComplexMatrix n_astar = identity(M) - fa.left * fa.left.adjoint();
            const ComplexMatrix n_b = identity(N) - fb.right * fb.right.adjoint();
            ComplexMatrix injected = n_astar * e * n_b;
            const double target = c.norm() > 0.0 ? c.norm() : 1.0;
            injected *= target / injected.norm();
            c += injected;
        }
        out["C"] = c;
        break;
    }
    case Family::OrthogonalPair: {
        const Eigen::Index ra = ranks.get("a", std::max<std::size_t>(1, std::min<std::size_t>(M / 2, P)));
        const Eigen::Index rb = ranks.get("b", std::max<Eigen::Index>(1, std::min(M - ra, Q)));
        require_rank(ra, M, P, "A");
        require_rank(rb, M, Q, "B");
        if (ra + rb > M) throw InfeasibleSpec("orthogonal-pair needs rank A + rank B <= rows");
        const ComplexMatrix basis = random_isometry(M, ra + rb, rng);
        const ComplexMatrix va = random_isometry(P, ra, rng);
        const ComplexMatrix vb = random_isometry(Q, rb, rng);
        const ComplexMatrix a = basis.leftCols(ra) * detail::log_uniform_sigma(ra, rng).asDiagonal() * va.adjoint();
        const ComplexMatrix b = basis.rightCols(rb) * detail::log_uniform_sigma(rb, rng).asDiagonal() * vb.adjoint();
        const ComplexMatrix x0 = detail::hidden(ranks, "x0", P, N, rng);
        const ComplexMatrix y0 = detail::hidden(ranks, "y0", Q, N, rng);
        out["A"] = a;
        out["B"] = b;
        out["X0"] = x0;
        out["Y0"] = y0;
        out["C"] = a * x0 + b * y0;
        break;
    }
    case Family::EqualRangePair: {
        const Eigen::Index ra = ranks.get("a", deficient(M, P));
        require_rank(ra, M, P, "A");
        const ComplexMatrix a = detail::factored(M, P, ra, rng).matrix;
        const ComplexMatrix mix = detail::factored(P, P, P, rng).matrix;
        out["A"] = a;
        out["M"] = mix;
        out["B"] = a * mix;
        break;
    }
    case Family::ScaledEqualityPair: {
        if (!(spec.lambda > 0.0)) throw InfeasibleSpec("scaled-equality-pair needs lambda > 0");
        const Eigen::Index ra = ranks.get("a", deficient(M, P));
        require_rank(ra, M, P, "A");
        const ComplexMatrix a = detail::factored(M, P, ra, rng).matrix;
        const ComplexMatrix u = random_isometry(P, P, rng);
        out["A"] = a;
        out["U"] = u;
        out["C"] = std::sqrt(spec.lambda) * a * u;
        break;
    }
    case Family::CongruenceSolvable:
    case Family::CongruenceCriterionViolating: {
        // In an orthonormal basis of C^M: columns [0, s) span R(A) ∩ R(B),
        // [s, ra) the rest of R(A), [ra, ra + rb - s) the rest of R(B).
        // C maps (A-only -> shared) and (shared -> B-only); this satisfies
        // R(C) ⊆ R(B), R(C^*) ⊆ R(A), P_A C P_B = 0 and N_{A^*} C N_{B^*} = 0.
        // The violating family adds an (A-only -> B-only) block, which breaks
        // only the last identity.
        const bool violating = spec.family == Family::CongruenceCriterionViolating;
        const Eigen::Index ra = ranks.get("a", half(M, P));
        const Eigen::Index rb = ranks.get("b", half(M, Q));
        require_rank(ra, M, P, "A");
        require_rank(rb, M, Q, "B");
        const Eigen::Index s = ranks.get("s", static_cast<std::size_t>(std::max<Eigen::Index>(1, ra + rb - M)));
        if (s < 1 || s > std::min(ra, rb) || ra + rb - s > M) {
            throw InfeasibleSpec("congruence family: shared dimension " + std::to_string(s) + " is infeasible");
        }
        if (violating ? (ra == s || rb == s) : (ra == s && rb == s)) {
            throw InfeasibleSpec("congruence family: ranks leave no room for a nonzero C");
        }
        const ComplexMatrix basis = random_isometry(M, M, rng);
        const ComplexMatrix a = basis.leftCols(ra) * detail::factored(ra, P, ra, rng).matrix;
        ComplexMatrix b_cols(M, rb);
        b_cols << basis.leftCols(s), basis.middleCols(ra, rb - s);
        const ComplexMatrix b = b_cols * detail::factored(rb, Q, rb, rng).matrix;

        ComplexMatrix core = zeros(M, M);
        core.block(0, s, s, ra - s) = gaussian_matrix(s, ra - s, rng);
        core.block(ra, 0, rb - s, s) = gaussian_matrix(rb - s, s, rng);
        if (violating) core.block(ra, s, rb - s, ra - s) = gaussian_matrix(rb - s, ra - s, rng);
        out["A"] = a;
        out["B"] = b;
        out["C"] = basis * core * basis.adjoint();
        break;
    }
    case Family::CongruenceCz: {
        // R(A) = W ⊕ A_rest and R(B) = W ⊕ B_rest with W, A_rest, B_rest
        // mutually orthogonal. A and B share the block F on W up to a unitary,
        // so AA^* and BB^* agree on W; this makes the kernel projection of
        // [A -B] leave N([A B]) invariant. R(C) contains W.
        const Eigen::Index s = ranks.get("s", 1);
        const Eigen::Index ra = ranks.get("a", std::max<std::size_t>(static_cast<std::size_t>(s), half(M, P)));
        const Eigen::Index rb = ranks.get("b", std::max<std::size_t>(static_cast<std::size_t>(s), half(M, Q)));
        const Eigen::Index rc = ranks.get("c", std::min(M, N));
        require_rank(ra, M, P, "A");
        require_rank(rb, M, Q, "B");
        require_rank(rc, M, N, "C");
        if (s < 1 || s > std::min({ra, rb, rc}) || ra + rb - s > M) {
            throw InfeasibleSpec("congruence-cz: intersection dimension " + std::to_string(s) + " is infeasible");
        }
        const ComplexMatrix basis = random_isometry(M, ra + rb - s, rng);
        const ComplexMatrix w = basis.leftCols(s);
        const ComplexMatrix f = detail::factored(s, s, s, rng).matrix;
        const ComplexMatrix u = random_isometry(s, s, rng);
        ComplexMatrix a_cols(M, ra);
        a_cols << w * f, basis.middleCols(s, ra - s) * detail::log_uniform_sigma(ra - s, rng).asDiagonal();
        ComplexMatrix b_cols(M, rb);
        b_cols << w * f * u, basis.middleCols(ra, rb - s) * detail::log_uniform_sigma(rb - s, rng).asDiagonal();
        const ComplexMatrix va = random_isometry(P, ra, rng);
        const ComplexMatrix vb = random_isometry(Q, rb, rng);
        ComplexMatrix c_cols(M, rc);
        c_cols << w, gaussian_matrix(M, rc - s, rng);
        const ComplexMatrix vc = random_isometry(N, rc, rng);
        out["A"] = a_cols * va.adjoint();
        out["B"] = b_cols * vb.adjoint();
        out["C"] = c_cols * vc.adjoint();
        break;
    }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certificates

struct CertificateCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool upper_bound = true;  ///< value <= threshold when true, value > threshold otherwise

    bool passed() const { return upper_bound ? value <= threshold : value > threshold; }
};

struct Certificate {
    std::string equation;
    std::vector<CertificateCheck> residuals;
    std::vector<std::pair<std::string, RangeDecision>> decisions;
    std::map<std::string, double> info;  ///< reported, not gating
    bool pass = false;

    const CertificateCheck* find(std::string_view name) const {
        for (const auto& c : residuals)
            if (c.name == name) return &c;
        return nullptr;
    }

    void finalize() {
        pass = true;
        for (const auto& c : residuals) pass = pass && c.passed();
        for (const auto& [name, d] : decisions) pass = pass && d.holds;
    }
};

inline constexpr std::array<std::string_view, 6> kEquationTags{
    "douglas", "sylvester", "orthogonal", "congruence", "congruence-homogeneous", "congruence-cz"};

namespace detail {

inline const ComplexMatrix& need(const NamedOperators& set, const std::string& key, const char* what) {
    auto it = set.find(key);
    if (it == set.end()) throw InvalidArgument(std::string("missing ") + what + " '" + key + "'");
    return it->second;
}

inline void need_shape(const ComplexMatrix& m, Eigen::Index rows, Eigen::Index cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols) {
        throw DimensionMismatch(std::string(name) + " must be " + std::to_string(rows) + "x" + std::to_string(cols) +
                                ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

/// max(0, -min eig(lambda(1 + 1e-8)·TT^* - CC^*)) / ||TT^*||_2.
inline double majorization_deficit(const ComplexMatrix& t, const ComplexMatrix& c, double lambda) {
    const double margin = majorization_margin(t, c, lambda * (1.0 + 1e-8));
    return relative_to(std::max(0.0, -margin), spectral_norm(t * t.adjoint()));
}

inline void psd_checks(Certificate& cert, const ComplexMatrix& m, const std::string& name) {
    const double norm = std::max(frobenius(m), std::numeric_limits<double>::min());
    cert.residuals.push_back({name + "_hermitian_defect", hermitian_defect(m) / norm, 1e-10});
    cert.residuals.push_back({name + "_negative_eigenvalue", std::max(0.0, -min_eigenvalue(m)) / norm, 1e-10});
}

}  // namespace detail

/// Recomputes the defining residual of a tagged equation and its
/// theorem-specific side conditions.
inline Certificate verify(const std::string& tag, const NamedOperators& ops, const NamedOperators& solution,
                          const ToleranceConfig& tol = {}) {
    using detail::need;
    using detail::need_shape;
    Certificate cert;
    cert.equation = tag;

    if (tag == "douglas") {
        const ComplexMatrix& a = need(ops, "A", "operator");
        const ComplexMatrix& c = need(ops, "C", "operator");
        const ComplexMatrix& x = need(solution, "X", "solution");
        need_shape(x, a.cols(), c.cols(), "X");
        if (a.rows() != c.rows()) throw DimensionMismatch("douglas: A and C row counts differ");
        cert.residuals.push_back({"residual", relative_to(frobenius(a * x - c), frobenius(c)), tol.residual_rel});
        const double top = spectral_norm(x);
        const double lambda = top * top;
        cert.residuals.push_back({"majorization_deficit", detail::majorization_deficit(a, c, lambda), 1e-8});
        const ProjectionQuad qa = projection_quad(a, tol);
        cert.info["lambda"] = lambda;
        cert.info["reducedness"] = relative_to(frobenius(x - qa.p_astar * x), frobenius(x));
        cert.decisions.emplace_back("R(C) in R(A)", range_inclusion_with(c, a, qa.p_a, tol));
    } else if (tag == "sylvester") {
        const ComplexMatrix& a = need(ops, "A", "operator");
        const ComplexMatrix& b = need(ops, "B", "operator");
        const ComplexMatrix& c = need(ops, "C", "operator");
        const ComplexMatrix& x = need(solution, "X", "solution");
        const ComplexMatrix& y = need(solution, "Y", "solution");
        need_shape(c, a.rows(), b.cols(), "C");
        need_shape(x, a.cols(), b.cols(), "X");
        need_shape(y, a.rows(), b.rows(), "Y");
        const double cn = frobenius(c);
        cert.residuals.push_back(
            {"residual", relative_to(frobenius(a * x + y * b - c), cn > 0 ? cn : frobenius(a * x) + frobenius(y * b)),
             tol.residual_rel});
        const SylvesterDiagnosis d = diagnose_ax_yb(a, b, c, tol);
        cert.residuals.push_back({"classical_residual", relative_to(d.classical_residual, cn), tol.residual_rel});
        cert.decisions.emplace_back("R(C N_B) in R(A)", d.cond_range_cnb);
        cert.decisions.emplace_back("R(P_B* C*) in R(B*)", d.cond_range_pbc);
    } else if (tag == "orthogonal") {
        const ComplexMatrix& a = need(ops, "A", "operator");
        const ComplexMatrix& b = need(ops, "B", "operator");
        const ComplexMatrix& c = need(ops, "C", "operator");
        const ComplexMatrix& x = need(solution, "X", "solution");
        const ComplexMatrix& y = need(solution, "Y", "solution");
        need_shape(b, a.rows(), b.cols(), "B");
        need_shape(c, a.rows(), c.cols(), "C");
        need_shape(x, a.cols(), c.cols(), "X");
        need_shape(y, b.cols(), c.cols(), "Y");
        cert.residuals.push_back({"residual", relative_to(frobenius(a * x + b * y - c), frobenius(c)), tol.residual_rel});
        cert.residuals.push_back(
            {"hypothesis_astar_b", relative_to(frobenius(a.adjoint() * b), frobenius(a) * frobenius(b)), 1e-10});
        const ComplexMatrix t = hstack(a, b);
        const double top = spectral_norm(vstack(x, y));
        cert.residuals.push_back({"majorization_deficit", detail::majorization_deficit(t, c, top * top), 1e-8});
        cert.info["lambda"] = top * top;
        cert.decisions.emplace_back("R(C) in R(A) + R(B)", range_inclusion(c, t, tol));
    } else if (tag == "congruence" || tag == "congruence-homogeneous") {
        const bool homogeneous = tag == "congruence-homogeneous";
        const ComplexMatrix& a = need(ops, "A", "operator");
        const ComplexMatrix& b = need(ops, "B", "operator");
        const ComplexMatrix c = homogeneous ? zeros(a.rows(), a.rows()) : need(ops, "C", "operator");
        const ComplexMatrix& x = need(solution, "X", "solution");
        const ComplexMatrix& y = need(solution, "Y", "solution");
        need_shape(b, a.rows(), b.cols(), "B");
        need_shape(c, a.rows(), a.rows(), "C");
        need_shape(x, a.cols(), a.cols(), "X");
        need_shape(y, b.cols(), b.cols(), "Y");
        const ComplexMatrix axa = a * x * a.adjoint();
        const ComplexMatrix byb = b * y * b.adjoint();
        const double cn = frobenius(c);
        cert.residuals.push_back({"residual", relative_to(frobenius(axa + byb - c), cn > 0 ? cn : frobenius(axa) + frobenius(byb)),
                                  tol.residual_rel});
        if (!homogeneous) {
            const ProjectionQuad qa = projection_quad(a, tol);
            const ProjectionQuad qb = projection_quad(b, tol);
            cert.decisions.emplace_back("R(C N_B*) in R(A)", range_inclusion_with(c * qb.n_astar, a, qa.p_a, tol, cn));
            cert.decisions.emplace_back("R(C* N_A*) in R(B)",
                                        range_inclusion_with(c.adjoint() * qa.n_astar, b, qb.p_a, tol, cn));
        } else {
            cert.info["x_norm"] = frobenius(x);
            cert.info["y_norm"] = frobenius(y);
        }
    } else if (tag == "congruence-cz") {
        const ComplexMatrix& a = need(ops, "A", "operator");
        const ComplexMatrix& b = need(ops, "B", "operator");
        const ComplexMatrix& c = need(ops, "C", "operator");
        const ComplexMatrix& x = need(solution, "X", "solution");
        const ComplexMatrix& y = need(solution, "Y", "solution");
        const ComplexMatrix& z = need(solution, "Z", "solution");
        need_shape(b, a.rows(), b.cols(), "B");
        need_shape(c, a.rows(), c.cols(), "C");
        need_shape(x, a.cols(), a.cols(), "X");
        need_shape(y, b.cols(), b.cols(), "Y");
        need_shape(z, c.cols(), a.rows(), "Z");
        const ComplexMatrix rhs = a * x * a.adjoint() + b * y * b.adjoint();
        cert.residuals.push_back({"residual", relative_to(frobenius(rhs - c * z), frobenius(rhs)), tol.residual_rel});
        detail::psd_checks(cert, x, "x");
        detail::psd_checks(cert, y, "y");
        const double scale = frobenius(a) + frobenius(b) + frobenius(c);
        cert.residuals.push_back({"x_norm", frobenius(x), 1e-10 * scale, false});
        cert.residuals.push_back({"y_norm", frobenius(y), 1e-10 * scale, false});
        cert.residuals.push_back({"z_norm", frobenius(z), 1e-10 * scale, false});
        cert.decisions.emplace_back("R(AXA* + BYB*) in R(C)", range_inclusion(rhs, c, tol));
    } else {
        throw UnknownEquationTag(tag);
    }
    cert.finalize();
    return cert;
}

}  // namespace opeq
