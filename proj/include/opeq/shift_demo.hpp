#pragma once

// Finite truncations of the weighted shift (a_i) -> (0, a_2/1, 0, a_4/2, ...).
// Each truncation has closed range, but its smallest nonzero singular value
// 1/n tends to zero and ||pinv(T_n)|| = n grows without bound.

#include <cstddef>
#include <vector>

#include "opeq/kernel.hpp"

namespace opeq {

/// 2n x 2n with (T_n x)_{2j} = x_{2j} / j (1-based), i.e. zero-based entry
/// (2j-1, 2j-1) = 1/j.
inline ComplexMatrix truncated_shift(std::size_t n) {
    if (n == 0) throw InvalidArgument("truncated_shift: n must be at least 1");
    const auto dim = static_cast<Eigen::Index>(2 * n);
    ComplexMatrix t = zeros(dim, dim);
    for (std::size_t j = 1; j <= n; ++j) {
        const auto idx = static_cast<Eigen::Index>(2 * j - 1);
        t(idx, idx) = 1.0 / static_cast<double>(j);
    }
    return t;
}

struct ShiftDemoReport {
    std::size_t n = 0;
    std::vector<double> singular_values;  ///< descending, all 2n of them
    double min_nonzero_sigma = 0.0;
    std::size_t rank = 0;
    double pinv_norm = 0.0;
};

inline ShiftDemoReport truncated_shift_demo(std::size_t n, const ToleranceConfig& tol = {}) {
    const ComplexMatrix t = truncated_shift(n);
    const SvdResult s = svd(t);
    ShiftDemoReport r;
    r.n = n;
    r.singular_values.assign(s.singular_values.data(), s.singular_values.data() + s.singular_values.size());
    r.rank = s.rank(tol);
    r.min_nonzero_sigma = r.rank > 0 ? r.singular_values[r.rank - 1] : 0.0;
    r.pinv_norm = spectral_norm(pinv(t, tol));
    return r;
}

}  // namespace opeq
