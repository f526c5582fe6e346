#pragma once

// The Hilbert C*-module E = A^n over A = M_k(C).
//
// An element of E is n stacked k x k blocks, stored as an (n*k) x k matrix.
// The right action of a in A is x·a (block-wise x_i·a), the A-valued inner
// product is <x, y> = x^* y, and an adjointable map E^n -> E^m is an
// (m*k) x (n*k) matrix acting by left multiplication.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>

#include "opeq/kernel.hpp"
#include "opeq/random.hpp"

namespace opeq {

class ModuleContext {
public:
    ModuleContext(std::size_t k, std::size_t n) : k_(k), n_(n) {
        if (k == 0 || n == 0) throw InvalidArgument("module context requires k >= 1 and n >= 1");
    }

    std::size_t k() const { return k_; }
    std::size_t n() const { return n_; }
    Eigen::Index flat_dim() const { return static_cast<Eigen::Index>(k_ * n_); }

    friend bool operator==(const ModuleContext&, const ModuleContext&) = default;

    std::string describe() const { return "(k=" + std::to_string(k_) + ", n=" + std::to_string(n_) + ")"; }

private:
    std::size_t k_;
    std::size_t n_;
};

/// An element of the coefficient algebra M_k(C).
class AlgebraElement {
public:
    explicit AlgebraElement(ComplexMatrix data) : data_(std::move(data)) {
        if (data_.rows() != data_.cols() || data_.rows() == 0) {
            throw DimensionMismatch("algebra element must be a nonempty square k x k block");
        }
        require_finite(data_, "algebra element");
    }

    std::size_t k() const { return static_cast<std::size_t>(data_.rows()); }
    const ComplexMatrix& data() const { return data_; }

private:
    ComplexMatrix data_;
};

class ModuleElement {
public:
    ModuleElement(ModuleContext ctx, ComplexMatrix data) : ctx_(ctx), data_(std::move(data)) {
        if (data_.rows() != ctx_.flat_dim() || data_.cols() != static_cast<Eigen::Index>(ctx_.k())) {
            throw DimensionMismatch("module element for " + ctx_.describe() + " must be " +
                                    std::to_string(ctx_.flat_dim()) + "x" + std::to_string(ctx_.k()));
        }
        require_finite(data_, "module element");
    }

    static ModuleElement zero(ModuleContext ctx) {
        return {ctx, zeros(ctx.flat_dim(), static_cast<Eigen::Index>(ctx.k()))};
    }

    static ModuleElement random(ModuleContext ctx, Xoshiro256& rng) {
        return {ctx, gaussian_matrix(ctx.flat_dim(), static_cast<Eigen::Index>(ctx.k()), rng)};
    }

    const ModuleContext& context() const { return ctx_; }
    const ComplexMatrix& data() const { return data_; }

    /// Block i (0-based) as a k x k matrix.
    ComplexMatrix block(std::size_t i) const {
        const auto k = static_cast<Eigen::Index>(ctx_.k());
        return data_.middleRows(static_cast<Eigen::Index>(i) * k, k);
    }

    /// Right module action (x·a)_i = x_i·a.
    ModuleElement act(const AlgebraElement& a) const {
        if (a.k() != ctx_.k()) throw ContextMismatch("right action: algebra block size differs from module");
        return {ctx_, data_ * a.data()};
    }

private:
    ModuleContext ctx_;
    ComplexMatrix data_;
};

class ModuleOperator {
public:
    ModuleOperator(ModuleContext domain, ModuleContext codomain, ComplexMatrix data)
        : domain_(domain), codomain_(codomain), data_(std::move(data)) {
        if (domain_.k() != codomain_.k()) throw ContextMismatch("operator domain and codomain use different algebras");
        if (data_.rows() != codomain_.flat_dim() || data_.cols() != domain_.flat_dim()) {
            throw DimensionMismatch("operator data must be " + std::to_string(codomain_.flat_dim()) + "x" +
                                    std::to_string(domain_.flat_dim()));
        }
        require_finite(data_, "module operator");
    }

    const ModuleContext& domain() const { return domain_; }
    const ModuleContext& codomain() const { return codomain_; }
    const ComplexMatrix& data() const { return data_; }

    ModuleElement apply(const ModuleElement& x) const {
        if (!(x.context() == domain_)) {
            throw ContextMismatch("operator domain " + domain_.describe() + " vs element " + x.context().describe());
        }
        return {codomain_, data_ * x.data()};
    }

    ModuleElement operator()(const ModuleElement& x) const { return apply(x); }

private:
    ModuleContext domain_;
    ModuleContext codomain_;
    ComplexMatrix data_;
};

/// <x, y> = x^* y, conjugate-linear in the first slot.
inline AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y) {
    if (!(x.context() == y.context())) {
        throw ContextMismatch("inner product of elements from " + x.context().describe() + " and " +
                              y.context().describe());
    }
    return AlgebraElement(x.data().adjoint() * y.data());
}

/// |x| = <x, x>^{1/2}.
inline AlgebraElement modulus(const ModuleElement& x) { return AlgebraElement(psd_sqrt(inner_product(x, x).data())); }

/// ||x|| = ||<x, x>||^{1/2} (spectral norm in M_k).
inline double module_norm(const ModuleElement& x) { return std::sqrt(spectral_norm(inner_product(x, x).data())); }

inline ModuleOperator adjoint(const ModuleOperator& a) { return {a.codomain(), a.domain(), a.data().adjoint()}; }

struct LinearityReport {
    std::size_t trials = 0;
    double max_deviation = 0.0;  ///< max over trials of ||f(x·a) - f(x)·a||_F / scale
    bool pass = true;
};

/// Samples random (x, a) and measures how far `f` is from A-linearity,
/// f(x·a) = f(x)·a. Passes when every relative deviation is at most 1e-12.
template <class Map>
    requires std::invocable<const Map&, const ModuleElement&>
LinearityReport check_module_linearity(const Map& f, const ModuleContext& domain, std::size_t trials,
                                       std::uint64_t seed) {
    if (trials == 0) throw InvalidArgument("check_module_linearity needs at least one trial");
    Xoshiro256 rng(seed);
    LinearityReport report;
    report.trials = trials;
    const auto k = static_cast<Eigen::Index>(domain.k());
    for (std::size_t t = 0; t < trials; ++t) {
        const ModuleElement x = ModuleElement::random(domain, rng);
        const AlgebraElement a(gaussian_matrix(k, k, rng));
        const ModuleElement lhs = f(x.act(a));
        const ModuleElement rhs = f(x).act(a);
        const double scale = std::max({frobenius(lhs.data()), frobenius(rhs.data()),
                                       std::numeric_limits<double>::min()});
        report.max_deviation = std::max(report.max_deviation, frobenius(lhs.data() - rhs.data()) / scale);
    }
    report.pass = report.max_deviation <= 1e-12;
    return report;
}

inline LinearityReport check_module_linearity(const ModuleOperator& a, std::size_t trials, std::uint64_t seed) {
    return check_module_linearity([&a](const ModuleElement& x) { return a.apply(x); }, a.domain(), trials, seed);
}

}  // namespace opeq
