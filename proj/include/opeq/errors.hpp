#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace opeq {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class EmptyMatrix : public Error {
public:
    EmptyMatrix() : Error("matrix has a zero dimension") {}
};

class NotPSD : public Error {
public:
    using Error::Error;
};

class ContextMismatch : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// AX = C has no solution: R(C) is not contained in R(A).
class RangeNotContained : public Error {
public:
    explicit RangeNotContained(double residual)
        : Error("range inclusion fails (relative residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A theorem's standing hypothesis does not hold for the given operators.
class HypothesisViolated : public Error {
public:
    HypothesisViolated(std::string hypothesis, double residual)
        : Error("hypothesis violated: " + hypothesis + " (residual " + std::to_string(residual) + ")"),
          hypothesis_(std::move(hypothesis)),
          residual_(residual) {}

    const std::string& hypothesis() const noexcept { return hypothesis_; }
    double residual() const noexcept { return residual_; }

private:
    std::string hypothesis_;
    double residual_;
};

class NotSolvable : public Error {
public:
    NotSolvable(std::string condition, double residual)
        : Error("not solvable: " + condition + " fails (residual " + std::to_string(residual) + ")"),
          condition_(std::move(condition)),
          residual_(residual) {}

    const std::string& condition() const noexcept { return condition_; }
    double residual() const noexcept { return residual_; }

private:
    std::string condition_;
    double residual_;
};

class NotASolution : public Error {
public:
    explicit NotASolution(double residual)
        : Error("supplied pair does not solve the equation (relative residual " +
                std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class EmptyIntersection : public Error {
public:
    EmptyIntersection() : Error("R(A) and R(B) intersect only in zero") {}
};

class IntersectionNotInRangeC : public Error {
public:
    explicit IntersectionNotInRangeC(double residual)
        : Error("R(A) ∩ R(B) is not contained in R(C) (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class InfeasibleSpec : public Error {
public:
    using Error::Error;
};

class UnknownEquationTag : public Error {
public:
    explicit UnknownEquationTag(const std::string& tag) : Error("unknown equation tag '" + tag + "'") {}
};

/// Raised when a quantity that holds as a theorem fails numerically.
class NumericalAnomaly : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string field, std::size_t line, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + (field.empty() ? "" : ", field '" + field + "'") +
                ": " + what),
          field_(std::move(field)),
          line_(line) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string field_;
    std::size_t line_;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

}  // namespace opeq
