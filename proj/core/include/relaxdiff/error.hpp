#ifndef RELAXDIFF_ERROR_HPP
#define RELAXDIFF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace relaxdiff {

enum class ErrorKind {
    Dimension,
    Parameter,
    Range,
    Degenerate,
    Symmetry,
    Solver,
    Numerical,
    Invariant,
    Fit,
    IoMissing,
    IoFormat,
    IoTruncated,
    IoWrite,
};

const char* to_string(ErrorKind kind);

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(ErrorKind::Dimension, what) {}
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(ErrorKind::Parameter, what) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(ErrorKind::Range, what) {}
};

/// Raised by project_orth for a (numerically) zero direction.
class DegenerateDirectionError : public Error {
public:
    explicit DegenerateDirectionError(const std::string& what) : Error(ErrorKind::Degenerate, what) {}
};

class SymmetryError : public Error {
public:
    explicit SymmetryError(const std::string& what) : Error(ErrorKind::Symmetry, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class FitError : public Error {
public:
    explicit FitError(const std::string& what) : Error(ErrorKind::Fit, what) {}
};

/// CG did not reach the requested relative residual.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual, int iterations)
        : Error(ErrorKind::Solver, what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// A filter state left the admissible set (lambda_min(H) dropped below the predicted bound).
class InvariantError : public Error {
public:
    InvariantError(const std::string& what, std::size_t cell, double lambda_min, double bound)
        : Error(ErrorKind::Invariant, what), cell_(cell), lambda_min_(lambda_min), bound_(bound) {}

    std::size_t cell() const noexcept { return cell_; }
    double lambda_min() const noexcept { return lambda_min_; }
    double bound() const noexcept { return bound_; }

private:
    std::size_t cell_;
    double lambda_min_;
    double bound_;
};

class IoError : public Error {
public:
    IoError(ErrorKind kind, const std::string& what) : Error(kind, what) {}
};

}  // namespace relaxdiff

#endif  // RELAXDIFF_ERROR_HPP
