#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bvpindex {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- expression language ----

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class EvalError : public Error {
public:
    EvalError(const std::string& msg, std::size_t position)
        : Error(msg + " (expression offset " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// ---- linear algebra ----

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class NotPositiveDefiniteError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

// ---- degree engines ----

class BoundaryZeroError : public Error {
public:
    using Error::Error;
};

class SphereZeroError : public Error {
public:
    using Error::Error;
};

class RefinementLimitError : public Error {
public:
    using Error::Error;
};

class DegenerateZeroError : public Error {
public:
    using Error::Error;
};

// ---- spectral reduction ----

class StructuralError : public Error {
public:
    using Error::Error;
};

class ToleranceAmbiguityError : public Error {
public:
    using Error::Error;
};

// ---- discretization ----

class EllipticityError : public Error {
public:
    using Error::Error;
};

class MisdeclaredResonanceError : public Error {
public:
    using Error::Error;
};

// ---- configuration ----

class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, const std::string& pointer)
        : Error(msg + " [" + pointer + "]"), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

}  // namespace bvpindex
