#ifndef CURVEFLOW_ERROR_HPP
#define CURVEFLOW_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curveflow {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (annulus, cone, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Operation not available for the requested geometry or family.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

// Prescribed data evaluated to a non-positive value.
class DataError : public Error {
public:
    using Error::Error;
};

class ConvexityLossError : public Error {
public:
    ConvexityLossError(std::size_t node, double radius)
        : Error("convexity lost at node " + std::to_string(node) +
                " (principal radius " + std::to_string(radius) + ")"),
          node_(node), radius_(radius) {}
    std::size_t node() const { return node_; }
    double radius() const { return radius_; }

private:
    std::size_t node_;
    double radius_;
};

class NoBarrierError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& expected, const std::string& what)
        : Error("syntax error at byte " + std::to_string(position) + ": " + what +
                (expected.empty() ? std::string() : ", expected " + expected)),
          position_(position), expected_(expected) {}
    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

// Time step shrank below the smallest admissible value.
class StallError : public Error {
public:
    using Error::Error;
};

class OracleError : public Error {
public:
    using Error::Error;
};

}  // namespace curveflow

#endif
