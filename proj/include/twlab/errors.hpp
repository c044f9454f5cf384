#pragma once

#include <stdexcept>
#include <string>

namespace twlab {

// Thrown when an argument violates a documented precondition.
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an iterative numerical routine fails to converge.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a statistical routine has too little data to produce a result.
class InsufficientData : public std::runtime_error {
public:
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twlab
