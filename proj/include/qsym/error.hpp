#pragma once

#include <stdexcept>
#include <string>

namespace qsym {

// Base of every error thrown by the library. Subclasses let the CLI map
// failure modes onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Structural input problems: out-of-range vertex, zero vertices, bad path.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NoCriticalTemperature : public Error {
public:
    NoCriticalTemperature() : Error("no critical temperature: spectral radius is 0") {}
};

// A weight vector with a zero or negative entry was handed to the symmetry pipeline.
class NonPositiveWeight : public Error {
public:
    explicit NonPositiveWeight(const std::string& detail)
        : Error("outside symmetry theorem hypothesis: " + detail) {}
};

class InconsistentGrouping : public Error {
public:
    explicit InconsistentGrouping(const std::string& detail)
        : Error("inconsistent grouping: " + detail) {}
};

class PartitionMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace qsym
