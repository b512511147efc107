#pragma once

#include <stdexcept>
#include <string>

namespace hktlab {

// Base for all failures raised by the library. Subclasses keep the
// category visible to the CLI (usage errors exit 2, numeric failures
// surface as failed checks).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class UnsupportedOrderError : public Error {
public:
    using Error::Error;
};

// Evaluation hit a pole of a coefficient field (e.g. 1/r^2 at the origin).
class SingularPointError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateMetricError : public Error {
public:
    using Error::Error;
};

class NotLchkError : public Error {
public:
    using Error::Error;
};

class NotHktError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace hktlab
