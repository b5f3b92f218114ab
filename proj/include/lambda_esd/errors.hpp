#pragma once

#include <stdexcept>
#include <string>

namespace lambda_esd {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotHermitian : public Error {
public:
    explicit NotHermitian(const std::string& what) : Error(what) {}
};

class TraceNotOne : public Error {
public:
    explicit TraceNotOne(const std::string& what) : Error(what) {}
};

class NotPositiveSemidefinite : public Error {
public:
    explicit NotPositiveSemidefinite(const std::string& what) : Error(what) {}
};

class NotNormalized : public Error {
public:
    explicit NotNormalized(const std::string& what) : Error(what) {}
};

class NonFiniteEntry : public Error {
public:
    explicit NonFiniteEntry(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class InvalidXParams : public Error {
public:
    explicit InvalidXParams(const std::string& what) : Error(what) {}
};

class InvalidState : public Error {
public:
    explicit InvalidState(const std::string& what) : Error(what) {}
};

class ConvergenceFailure : public Error {
public:
    explicit ConvergenceFailure(const std::string& what) : Error(what) {}
};

class NegativeTime : public Error {
public:
    explicit NegativeTime(const std::string& what) : Error(what) {}
};

class UnsupportedParams : public Error {
public:
    explicit UnsupportedParams(const std::string& what) : Error(what) {}
};

class TruncationLeak : public Error {
public:
    explicit TruncationLeak(const std::string& what) : Error(what) {}
};

class BadRange : public Error {
public:
    explicit BadRange(const std::string& what) : Error(what) {}
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace lambda_esd
