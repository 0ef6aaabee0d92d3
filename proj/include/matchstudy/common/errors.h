#pragma once

#include <stdexcept>
#include <string>

namespace matchstudy {

// Base for every error raised by the library. Each concrete type maps to
// one failure condition so callers can catch precisely what they handle.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- bar-series ingestion ---
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row)
        : Error(what + " (row " + std::to_string(row) + ")"), row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class DuplicateTimestamp : public Error {
public:
    using Error::Error;
};

class UnorderedInput : public Error {
public:
    using Error::Error;
};

class InvalidPrice : public Error {
public:
    using Error::Error;
};

class LeadingGap : public Error {
public:
    using Error::Error;
};

class SeriesTooShort : public Error {
public:
    using Error::Error;
};

class NonPositiveShift : public Error {
public:
    using Error::Error;
};

// --- model estimation ---
class InsufficientCoverage : public Error {
public:
    using Error::Error;
};

class DegenerateRegressor : public Error {
public:
    using Error::Error;
};

class SpanNotCovered : public Error {
public:
    using Error::Error;
};

// --- inference ---
class EmptyInput : public Error {
public:
    using Error::Error;
};

class ZeroVariance : public Error {
public:
    using Error::Error;
};

class TooFewObservations : public Error {
public:
    using Error::Error;
};

class AllZeros : public Error {
public:
    using Error::Error;
};

// --- odds ---
class InvalidOdds : public Error {
public:
    using Error::Error;
};

// --- regression ---
class RankDeficient : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

// --- io ---
class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace matchstudy
