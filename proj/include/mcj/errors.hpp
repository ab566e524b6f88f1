#pragma once

#include <stdexcept>
#include <string>

namespace mcj {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Exact division requested but the remainder is nonzero.
struct InexactDivision : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

// Degree of the zero polynomial.
struct UndefinedDegree : Error {
    using Error::Error;
};

// Malformed polynomial/diagram text; carries a 0-based character position.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Triple fails parity/triangle conditions, or tetrahedral labels are invalid.
struct Inadmissible : Error {
    using Error::Error;
};

// A colored-Jones provider has no value for the requested color.
struct MissingColor : Error {
    using Error::Error;
};

// Required profile data (diagram stats, fitted degrees, ...) absent.
struct MissingData : Error {
    using Error::Error;
};

// Quasi-polynomial fitting could not stabilize.
struct NoStableFit : Error {
    using Error::Error;
};

// Degree data fed to the wrong min-degree branch.
struct InvalidBranch : Error {
    using Error::Error;
};

// Requested feature outside the implemented regime (e.g. period > 2).
struct Unsupported : Error {
    using Error::Error;
};

struct EmptyWindow : Error {
    using Error::Error;
};

struct InvalidWeights : Error {
    using Error::Error;
};

// Target slope lies outside every surface-catalog case domain.
struct NoCatalogSurface : Error {
    using Error::Error;
};

struct UnsolvableMatching : Error {
    using Error::Error;
};

struct OutOfRegime : Error {
    using Error::Error;
};

// Degree data violates the growth hypotheses a_i > 0 / a*_i < -1/12.
struct HypothesisViolation : Error {
    using Error::Error;
};

// Bracket state sum capped to keep runtime bounded.
struct TooManyCrossings : Error {
    using Error::Error;
};

}  // namespace mcj
