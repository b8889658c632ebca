#pragma once

#include <stdexcept>
#include <string>

namespace subdyn {

// Malformed textual input: polynomial grammar violations, bad job files.
// Carries a 0-based offset into the offending string when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long offset = -1)
        : std::runtime_error(what), offset_(offset) {}
    long offset() const { return offset_; }

private:
    long offset_;
};

// A mathematical precondition does not hold (non-homogeneous input, bad
// reduction, composite modulus, dimension mismatch, ...).
class MathError : public std::runtime_error {
public:
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// The Macaulay quotient construction stayed degenerate through all retries.
class DegenerateError : public MathError {
public:
    explicit DegenerateError(const std::string& what) : MathError(what) {}
};

// A configured budget (S-pair count, orbit steps, enumeration size) ran out.
// Never a wrong answer: callers see the exhaustion explicitly.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace subdyn
