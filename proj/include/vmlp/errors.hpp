#pragma once

#include <stdexcept>
#include <string>

namespace vmlp {

// Caller-side problem: bad shapes, out-of-range indices, unknown names,
// malformed input files. Mapped to CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: singular system where a solution was required, or a
// non-finite value produced. Mapped to CLI exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace vmlp
