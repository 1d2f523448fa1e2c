#pragma once

#include <stdexcept>
#include <string>

namespace dvd {

// Input could not be parsed or violates a documented format rule.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// The requested algorithm does not apply to this instance shape
// (e.g. an RD-only solver on an instance with mixed thresholds).
struct InapplicableError : std::runtime_error {
    explicit InapplicableError(const std::string& msg) : std::runtime_error(msg) {}
};

// The solver declined to run: a resource cap was exceeded or no
// solution exists within the requested size cap.
struct RefusalError : std::runtime_error {
    explicit RefusalError(const std::string& msg) : std::runtime_error(msg) {}
};

// A solver returned a set that failed post-hoc verification.
struct SelfCheckError : std::runtime_error {
    explicit SelfCheckError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dvd
