#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace levyharm {

// Precondition / usage / input failures. Carries a stable machine-readable
// code so reports and exit-code mapping do not parse prose. Checks that run
// to completion and certify a *negative* result do not throw; they return
// failure states in their report objects.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace levyharm
