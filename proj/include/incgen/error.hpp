#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace incgen {

// Domain error carrying a stable machine-readable code ("NotAntisymmetric",
// "TooLarge", ...) next to the human-readable message with the witness data.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace incgen
