#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tlc {

/// Raised for invalid data or violated preconditions anywhere in the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Collects non-fatal warnings (substitutions, clamping) so callers decide
/// where they are reported. Passed by pointer; nullptr discards warnings.
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

inline void warn(Diagnostics* diag, std::string message) {
    if (diag != nullptr) {
        diag->warn(std::move(message));
    }
}

}  // namespace tlc
