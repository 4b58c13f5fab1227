#pragma once

#include <stdexcept>
#include <string>

namespace tclt {

// Raised when an enumeration or expansion would exceed its configured cap.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation needs a free cumulant beyond the supplied
// truncation order. Missing cumulants are never treated as zero.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tclt
