#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geokern {

inline constexpr std::string_view kVersion = "0.3.0";

/// Malformed or inconsistent input data (tree files, dimension mismatches,
/// Gram matrices that violate a precondition).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A kernel specification that is invalid or not applicable to the request.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WarningHandler = std::function<void(std::string_view)>;

// Warnings go to stderr unless a handler is installed. The handler may be
// invoked from worker threads; it is called under an internal lock.
void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace geokern
