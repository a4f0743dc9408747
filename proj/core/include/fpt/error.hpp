#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fpt {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments, unknown names, malformed model specifications.
class InputError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed: bracket not found, overflow, instability.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Receives advisory warnings (failed classification flags, regime mismatch).
/// The default handler writes to stderr. Set once at start-up; not synchronized.
using WarningHandler = std::function<void(std::string_view)>;

void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace fpt
