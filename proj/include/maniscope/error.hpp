#pragma once

#include <stdexcept>
#include <string>

namespace maniscope {

// Base class for every error raised by the library. Input validation
// failures use InvalidArgument so that callers (the CLI, the HTTP service)
// can map them to user-facing diagnostics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace maniscope
