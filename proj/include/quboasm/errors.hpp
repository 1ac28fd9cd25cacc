#pragma once

#include <stdexcept>

namespace quboasm {

// Unreadable or unwritable files and directories. CLI exit code 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejected input: bad characters, malformed files, violated preconditions.
// CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A solver or embedding backend could not produce a result, or the instance
// exceeds the backend's size limit. CLI exit code 3.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quboasm
