#pragma once

#include <stdexcept>
#include <string>

namespace triad {

enum class ErrorKind {
  parse,             // malformed numeric token or file body
  metadata,          // filename does not carry the expected metadata
  config,            // parameter outside its admissible domain
  insufficient_data, // series/window count too small for the operation
  degenerate,        // input with no usable signal (constant series, ...)
  shape,             // tensor/feature dimensions do not line up
  usage,             // API called outside its contract
  no_signal,         // scoring invoked without a single positive vote
  io,                // filesystem failure
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::metadata: return "metadata";
    case ErrorKind::config: return "config";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::shape: return "shape";
    case ErrorKind::usage: return "usage";
    case ErrorKind::no_signal: return "no-signal";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

} // namespace triad
