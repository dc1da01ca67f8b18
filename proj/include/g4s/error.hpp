// Copyright (c) 2026 The G4S Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace g4s {

// Error taxonomy shared by the library and the command line tool.
// Validation covers bad arguments and malformed matrix descriptors,
// Parse covers unreadable input files and corrupt binary streams,
// Internal covers broken invariants that indicate a bug.
enum class ErrorKind { Validation, Parse, Internal };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_validation(const std::string& message) {
  throw Error(ErrorKind::Validation, message);
}

[[noreturn]] inline void throw_parse(const std::string& message) {
  throw Error(ErrorKind::Parse, message);
}

[[noreturn]] inline void throw_internal(const std::string& message) {
  throw Error(ErrorKind::Internal, message);
}

}  // namespace g4s
