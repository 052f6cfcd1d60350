#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zsl {

enum class Errc {
  NegativeWeight,
  IndexOutOfRange,
  IsolatedVertex,
  EmptyGraph,
  SizeMismatch,
  ShapeMismatch,
  Disconnected,
  DisconnectedLink,
  NotBipartite,
  BadParameter,
  GapTooLarge,
  TooLarge,
  NTooLarge,
  EmptyLink,
  UnknownVertex,
  NotEquivariant,
  InvalidAction,
  InvalidDescriptor,
  ParseError,
  UsageError,
  IoError,
};

std::string_view errc_name(Errc code);

// True for errors caused by bad input (CLI exit code 2) rather than a
// failure while computing (exit code 3).
bool is_validation_error(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace zsl
