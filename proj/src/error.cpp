#include "zsl/error.hpp"

namespace zsl {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::IsolatedVertex: return "IsolatedVertex";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::Disconnected: return "Disconnected";
    case Errc::DisconnectedLink: return "DisconnectedLink";
    case Errc::NotBipartite: return "NotBipartite";
    case Errc::BadParameter: return "BadParameter";
    case Errc::GapTooLarge: return "GapTooLarge";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NTooLarge: return "NTooLarge";
    case Errc::EmptyLink: return "EmptyLink";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::NotEquivariant: return "NotEquivariant";
    case Errc::InvalidAction: return "InvalidAction";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::ParseError: return "ParseError";
    case Errc::UsageError: return "UsageError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_validation_error(Errc code) {
  switch (code) {
    case Errc::NegativeWeight:
    case Errc::IndexOutOfRange:
    case Errc::SizeMismatch:
    case Errc::ShapeMismatch:
    case Errc::NotBipartite:
    case Errc::BadParameter:
    case Errc::TooLarge:
    case Errc::NTooLarge:
    case Errc::UnknownVertex:
    case Errc::NotEquivariant:
    case Errc::InvalidAction:
    case Errc::InvalidDescriptor:
    case Errc::ParseError:
    case Errc::UsageError:
    case Errc::IoError:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace zsl
