#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modform {

/// Failure categories. The CLI prints the category as a stable
/// machine-parsable tag in front of every diagnostic.
enum class Errc {
  invalid_argument,
  domain,
  division_by_zero,
  field_mismatch,
  kind_mismatch,
  precision,
  not_modular,
  unsupported,
  parse,
  io,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::domain: return "domain";
    case Errc::division_by_zero: return "division_by_zero";
    case Errc::field_mismatch: return "field_mismatch";
    case Errc::kind_mismatch: return "kind_mismatch";
    case Errc::precision: return "precision";
    case Errc::not_modular: return "not_modular";
    case Errc::unsupported: return "unsupported";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace modform
