#include "repmas/semantic_class.hpp"

#include <array>
#include <utility>

#include "repmas/error.hpp"

namespace repmas {

namespace {

constexpr std::array<std::pair<Kind, std::string_view>, 6> kKindNames{{
    {Kind::Object, "Object"},
    {Kind::Actor, "Actor"},
    {Kind::Means, "Means"},
    {Kind::Phenomenon, "Phenomenon"},
    {Kind::Action, "Action"},
    {Kind::Message, "Message"},
}};

}  // namespace

std::string_view to_string(Family family) {
  return family == Family::Concrete ? "Concrete" : "Virtual";
}

std::string_view to_string(Kind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<Kind> kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::MalformedTuple: return "MalformedTuple";
    case Errc::UnknownClassPrefix: return "UnknownClassPrefix";
    case Errc::UnknownQualifier: return "UnknownQualifier";
    case Errc::BadCoordinate: return "BadCoordinate";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::UnknownState: return "UnknownState";
    case Errc::SchemaError: return "SchemaError";
    case Errc::DanglingStateRef: return "DanglingStateRef";
    case Errc::TerminalWithOutgoing: return "TerminalWithOutgoing";
    case Errc::StaleFsf: return "StaleFsf";
    case Errc::InvalidFsf: return "InvalidFsf";
    case Errc::MissingQualifier: return "MissingQualifier";
    case Errc::ParseError: return "ParseError";
    case Errc::NonMonotoneTime: return "NonMonotoneTime";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace repmas
