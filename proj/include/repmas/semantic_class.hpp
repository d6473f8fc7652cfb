#pragma once

#include <optional>
#include <string_view>

namespace repmas {

enum class Family { Concrete, Virtual };

/// The six observation classes. Object, Actor and Means describe concrete
/// entities; Phenomenon, Action and Message are the virtual (activity) side.
enum class Kind { Object, Actor, Means, Phenomenon, Action, Message };

constexpr Family family_of(Kind kind) noexcept {
  switch (kind) {
    case Kind::Object:
    case Kind::Actor:
    case Kind::Means:
      return Family::Concrete;
    case Kind::Phenomenon:
    case Kind::Action:
    case Kind::Message:
      return Family::Virtual;
  }
  return Family::Virtual;
}

/// A (family, kind) pair. Only constructible from a kind, so the family can
/// never disagree with it.
class SemanticClass {
 public:
  constexpr explicit SemanticClass(Kind kind) noexcept : kind_(kind) {}

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr Family family() const noexcept { return family_of(kind_); }

  friend constexpr bool operator==(SemanticClass, SemanticClass) = default;

 private:
  Kind kind_;
};

std::string_view to_string(Family family);
std::string_view to_string(Kind kind);
std::optional<Kind> kind_from_string(std::string_view name);

}  // namespace repmas
