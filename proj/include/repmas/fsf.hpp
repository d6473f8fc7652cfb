#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "repmas/semantic_class.hpp"

namespace repmas {

class Ontology;

/// Integer world coordinate. Serialized as `x|y`.
struct Coord {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Coord&, const Coord&) = default;
};

double distance(const Coord& a, const Coord& b) noexcept;

using Symbol = std::string;
using Value = std::variant<std::int64_t, double, Coord, Symbol>;

struct QualifierValue {
  std::string name;
  Value value;

  friend bool operator==(const QualifierValue&, const QualifierValue&) = default;
};

/// Numeric view of a value; coordinates and symbols have none.
std::optional<double> as_number(const Value& value) noexcept;

/// Integers and reals compare numerically, everything else structurally.
bool values_equal(const Value& a, const Value& b) noexcept;

/// Factual semantic feature: one observation of one object at one cycle.
/// `localisation` and `time` live in dedicated fields; `qualifiers` holds the
/// remaining pairs in source order.
struct Fsf {
  std::string object_id;
  std::string class_name;
  SemanticClass semantic{Kind::Object};
  std::vector<QualifierValue> qualifiers;
  Coord location;
  std::int64_t time = 0;

  const QualifierValue* find(std::string_view name) const noexcept;
  std::optional<double> number(std::string_view name) const noexcept;

  friend bool operator==(const Fsf&, const Fsf&) = default;
};

inline constexpr std::string_view kLocalisationKey = "localisation";
inline constexpr std::string_view kTimeKey = "time";

/// Parses the tuple syntax `(id, name, value, ..., localisation, x|y, time, t)`.
/// The class is resolved from the object id prefix through `ontology`, and
/// qualifier aliases are mapped to their canonical names.
Fsf parse_fsf(std::string_view text, const Ontology& ontology);

/// Canonical tuple text: qualifiers in stored order, then localisation and time.
std::string serialize_fsf(const Fsf& fsf);

/// One-line JSON form: objectId, class, qualifiers (ordered pairs), location, time.
std::string fsf_to_jsonl(const Fsf& fsf);
Fsf parse_fsf_jsonl(std::string_view line, const Ontology& ontology);

/// Throws Error{InvalidFsf} (or the more specific code) when `fsf` breaks an
/// invariant: empty id, negative time, duplicate or undeclared qualifier,
/// class mismatch with the ontology, non-finite real, or a symbol that would
/// not survive a serialize/parse round trip.
void validate_fsf(const Fsf& fsf, const Ontology& ontology);

}  // namespace repmas
