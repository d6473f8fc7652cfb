#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "repmas/semantic_class.hpp"

namespace repmas {

using ClassId = std::size_t;

struct Classification {
  ClassId id = 0;
  std::string class_name;
  SemanticClass semantic{Kind::Object};
};

/// Class taxonomy, object-id prefix rules, qualifier vocabulary and the
/// class similarity table.
///
/// The tree always contains the two roots (Concrete, Virtual) and the six
/// kind classes below them; configured classes hang off those. A class's
/// kind is the kind class on its path to the root. Allowed qualifiers are
/// inherited down the tree. The similarity table is symmetric with a unit
/// diagonal, and pairs missing from it fall back to `default_similarity`.
///
/// Config file (JSON):
///
///   {
///     "classes":    [ {"name": "Fire", "parent": "Phenomenon"}, ... ],
///     "prefixes":   { "fire": "Fire", ... },
///     "qualifiers": { "Fire": ["fieriness", ...], ... },
///     "aliases":    { "fieryness": "fieriness" },
///     "similarity": [ {"a": "Fire", "b": "FireBrigade", "value": 0.2}, ... ],
///     "default_similarity": 0.0
///   }
class Ontology {
 public:
  /// Only the roots and the six kind classes; no prefixes, no qualifiers.
  Ontology();

  static Ontology from_json(std::string_view text);
  static Ontology load(const std::filesystem::path& path);

  /// Fires, fire brigades and buildings, plus stubs for the other rescue
  /// entities. Identical to data/ontology/rcr.json.
  static const Ontology& rcr_default();

  std::string to_json() const;

  std::size_t class_count() const noexcept { return nodes_.size(); }
  std::optional<ClassId> find_class(std::string_view name) const;
  const std::string& class_name(ClassId id) const { return nodes_.at(id).name; }
  std::optional<ClassId> parent(ClassId id) const { return nodes_.at(id).parent; }
  /// Empty for the two roots.
  std::optional<Kind> kind_of(ClassId id) const { return nodes_.at(id).kind; }

  Classification classify(std::string_view object_id) const;

  /// Maps an alias to its canonical qualifier name; other names pass through.
  std::string_view canonical_qualifier(std::string_view name) const;
  bool allows_qualifier(ClassId id, std::string_view canonical_name) const;

  double similarity(ClassId a, ClassId b) const { return table_[a * nodes_.size() + b]; }
  double similarity(std::string_view a, std::string_view b) const;
  double default_similarity() const noexcept { return default_similarity_; }

  void add_class(const std::string& name, const std::string& parent);
  void add_prefix(const std::string& prefix, const std::string& class_name);
  void add_qualifiers(const std::string& class_name, const std::vector<std::string>& names);
  void add_alias(const std::string& alias, const std::string& canonical);
  void set_similarity(const std::string& a, const std::string& b, double value);
  void set_default_similarity(double value);

 private:
  struct Node {
    std::string name;
    std::optional<ClassId> parent;
    std::optional<Kind> kind;
    std::set<std::string, std::less<>> qualifiers;
  };

  ClassId require_class(std::string_view name) const;

  std::vector<Node> nodes_;
  std::unordered_map<std::string, ClassId> by_name_;
  std::map<std::string, ClassId, std::less<>> prefixes_;
  std::map<std::string, std::string, std::less<>> aliases_;
  // Explicit entries only (a <= b); used for round-tripping to JSON.
  std::map<std::pair<ClassId, ClassId>, double> explicit_;
  std::vector<double> table_;
  double default_similarity_ = 0.0;
};

inline Classification classify(std::string_view object_id, const Ontology& ontology) {
  return ontology.classify(object_id);
}

}  // namespace repmas
