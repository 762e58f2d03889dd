#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "oag/formula.hpp"

namespace oag {

/// P(t) holds iff t is one of 0, 1, ..., n.
struct DiscreteRange {
  int n = 0;
};

/// P(t) holds iff t < value, with value irrational: a definable gap over Q.
struct CutBelow {
  Scalar value;
};

using PredSemantics = std::variant<DiscreteRange, CutBelow>;

inline constexpr int kDefaultDiscreteCap = 64;

/// A concrete model: quantifiers always range over Q; an optional radicand d
/// licenses constants from Q(sqrt d); unary predicates are macros over <, =.
class StructureSpec {
 public:
  explicit StructureSpec(std::string id = "Q") : id_(std::move(id)) {}

  static StructureSpec rationals() { return StructureSpec("Q"); }
  /// Q_n: the rationals with predicate `name` denoting {0, ..., n}.
  static StructureSpec discrete(int n, const std::string& name = "D");
  /// Q with radicand d and predicate `name` denoting the cut below `value`.
  static StructureSpec cut(const Scalar& value, const std::string& name = "C");

  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }
  /// 0 for RationalsOnly.
  int radicand() const { return radicand_; }
  void set_radicand(int d);
  int discrete_cap() const { return discrete_cap_; }
  void set_discrete_cap(int cap);

  void add_predicate(const std::string& name, PredSemantics semantics);
  bool has_predicate(const std::string& name) const { return preds_.contains(name); }
  const std::map<std::string, PredSemantics>& predicates() const { return preds_; }

  /// Macro expansion of name(t) into the core language.
  Formula expand_pred(const std::string& name, const LinearTerm& t) const;
  /// Membership in the quantification domain Q.
  bool in_domain(const Scalar& x) const { return x.is_rational(); }

  /// Renders in the structure file format.
  std::string describe() const;

 private:
  std::string id_;
  int radicand_ = 0;
  int discrete_cap_ = kDefaultDiscreteCap;
  std::map<std::string, PredSemantics> preds_;
};

/// Replaces every predicate atom by its expansion and checks that all
/// sqrt constants match the structure's radicand.
Formula expand_predicates(const Formula& f, const StructureSpec& s);

/// Structure description file: `id = ...`, `domain = Q`, `radicand = 2`,
/// `cap = 64`, `pred D : range 3`, `pred C : cut sqrt(2)`; `#` comments.
StructureSpec parse_structure(std::string_view text, const std::string& default_id = "structure");
StructureSpec load_structure(const std::filesystem::path& path);

}  // namespace oag
