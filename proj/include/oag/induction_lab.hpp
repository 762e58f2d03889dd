#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "oag/definable_set.hpp"
#include "oag/formula.hpp"
#include "oag/qe.hpp"
#include "oag/structure.hpp"

namespace oag {

struct LabOptions {
  QeOptions qe;
  /// Cap on sweep steps in extract_subcover.
  std::size_t max_steps = 10'000;
  /// Build DCI/BCI instances even when the induction variable is not free.
  bool force_schema = false;
};

struct DciReport {
  Formula instance;
  std::string structure;
  bool verdict = false;
  /// Present iff verdict is false and the instance has parameters.
  std::optional<Assignment> counterexample_params;
  /// Parameter order used for sampling (first occurrence in phi).
  std::vector<Var> params;
  double timing_ms = 0;
};

/// Decides the DCI instance of phi in v, parameters being the other free
/// variables. On failure a falsifying parameter tuple is sampled left to right.
DciReport check_dci(const Formula& phi, const Var& v, const StructureSpec& s, const LabOptions& opts = {});

/// Decides the BCI instance of phi on [a, b). Throws DegenerateInterval when a >= b.
DciReport check_bci(const Formula& phi, const Var& v, const Scalar& a, const Scalar& b, const StructureSpec& s,
                    const LabOptions& opts = {});

struct CompletenessReport {
  DefinableSet1D set;
  CutReport cut;
  /// exists z (z is a least upper bound of the set).
  Formula lub_sentence;
  bool lub_exists = false;
  /// Whether the lub sentence agrees with the cut verdict (vacuous for not_a_cut).
  bool consistent = true;
  double timing_ms = 0;
};

CompletenessReport completeness_audit(const Formula& f, const StructureSpec& s, const LabOptions& opts = {});

/// {phi(a, G)} indexed by param_var, with point_var ranging over the fiber.
struct DefinableFamily {
  Formula formula;
  Var param_var;
  Var point_var;

  /// Throws Usage unless the variables differ and cover every free variable.
  DefinableFamily(Formula f, Var param, Var point);
  /// phi(u, x) for arbitrary terms, capture-free.
  Formula at(const LinearTerm& u, const LinearTerm& x) const;
};

struct OpenCoverRole {
  Scalar a;
  Scalar b;
};
struct ExhaustionRole {};

struct AuditedProperty {
  std::string name;
  Formula sentence;
  bool holds = false;
};

struct FamilyAudit {
  std::optional<bool> all_fibers_open;
  std::optional<bool> covers_interval;
  std::optional<bool> covers_group;
  std::optional<bool> directed;
  std::optional<bool> all_fibers_pseudo_finite;
  /// Every decided sentence, in decision order.
  std::vector<AuditedProperty> properties;

  bool all_hold() const;
};

FamilyAudit family_audit(const DefinableFamily& fam, const OpenCoverRole& role, const StructureSpec& s,
                         const LabOptions& opts = {});
FamilyAudit family_audit(const DefinableFamily& fam, const ExhaustionRole& role, const StructureSpec& s,
                         const LabOptions& opts = {});

struct SubcoverCertificate {
  Scalar a;
  Scalar b;
  DefinableFamily family;
  std::vector<Rational> params;
  bool verified = false;
  std::size_t steps = 0;
  /// Reach after each step; strictly increasing.
  std::vector<Scalar> reach;
  /// forall x (a <= x <= b -> OR_{u in params} phi(u, x)).
  Formula verification;
};

struct SubcoverOutcome {
  FamilyAudit audit;
  /// Absent when the open-cover audit rejects the family.
  std::optional<SubcoverCertificate> certificate;
  double timing_ms = 0;
};

/// Greedy sup-extension sweep over [a, b]. Throws DegenerateInterval when
/// a >= b, InvalidCover if the sweep stalls and ResourceLimit past max_steps.
SubcoverOutcome extract_subcover(const DefinableFamily& fam, const Scalar& a, const Scalar& b,
                                 const StructureSpec& s, const LabOptions& opts = {});

struct CompactnessReport {
  SubcoverOutcome subcover;
  /// exists t AND_{u in P} psi(t, u)
  Formula selection_sentence;
  std::optional<Rational> t0;
  /// forall x (a <= x <= b -> exists u (psi(t0, u) & phi(u, x)))
  Formula cover_sentence;
  bool verified = false;
  /// "certified", "rejected-cover" or "exhaustion-insufficient".
  std::string status;
  double timing_ms = 0;
};

CompactnessReport compactness_certificate(const DefinableFamily& fam, const DefinableFamily& exhaustion,
                                          const Scalar& a, const Scalar& b, const StructureSpec& s,
                                          const LabOptions& opts = {});

struct ContinuityReport {
  Formula functional_sentence;
  Formula continuity_sentence;
  Formula uniform_sentence;
  bool continuous = false;
  bool uniformly_continuous = false;
  /// continuous -> uniformly continuous
  bool implication = false;
  double timing_ms = 0;
};

/// Graph of a function of x with value y on [a, b]. Throws NotAFunction when
/// the graph is not single-valued and total on [a, b].
ContinuityReport uniform_continuity_check(const Formula& graph, const Var& x, const Var& y, const Scalar& a,
                                          const Scalar& b, const StructureSpec& s, const LabOptions& opts = {});

/// exists u (f(u) & v < u) | f(v): the downward closure of {v : f(v)}.
Formula downward_closure(const Formula& f, const Var& x, const Var& v);

}  // namespace oag
