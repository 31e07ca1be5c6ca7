// Rule instances for the STT calculus and its EFO restriction.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hotab/branch.hpp"

namespace hotab {

enum class RuleId : std::uint8_t { DN, BQ, BE, FQ, FE, Mat, Dec, Con, Imp, ImpN, All, AllN, Close };

const char* to_string(RuleId r);
std::optional<RuleId> rule_from_string(std::string_view s);

enum class Calculus : std::uint8_t { STT, EFO };

/// A / A1 | ... | An.  `term` is the instantiation term of FQ/All and the
/// fresh variable of FE/AllN.
struct RuleInstance {
  RuleId rule = RuleId::DN;
  std::vector<Term> premises;
  std::optional<Term> term;
  std::vector<std::vector<Term>> alternatives;

  friend bool operator==(const RuleInstance&, const RuleInstance&) = default;
};

struct RuleOptions {
  Calculus calculus = Calculus::STT;
  /// Admit the extra `Close` rule on {s, not s} and s != s.
  bool eager_close = false;
};

/// Instances on A that make progress (no alternative is already contained
/// in A), in rule priority order, then premise order.  Empty when A is
/// closed.  `limit` stops after that many instances.
///
/// STT: FQ and All draw their terms from `instantiation_terms(A, ., fuel)`.
std::vector<RuleInstance> applicable_stt(const Branch& a, std::size_t fuel, bool eager_close = false,
                                         std::size_t limit = SIZE_MAX);

/// Throws FragmentViolation unless every member of A is quasi-EFO.
std::vector<RuleInstance> applicable_efo(const Branch& a, bool eager_close = false, std::size_t limit = SIZE_MAX);

/// The n = 0 Mat/Dec instance on a closed branch (or a Close instance when
/// enabled and applicable).
std::optional<RuleInstance> closing_instance(const Branch& a, bool eager_close = false);

/// Empty string if `r` is a legal instance on A, else the reason.
std::string explain_instance(const Branch& a, const RuleInstance& r, const RuleOptions& opts = {});
bool check_instance(const Branch& a, const RuleInstance& r, const RuleOptions& opts = {});

/// Leaves plus abstractions; the measure bounded by instantiation fuel.
std::size_t instantiation_size(const Term& t);

/// Candidate FQ/All terms of type sigma, each of size at most `fuel`:
/// discriminating terms, then closed subterms of A, then enumerated normal
/// terms over the branch signature.  No duplicates.
std::vector<Term> instantiation_terms(const Branch& a, const Type& sigma, std::size_t fuel);

/// Names and constants available to term enumeration.
struct Signature {
  std::vector<Name> heads;
  /// Add =s for each listed type and forall_a for each listed sort.
  std::vector<Type> eq_types;
  std::vector<Type> sorts;
  bool with_not = true;
  bool with_imp = true;
};

Signature branch_signature(const Branch& a);

/// All closed normal terms of type sigma with `instantiation_size` exactly
/// `size`, in a deterministic order.
std::vector<Term> enumerate_normal_terms(const Signature& sig, const Type& sigma, std::size_t size);

/// Closed subterms of the members of A with type sigma, first occurrence order.
std::vector<Term> closed_subterms(const Branch& a, const Type& sigma);

}  // namespace hotab
