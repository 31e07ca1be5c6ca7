// Syntactic fragment classifiers and the decision procedure for the
// lambda-free, pure and BSR fragments.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hotab/branch.hpp"

namespace hotab {

struct Verdict;

class FragmentViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// not, imp, =a and forall_a for sorts a.
bool is_efo_constant(const Name& c);
/// First subterm that is a non-EFO constant, if any.
std::optional<Term> efo_witness(const Term& t);
bool is_efo(const Term& t);
/// EFO, or a disequation between EFO terms at any type.
bool is_quasi_efo(const Term& t);
bool is_lambda_free(const Term& t);
/// A type without o.
bool is_pure_type(const Type& t);
/// Every name and binder in `t` has a pure type.
bool is_pure_term(const Term& t);
/// s != t with s, t pure.
bool is_pure_diseq(const Term& t);
/// a, o, or a1 ... an -> o.
bool is_bsr_type(const Type& t);
/// EFO, every variable (free or bound) has a BSR type, and no forall occurs
/// below a negation or an implication.
bool is_bsr(const Term& t);

struct FlagReport {
  bool holds = true;
  /// First offending formula and the subterm explaining the failure.
  std::optional<std::size_t> formula;
  std::optional<Term> witness;
  std::string reason;
};

struct FormulaFlags {
  bool efo = true, quasi_efo = true, lambda_free = true, pure = true, bsr = true;
};

struct FragmentReport {
  FlagReport efo, quasi_efo, lambda_free, pure, bsr;
  std::vector<FormulaFlags> per_formula;

  /// quasi-EFO and in one of the three terminating fragments.
  bool decidable() const { return quasi_efo.holds && (lambda_free.holds || pure.holds || bsr.holds); }
};

FragmentReport classify_branch(const Branch& a);

struct DecideOptions {
  /// Verify online that every All conclusion stays BSR when the input is BSR.
  bool check_bsr_gate = true;
  std::size_t max_domain = std::size_t{1} << 25;
};

/// Saturates with the EFO calculus without budgets.  Throws
/// FragmentViolation unless `classify_branch(a).decidable()`.
Verdict decide(const Branch& a, const DecideOptions& opts = {});

}  // namespace hotab
