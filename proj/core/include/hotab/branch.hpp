// Branches: finite sets of normal formulas with cached indices.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hotab/kernel.hpp"

namespace hotab {

enum class FormulaKind : std::uint8_t {
  DoubleNeg,  // not not s
  BoolEq,     // s =o t
  BoolDiseq,  // s !=o t
  FunEq,      // s =(sigma tau) t
  FunDiseq,   // s !=(sigma tau) t
  SortEq,     // s =alpha t
  SortDiseq,  // s !=alpha t
  PosAtom,    // x s1 ... sn
  NegAtom,    // not (x s1 ... sn)
  Imp,        // s -> t
  NegImp,     // not (s -> t)
  Forall,     // forall_alpha s
  NegForall,  // not forall_alpha s
  Other
};

const char* to_string(FormulaKind k);

/// Components of a formula as seen by the tableau rules.
///
///  - equations / disequations: `lhs`, `rhs`, `type` is the compared type
///  - DoubleNeg: `lhs` is s in `not not s`
///  - atoms: `lhs` is the atom `x s1 ... sn` (without the negation)
///  - Imp / NegImp: `lhs`, `rhs` are antecedent and succedent
///  - Forall / NegForall: `lhs` is the predicate, `type` the sort
struct FormulaShape {
  FormulaKind kind = FormulaKind::Other;
  /// SortDiseq whose sides share the same variable head.
  bool decomposable = false;
  std::optional<Term> lhs, rhs;
  std::optional<Type> type;
};

/// Requires `s` normal of type o.
FormulaShape classify(const Term& s);

/// Maximal set of pairwise non-separated discriminating terms of one sort.
struct Discriminant {
  std::vector<Term> members;
  bool contains(const Term& t) const;
  friend bool operator==(const Discriminant&, const Discriminant&) = default;
};

/// A persistent set of normal formulas.  Copies share structure; `add`
/// returns a new branch and leaves the receiver unchanged.
class Branch {
 public:
  Branch();
  explicit Branch(std::span<const Term> formulas);

  /// Throws TypeError unless `s` is a normal formula.
  Branch add(const Term& s) const;
  Branch add_all(std::span<const Term> fs) const;

  bool contains(const Term& s) const;
  /// Insertion position of `s`, if present.
  std::optional<std::size_t> position(const Term& s) const;

  std::span<const Term> formulas() const;
  const FormulaShape& shape(std::size_t i) const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// True when both handles share the same underlying set.
  bool same(const Branch& other) const { return data_ == other.data_; }

  /// Free variables in order of first occurrence.
  const std::vector<Name>& free_vars() const;
  bool has_free(const Name& x) const;
  /// Whether the identifier is used by a free variable of the branch.
  bool uses_id(std::string_view id) const;

  /// Indices of formulas of a given kind, in insertion order.
  std::span<const std::size_t> of_kind(FormulaKind k) const;
  /// Indices of sort (dis)equations at sort `alpha`.
  std::span<const std::size_t> sort_equations(const Type& alpha) const;
  std::span<const std::size_t> sort_disequations(const Type& alpha) const;
  /// Indices of positive/negative atoms with variable head `x`.
  std::span<const std::size_t> pos_atoms(const Name& x) const;
  std::span<const std::size_t> neg_atoms(const Name& x) const;

  /// Sorts of all sort disequations in the branch.
  std::vector<Type> diseq_sorts() const;

  /// Sides of sort-alpha disequations, in order of first occurrence.
  const std::vector<Term>& discriminating(const Type& alpha) const;
  bool is_discriminating(const Term& t) const;

  /// Memoized discriminant enumeration.
  const std::vector<Discriminant>& discriminants(const Type& alpha) const;

  bool closed() const;

 private:
  struct Data;
  struct Memo;
  std::shared_ptr<const Data> data_;
  std::shared_ptr<Memo> memo_;
};

/// `x, not x` for a variable `x : o`, or `x != x` for a variable at a sort.
bool is_closed(const Branch& a);

std::vector<Term> discriminating_terms(const Branch& a, const Type& alpha);

/// All alpha-discriminants (maximal independent sets of the conflict graph
/// whose edges are the alpha-disequations).  `{}` yields a single empty
/// discriminant.
std::vector<Discriminant> discriminants(const Branch& a, const Type& alpha);

/// True if `s != t` or `t != s` is in the branch.
bool separated(const Branch& a, const Term& s, const Term& t);

}  // namespace hotab
