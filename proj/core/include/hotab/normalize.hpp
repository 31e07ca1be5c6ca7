// Capture-avoiding substitution and beta-normalization.

#pragma once

#include <map>

#include "hotab/kernel.hpp"

namespace hotab {

/// Finite, type-preserving map from names to terms.
class Substitution {
 public:
  Substitution() = default;

  /// Throws TypeError if the types of `x` and `t` differ or `t` has loose
  /// bound indices.
  void bind(const Name& x, const Term& t);
  /// Copy with `x` rebound to `t`.
  Substitution with(const Name& x, const Term& t) const;

  const Term* find(const Name& x) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<Name, Term>& entries() const { return map_; }

 private:
  std::map<Name, Term> map_;
};

/// Applies `theta` to the free names of `s`.  Bound variables are nameless,
/// so no capture can occur.
Term substitute(const Substitution& theta, const Term& s);

/// Replaces de Bruijn index 0 of `body` by `arg` (shifting as needed).
Term instantiate(const Term& body, const Term& arg);

/// Beta-normal form, leftmost-outermost.
Term normalize(const Term& s);

/// True iff `s` contains no beta-redex.
bool is_normal(const Term& s);

/// `normalize(s t)`.
Term apply_norm(const Term& s, const Term& t);

/// Body of the abstraction `lam` with its bound variable replaced by `x`.
/// Not normalized.
inline Term open_with(const Term& lam, const Term& x) { return instantiate(lam.body(), x); }

}  // namespace hotab
