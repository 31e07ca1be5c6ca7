// S-expression problem files, and text forms of terms, proofs and models.
//
//   (sort a)                  declare a sort
//   (var x T)                 declare a variable
//   (assume t)                add a formula to the initial branch
//   (mode stt|efo|auto)       default mode for the driver
//
//   T ::= o | a | (> T1 ... Tn)
//   t ::= x | (not t) | (imp t u) | (= t u) | (neq t u) | (forall (x T) t)
//       | (forall a t) | (lam (x T) t) | (const not|imp|(= T)|(forall a)) | (t u1 ... un)

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hotab/fragments.hpp"
#include "hotab/search.hpp"

namespace hotab {

/// Syntax, type and scoping errors, with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct Problem {
  std::vector<Type> sorts;
  std::vector<Name> vars;
  /// Normalized assumptions, in file order.
  std::vector<Term> assumptions;
  /// Indices of assumptions that changed under normalization.
  std::vector<std::size_t> normalized;
  std::optional<std::string> mode;

  Branch branch() const { return Branch(assumptions); }

  friend bool operator==(const Problem& a, const Problem& b) {
    return a.sorts == b.sorts && a.vars == b.vars && a.assumptions == b.assumptions && a.mode == b.mode;
  }
};

Problem parse_problem(std::string_view text);
std::string serialize(const Problem& p);

std::string print_type(const Type& t);
/// Binder names avoid the free identifiers of `t`.
std::string print_term(const Term& t);

/// Parses a term against the declarations of `p`.
Term parse_term(const Problem& p, std::string_view text);

/// Problem declarations followed by the proof tree.
std::string serialize_proof(const Problem& p, const Proof& proof);

struct ProofFile {
  Problem problem;
  Proof proof;
};
ProofFile parse_proof(std::string_view text);

/// `sort a: 0 = {x}, 1 = {y}` lines, then one `name = value` line per variable.
std::string print_model(const Model& m);
std::string print_value(const Frame& f, const Value& v, const Type& t);

}  // namespace hotab
