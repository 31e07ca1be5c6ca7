// Types, names and alpha-canonical terms of simple type theory.
//
// Terms use a locally nameless representation: free occurrences refer to
// named `Name`s, bound occurrences are de Bruijn indices.  Two
// alpha-equivalent terms therefore have identical structure and compare
// equal with `==`.  All values are immutable and may be shared freely.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hotab {

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Types

class Type {
 public:
  /// The truth-value type `o`.
  static Type o();
  /// A base type.  `"o"` yields the truth-value type; any other id is a sort.
  static Type base(std::string_view id);
  static Type fun(Type arg, Type result);
  /// Right-associated arrow `args[0] -> ... -> args[n-1] -> result`.
  static Type fun(std::span<const Type> args, Type result);
  static Type fun(std::initializer_list<Type> args, Type result) {
    return fun(std::span<const Type>(args.begin(), args.size()), std::move(result));
  }

  bool is_base() const;
  bool is_fun() const { return !is_base(); }
  bool is_o() const;
  bool is_sort() const { return is_base() && !is_o(); }

  const std::string& id() const;  // base types only
  const Type& arg() const;        // arrow types only
  const Type& result() const;     // arrow types only

  /// Argument types of the full arrow spine and the final base type.
  std::vector<Type> arg_types() const;
  Type target() const;
  std::size_t arity() const;

  /// True if `o` occurs anywhere in the type.
  bool contains_o() const;

  std::size_t hash() const;
  std::string str() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  friend bool operator<(const Type& a, const Type& b) { return compare(a, b) < 0; }
  static int compare(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Names

enum class NameKind : std::uint8_t { Variable, Constant };

/// Logical constants.  `Eq` and `Forall` are families indexed by a type.
enum class ConstOp : std::uint8_t { None, Not, Imp, Eq, Forall };

class Name {
 public:
  static Name var(std::string_view id, Type type);
  static Name neg();
  static Name imp();
  /// `=_sigma : sigma -> sigma -> o`
  static Name eq(const Type& sigma);
  /// `forall_alpha : (alpha -> o) -> o`; alpha must be a sort.
  static Name forall(const Type& alpha);

  const std::string& id() const;
  const Type& type() const;
  NameKind kind() const;
  ConstOp op() const;
  bool is_var() const { return kind() == NameKind::Variable; }
  bool is_const() const { return kind() == NameKind::Constant; }
  /// For `Eq` the compared type, for `Forall` the quantified sort.
  Type param() const;

  std::size_t hash() const;

  friend bool operator==(const Name& a, const Name& b);
  friend bool operator!=(const Name& a, const Name& b) { return !(a == b); }
  friend bool operator<(const Name& a, const Name& b) { return compare(a, b) < 0; }
  static int compare(const Name& a, const Name& b);

 private:
  struct Data;
  explicit Name(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

using NameSet = std::set<Name>;

// ---------------------------------------------------------------------------
// Terms

enum class TermKind : std::uint8_t { Name, Bound, App, Lam };

class Term {
 public:
  static Term name(const Name& n);
  static Term var(std::string_view id, const Type& type) { return name(Name::var(id, type)); }
  /// De Bruijn index `index` of the given type.  Only meaningful below a Lam.
  static Term bound(std::uint32_t index, const Type& type);
  /// Throws TypeError unless `f : a -> b` and `a == type_of(x)`.
  static Term app(const Term& f, const Term& x);
  static Term app(const Term& f, std::span<const Term> args);
  static Term app(const Term& f, std::initializer_list<Term> args) {
    return app(f, std::span<const Term>(args.begin(), args.size()));
  }
  /// Abstraction with a raw body (body may use index 0 for the binder).
  static Term lam_raw(const Type& binder, const Term& body);
  /// `lambda x. body`: abstracts the free variable `x` out of `body`.
  static Term lam(const Name& x, const Term& body);

  TermKind kind() const;
  const Type& type() const;
  const Name& head_name() const;       // TermKind::Name
  std::uint32_t index() const;         // TermKind::Bound
  const Term& fun() const;             // TermKind::App
  const Term& arg() const;             // TermKind::App
  const Type& binder_type() const;     // TermKind::Lam
  const Term& body() const;            // TermKind::Lam

  bool is_name() const { return kind() == TermKind::Name; }
  bool is_var() const { return is_name() && head_name().is_var(); }
  bool is_const(ConstOp op) const { return is_name() && head_name().op() == op; }
  bool is_app() const { return kind() == TermKind::App; }
  bool is_lam() const { return kind() == TermKind::Lam; }

  /// Number of nodes.
  std::size_t size() const;
  /// One more than the largest loose de Bruijn index; 0 for proper terms.
  std::uint32_t loose_bound() const;
  bool is_closed() const { return loose_bound() == 0; }
  bool has_lambda() const;

  std::size_t hash() const;
  /// Identity of the shared node; equal terms need not share it.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }
  /// Total structural order (used for deterministic output only).
  static int compare(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace hotab

template <>
struct std::hash<hotab::Type> {
  std::size_t operator()(const hotab::Type& t) const noexcept { return t.hash(); }
};
template <>
struct std::hash<hotab::Name> {
  std::size_t operator()(const hotab::Name& n) const noexcept { return n.hash(); }
};
template <>
struct std::hash<hotab::Term> {
  std::size_t operator()(const hotab::Term& t) const noexcept { return t.hash(); }
};

namespace hotab {

using NameHashSet = std::unordered_set<Name>;
using TermHashSet = std::unordered_set<Term>;

// Logical connectives with their conventional argument order.
Term mk_not(const Term& s);
Term mk_imp(const Term& s, const Term& t);
Term mk_eq(const Term& s, const Term& t);
Term mk_neq(const Term& s, const Term& t);
/// `forall_alpha s` for `s : alpha -> o`.
Term mk_forall(const Term& s);
/// `forall_alpha (lambda x. body)`
Term mk_forall(const Name& x, const Term& body);

// ---------------------------------------------------------------------------
// Structural utilities

inline const Type& type_of(const Term& t) { return t.type(); }

/// Free variables (logical constants excluded).
NameSet free_vars(const Term& t);
/// Free variables in order of first occurrence, appended to `out` unless
/// already in `seen`.
void collect_free_vars(const Term& t, std::vector<Name>& out, NameHashSet& seen);
bool occurs_free(const Name& x, const Term& t);

/// A variable of type `sigma` whose identifier is not used by any name in
/// `avoid`.  Deterministic: the lowest index of the scheme for `sigma`.
Name fresh_var(const Type& sigma, const NameSet& avoid);
Name fresh_var(const Type& sigma, const std::function<bool(std::string_view)>& taken);

struct Spine {
  Term head;
  std::vector<Term> args;
};
/// Decomposes `h a1 ... an` with `h` not an application.
Spine spine(const Term& t);
/// Head only, without collecting arguments.
const Term& spine_head(const Term& t);

/// Visits every subterm (pre-order) together with its binder depth.
void for_each_subterm(const Term& t, const std::function<void(const Term&, std::uint32_t depth)>& f);

}  // namespace hotab
