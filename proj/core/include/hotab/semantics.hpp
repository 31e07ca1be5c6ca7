// Finite standard frames, evaluation, model extraction and brute-force
// model enumeration.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hotab/branch.hpp"

namespace hotab {

/// Raised when a domain needed for evaluation exceeds the frame's ceiling.
class DomainTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element of a finite domain: an atom for base types, a total table
/// for function types (entry i is the image of the i-th argument element).
class Value {
 public:
  Value() = default;
  static Value atom(std::uint32_t a);
  static Value table(std::vector<Value> entries);

  bool is_atom() const { return !entries_; }
  std::uint32_t atom() const { return atom_; }
  const std::vector<Value>& entries() const { return *entries_; }

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

 private:
  std::uint32_t atom_ = 0;
  std::shared_ptr<const std::vector<Value>> entries_;
};

/// Standard frame: D(o) = {0, 1}, D(a) = {0 .. n_a - 1}, full function
/// spaces.  Sorts without an explicit size have one element.
class Frame {
 public:
  static constexpr std::uint64_t kDefaultCeiling = std::uint64_t{1} << 25;

  Frame() = default;
  explicit Frame(std::map<Type, std::size_t> sort_sizes, std::uint64_t ceiling = kDefaultCeiling);

  std::size_t sort_size(const Type& alpha) const;
  const std::map<Type, std::size_t>& sort_sizes() const { return sizes_; }
  std::uint64_t ceiling() const { return ceiling_; }

  /// |D(t)|, saturating at UINT64_MAX.
  std::uint64_t card(const Type& t) const;
  /// |D(t)|; throws DomainTooLarge above the ceiling.
  std::size_t bounded_card(const Type& t) const;

  /// The i-th element of D(t) (mixed radix over tables).
  Value element(const Type& t, std::uint64_t i) const;
  /// Inverse of `element`.
  std::uint64_t index_of(const Value& v, const Type& t) const;

  /// Optional labels for the elements of each sort (extraction records the
  /// discriminants here).
  std::map<Type, std::vector<Discriminant>> labels;

 private:
  std::map<Type, std::size_t> sizes_;
  std::uint64_t ceiling_ = kDefaultCeiling;
};

struct Model {
  Frame frame;
  std::map<Name, Value> values;
};

/// Canonical values of the logical constants.
struct LogicalConstants {
  Value neg;
  Value imp;
  std::map<Type, Value> eq;
  std::map<Type, Value> forall;
};

/// Tables for not, imp, and =t / forall_a for the given types and sorts.
LogicalConstants canonical_constants(const Frame& f, std::span<const Type> eq_types = {},
                                     std::span<const Type> sorts = {});
/// The canonical value of one logical constant.
Value constant_value(const Frame& f, const Name& c);

/// Values for the variables of a term.  `apply` receives at most as many
/// arguments as the variable's type admits.
class Interpretation {
 public:
  virtual ~Interpretation() = default;
  virtual Value apply(const Name& x, std::span<const Value> args) const = 0;
};

/// Evaluates `s` with `env` binding de Bruijn indices (env.back() is index 0).
Value eval(const Frame& f, const Interpretation& interp, const Term& s, const std::vector<Value>& env = {});
/// Throws std::out_of_range if a free variable has no value.
Value eval(const Model& m, const Term& s, const std::vector<Value>& env = {});

bool check_model(const Model& m, const Branch& a);
bool check_model(const Model& m, std::span<const Term> formulas);

class NotEvident : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal failure: no interpretation over the discriminant frame.
class ExtractionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model with D(a) = discriminants(E, a) for every sort in E, found by
/// backtracking over variable table entries.  Throws NotEvident or
/// ExtractionFailure.
Model extract_model(const Branch& e, std::uint64_t ceiling = Frame::kDefaultCeiling);

/// All sorts occurring in the types of subterms of A.
std::vector<Type> sorts_of(const Branch& a);

/// Visits every model of A over frames with 1 <= |D(a)| <= max_size for
/// each sort of A, restricted to the free variables of A.  `visit` returns
/// false to stop.  Returns the number of models visited.
std::size_t enumerate_models(const Branch& a, std::size_t max_size, const std::function<bool(const Model&)>& visit,
                             std::uint64_t ceiling = Frame::kDefaultCeiling);
/// Same, over exactly the given sort sizes.
std::size_t enumerate_models(const Branch& a, const std::map<Type, std::size_t>& sizes,
                             const std::function<bool(const Model&)>& visit,
                             std::uint64_t ceiling = Frame::kDefaultCeiling);

std::optional<Model> find_model(const Branch& a, std::size_t max_size);

}  // namespace hotab
