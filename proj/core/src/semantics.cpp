#include "hotab/semantics.hpp"

#include <algorithm>
#include <limits>

#include "hotab/fragments.hpp"
#include "hotab/search.hpp"

namespace hotab {

Value Value::atom(std::uint32_t a) {
  Value v;
  v.atom_ = a;
  return v;
}

Value Value::table(std::vector<Value> entries) {
  Value v;
  v.entries_ = std::make_shared<const std::vector<Value>>(std::move(entries));
  return v;
}

bool operator==(const Value& a, const Value& b) {
  if (a.is_atom() != b.is_atom()) return false;
  if (a.is_atom()) return a.atom_ == b.atom_;
  return a.entries_ == b.entries_ || *a.entries_ == *b.entries_;
}

// ---------------------------------------------------------------------------
// Frames

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == kSat) return kSat;
  }
  return r;
}

}  // namespace

Frame::Frame(std::map<Type, std::size_t> sort_sizes, std::uint64_t ceiling)
    : sizes_(std::move(sort_sizes)), ceiling_(ceiling) {
  for (const auto& [t, n] : sizes_)
    if (!t.is_sort() || n == 0) throw std::invalid_argument("frame sizes must be positive and given for sorts");
}

std::size_t Frame::sort_size(const Type& alpha) const {
  auto it = sizes_.find(alpha);
  return it == sizes_.end() ? 1 : it->second;
}

std::uint64_t Frame::card(const Type& t) const {
  if (t.is_o()) return 2;
  if (t.is_base()) return sort_size(t);
  std::uint64_t a = card(t.arg());
  std::uint64_t r = card(t.result());
  if (r == 1) return 1;
  if (a == kSat || r == kSat) return kSat;
  return sat_pow(r, a);
}

std::size_t Frame::bounded_card(const Type& t) const {
  std::uint64_t c = card(t);
  if (c > ceiling_) throw DomainTooLarge("domain of type " + t.str() + " exceeds the cardinality ceiling");
  return static_cast<std::size_t>(c);
}

Value Frame::element(const Type& t, std::uint64_t i) const {
  if (t.is_base()) return Value::atom(static_cast<std::uint32_t>(i));
  std::size_t n = bounded_card(t.arg());
  std::uint64_t r = card(t.result());
  if (r == kSat) throw DomainTooLarge("domain of type " + t.result().str() + " is too large");
  std::vector<Value> entries;
  entries.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    entries.push_back(element(t.result(), i % r));
    i /= r;
  }
  return Value::table(std::move(entries));
}

std::uint64_t Frame::index_of(const Value& v, const Type& t) const {
  if (t.is_base()) return v.atom();
  bounded_card(t);
  std::uint64_t r = card(t.result());
  std::uint64_t idx = 0;
  const auto& es = v.entries();
  for (std::size_t k = es.size(); k-- > 0;) idx = idx * r + index_of(es[k], t.result());
  return idx;
}

// ---------------------------------------------------------------------------
// Constants

Value constant_value(const Frame& f, const Name& c) {
  switch (c.op()) {
    case ConstOp::Not:
      return Value::table({Value::atom(1), Value::atom(0)});
    case ConstOp::Imp:
      return Value::table({Value::table({Value::atom(1), Value::atom(1)}), Value::table({Value::atom(0), Value::atom(1)})});
    case ConstOp::Eq: {
      std::size_t n = f.bounded_card(c.param());
      std::vector<Value> rows;
      rows.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Value> row(n, Value::atom(0));
        row[i] = Value::atom(1);
        rows.push_back(Value::table(std::move(row)));
      }
      return Value::table(std::move(rows));
    }
    case ConstOp::Forall: {
      std::size_t n = f.bounded_card(Type::fun(c.param(), Type::o()));
      std::vector<Value> es(n, Value::atom(0));
      es[n - 1] = Value::atom(1);  // the constant 1 function has the largest index
      return Value::table(std::move(es));
    }
    case ConstOp::None:
      break;
  }
  throw std::invalid_argument("not a logical constant: " + c.id());
}

LogicalConstants canonical_constants(const Frame& f, std::span<const Type> eq_types, std::span<const Type> sorts) {
  LogicalConstants lc;
  lc.neg = constant_value(f, Name::neg());
  lc.imp = constant_value(f, Name::imp());
  for (const Type& t : eq_types) lc.eq.emplace(t, constant_value(f, Name::eq(t)));
  for (const Type& a : sorts) lc.forall.emplace(a, constant_value(f, Name::forall(a)));
  return lc;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Thrown by the extraction interpretation for an entry not yet chosen.
struct Undefined {
  Name var;
  std::size_t entry;
  std::optional<Term> hint;
};

Value apply_value(const Frame& f, Value fn, const Type& fn_type, std::span<const Value> args) {
  Type ty = fn_type;
  for (const Value& a : args) {
    fn = fn.entries()[f.index_of(a, ty.arg())];
    ty = ty.result();
  }
  return fn;
}

class Evaluator {
 public:
  Evaluator(const Frame& f, const Interpretation& in) : f_(f), in_(in) {}

  Value ev(const Term& t, std::vector<Value>& env) {
    switch (t.kind()) {
      case TermKind::Name:
        if (t.head_name().is_var()) return var(t, t.head_name(), {});
        return constant_value(f_, t.head_name());
      case TermKind::Bound:
        return env[env.size() - 1 - t.index()];
      case TermKind::Lam: {
        std::size_t n = f_.bounded_card(t.binder_type());
        std::vector<Value> es;
        es.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
          env.push_back(f_.element(t.binder_type(), i));
          es.push_back(ev(t.body(), env));
          env.pop_back();
        }
        return Value::table(std::move(es));
      }
      case TermKind::App:
        break;
    }
    Spine sp = spine(t);
    const Term& h = sp.head;
    if (h.is_name() && h.head_name().is_const()) {
      const Name& c = h.head_name();
      std::size_t n = sp.args.size();
      switch (c.op()) {
        case ConstOp::Not:
          return Value::atom(1 - ev(sp.args[0], env).atom());
        case ConstOp::Imp:
          if (n == 2) return ev(sp.args[0], env).atom() == 0 ? Value::atom(1) : ev(sp.args[1], env);
          break;
        case ConstOp::Eq:
          if (n == 2) return Value::atom(ev(sp.args[0], env) == ev(sp.args[1], env) ? 1 : 0);
          break;
        case ConstOp::Forall:
          if (n == 1) {
            Value p = ev(sp.args[0], env);
            bool all = std::all_of(p.entries().begin(), p.entries().end(), [](const Value& v) { return v.atom() == 1; });
            return Value::atom(all ? 1 : 0);
          }
          break;
        case ConstOp::None:
          break;
      }
    }
    std::vector<Value> args;
    args.reserve(sp.args.size());
    for (const Term& a : sp.args) args.push_back(ev(a, env));
    if (h.is_var()) return var(t, h.head_name(), args);
    return apply_value(f_, ev(h, env), h.type(), args);
  }

 private:
  Value var(const Term& t, const Name& x, std::span<const Value> args) {
    try {
      return in_.apply(x, args);
    } catch (Undefined& u) {
      if (!u.hint && t.type().is_base() && t.is_closed()) u.hint = t;
      throw;
    }
  }

  const Frame& f_;
  const Interpretation& in_;
};

class MapInterpretation : public Interpretation {
 public:
  MapInterpretation(const Frame& f, const std::map<Name, Value>& values) : f_(f), values_(values) {}
  Value apply(const Name& x, std::span<const Value> args) const override {
    return apply_value(f_, values_.at(x), x.type(), args);
  }

 private:
  const Frame& f_;
  const std::map<Name, Value>& values_;
};

}  // namespace

Value eval(const Frame& f, const Interpretation& interp, const Term& s, const std::vector<Value>& env) {
  std::vector<Value> e = env;
  return Evaluator(f, interp).ev(s, e);
}

Value eval(const Model& m, const Term& s, const std::vector<Value>& env) {
  return eval(m.frame, MapInterpretation(m.frame, m.values), s, env);
}

bool check_model(const Model& m, std::span<const Term> formulas) {
  MapInterpretation in(m.frame, m.values);
  Evaluator ev(m.frame, in);
  std::vector<Value> env;
  for (const Term& s : formulas)
    if (ev.ev(s, env).atom() != 1) return false;
  return true;
}

bool check_model(const Model& m, const Branch& a) { return check_model(m, a.formulas()); }

std::vector<Type> sorts_of(const Branch& a) {
  std::vector<Type> out;
  std::function<void(const Type&)> add = [&](const Type& t) {
    if (t.is_fun()) {
      add(t.arg());
      add(t.result());
    } else if (t.is_sort() && std::find(out.begin(), out.end(), t) == out.end()) {
      out.push_back(t);
    }
  };
  for (const Term& s : a.formulas())
    for_each_subterm(s, [&](const Term& t, std::uint32_t) {
      add(t.type());
      if (t.is_name()) add(t.head_name().type());
    });
  return out;
}

// ---------------------------------------------------------------------------
// Extraction

namespace {

// Variable values as flat tables over the uncurried argument tuple; unset
// entries are -1.
class PartialInterpretation : public Interpretation {
 public:
  struct Slot {
    std::vector<Type> args;
    Type target;
    std::vector<std::int64_t> entries;
  };

  PartialInterpretation(const Frame& f, const std::vector<Name>& vars) : f_(f) {
    for (const Name& x : vars) {
      Slot s{x.type().arg_types(), x.type().target(), {}};
      std::uint64_t n = 1;
      for (const Type& a : s.args) {
        n = sat_mul(n, f.card(a));
        if (n > f.ceiling()) throw DomainTooLarge("table of " + x.id() + " exceeds the cardinality ceiling");
      }
      s.entries.assign(n, -1);
      slots_.emplace(x, std::move(s));
    }
  }

  Value apply(const Name& x, std::span<const Value> args) const override {
    const Slot& s = slots_.at(x);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < args.size(); ++i) offset = offset * f_.card(s.args[i]) + f_.index_of(args[i], s.args[i]);
    return build(x, s, args.size(), offset);
  }

  Slot& slot(const Name& x) { return slots_.at(x); }

  Value full(const Name& x) const { return build(x, slots_.at(x), 0, 0); }

 private:
  Value build(const Name& x, const Slot& s, std::size_t depth, std::size_t offset) const {
    if (depth == s.args.size()) {
      std::int64_t v = s.entries[offset];
      if (v < 0) throw Undefined{x, offset, std::nullopt};
      return Value::atom(static_cast<std::uint32_t>(v));
    }
    std::size_t n = f_.bounded_card(s.args[depth]);
    std::vector<Value> es;
    es.reserve(n);
    for (std::size_t i = 0; i < n; ++i) es.push_back(build(x, s, depth + 1, offset * n + i));
    return Value::table(std::move(es));
  }

  const Frame& f_;
  std::map<Name, Slot> slots_;
};

class Extractor {
 public:
  Extractor(const Branch& e, const Frame& f, PartialInterpretation& in) : e_(e), f_(f), in_(in), ev_(f, in) {}

  bool solve(std::size_t i) {
    std::vector<Value> env;
    for (; i < e_.size(); ++i) {
      try {
        if (ev_.ev(e_.formulas()[i], env).atom() != 1) return false;
      } catch (Undefined& u) {
        auto& slot = in_.slot(u.var);
        for (std::uint32_t v : candidates(slot.target, u.hint)) {
          if (++steps_ > kMaxSteps) throw ExtractionFailure("extraction exceeded its step limit");
          slot.entries[u.entry] = v;
          if (solve(i)) return true;
          slot.entries[u.entry] = -1;
        }
        return false;
      }
    }
    return true;
  }

 private:
  static constexpr std::size_t kMaxSteps = 5'000'000;

  std::vector<std::uint32_t> candidates(const Type& target, const std::optional<Term>& hint) const {
    std::vector<std::uint32_t> out;
    if (target.is_o()) {
      bool neg = hint && e_.contains(mk_not(*hint));
      bool pos = hint && e_.contains(*hint);
      if (pos && !neg) return {1, 0};
      return {0, 1};
    }
    std::size_t n = f_.sort_size(target);
    auto lab = f_.labels.find(target);
    if (hint && lab != f_.labels.end())
      for (std::uint32_t k = 0; k < n; ++k)
        if (lab->second[k].contains(*hint)) out.push_back(k);
    for (std::uint32_t k = 0; k < n; ++k)
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    return out;
  }

  const Branch& e_;
  const Frame& f_;
  PartialInterpretation& in_;
  Evaluator ev_;
  std::size_t steps_ = 0;
};

void require_evident(const Branch& e) {
  if (e.closed()) throw NotEvident("branch is closed");
  bool efo = std::all_of(e.formulas().begin(), e.formulas().end(), [](const Term& s) { return is_quasi_efo(s); });
  EvidenceScope scope = EvidenceScope::EFO;
  if (!efo) {
    if (!e.of_kind(FormulaKind::FunEq).empty() || !e.of_kind(FormulaKind::Forall).empty())
      throw NotEvident("evidence of functional equations or quantifications outside EFO is not decidable");
    scope = EvidenceScope::STTBounded;
  }
  EvidenceReport r = is_evident(e, scope);
  if (!r.evident) {
    const EvidenceViolation& v = r.violations.front();
    throw NotEvident(std::string("condition ") + to_string(v.condition) + " fails" +
                     (v.detail.empty() ? "" : ": " + v.detail));
  }
}

}  // namespace

Model extract_model(const Branch& e, std::uint64_t ceiling) {
  require_evident(e);

  std::map<Type, std::size_t> sizes;
  std::map<Type, std::vector<Discriminant>> labels;
  for (const Type& a : sorts_of(e)) {
    const auto& ds = e.discriminants(a);
    sizes[a] = ds.size();
    labels[a] = ds;
  }
  Model m{Frame(sizes, ceiling), {}};
  m.frame.labels = std::move(labels);

  const std::vector<Name>& vars = e.free_vars();
  PartialInterpretation in(m.frame, vars);
  Extractor x(e, m.frame, in);
  if (!x.solve(0)) throw ExtractionFailure("no interpretation over the discriminant frame satisfies the branch");

  for (const Name& v : vars) {
    auto& slot = in.slot(v);
    for (auto& entry : slot.entries)
      if (entry < 0) entry = 0;
    m.values.emplace(v, in.full(v));
  }
  if (!check_model(m, e)) throw ExtractionFailure("extracted interpretation does not satisfy the branch");
  return m;
}

// ---------------------------------------------------------------------------
// Enumeration

std::size_t enumerate_models(const Branch& a, const std::map<Type, std::size_t>& sizes,
                             const std::function<bool(const Model&)>& visit, std::uint64_t ceiling) {
  Model m{Frame(sizes, ceiling), {}};
  const std::vector<Name>& vars = a.free_vars();
  std::vector<std::size_t> var_pos;
  // Each formula is checked as soon as its last free variable is assigned.
  std::vector<std::vector<Term>> due(vars.size() + 1);
  std::map<Name, std::size_t> index;
  for (std::size_t i = 0; i < vars.size(); ++i) index.emplace(vars[i], i + 1);
  for (const Term& s : a.formulas()) {
    std::size_t last = 0;
    for (const Name& x : free_vars(s)) last = std::max(last, index.at(x));
    due[last].push_back(s);
  }

  MapInterpretation in(m.frame, m.values);
  Evaluator ev(m.frame, in);
  std::vector<Value> env;
  auto ok = [&](std::size_t k) {
    for (const Term& s : due[k])
      if (ev.ev(s, env).atom() != 1) return false;
    return true;
  };

  std::size_t count = 0;
  bool stop = false;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (stop) return;
    if (k == vars.size()) {
      ++count;
      if (!visit(m)) stop = true;
      return;
    }
    const Name& x = vars[k];
    std::size_t n = m.frame.bounded_card(x.type());
    for (std::size_t i = 0; i < n && !stop; ++i) {
      m.values.insert_or_assign(x, m.frame.element(x.type(), i));
      if (ok(k + 1)) go(k + 1);
    }
    m.values.erase(x);
  };
  if (ok(0)) go(0);
  return count;
}

std::size_t enumerate_models(const Branch& a, std::size_t max_size, const std::function<bool(const Model&)>& visit,
                             std::uint64_t ceiling) {
  std::vector<Type> sorts = sorts_of(a);
  std::vector<std::size_t> sz(sorts.size(), 1);
  std::size_t count = 0;
  bool stop = false;
  auto wrapped = [&](const Model& m) {
    if (!visit(m)) stop = true;
    return !stop;
  };
  while (true) {
    std::map<Type, std::size_t> sizes;
    for (std::size_t i = 0; i < sorts.size(); ++i) sizes[sorts[i]] = sz[i];
    count += enumerate_models(a, sizes, wrapped, ceiling);
    if (stop) break;
    std::size_t i = 0;
    while (i < sz.size() && sz[i] == max_size) sz[i++] = 1;
    if (i == sz.size()) break;
    ++sz[i];
  }
  return count;
}

std::optional<Model> find_model(const Branch& a, std::size_t max_size) {
  std::optional<Model> found;
  enumerate_models(a, max_size, [&](const Model& m) {
    found = m;
    return false;
  });
  return found;
}

}  // namespace hotab
