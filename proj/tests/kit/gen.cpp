#include "gen.hpp"

#include <algorithm>

namespace hotab::testkit {

Pool::Pool() {
  Type ao = Type::fun(a, o);
  auto add = [&](const char* id, const Type& t) { vars.push_back(Name::var(id, t)); };
  add("x", a);
  add("y", a);
  add("z", a);
  add("w", b);
  add("p", o);
  add("q", o);
  add("f", Type::fun(a, a));
  add("g", Type::fun(a, a));
  add("r", ao);
  add("s", ao);
  add("h", Type::fun({a, a}, o));
  add("k", Type::fun(a, b));
  add("P", Type::fun(ao, o));
  add("F", Type::fun(ao, a));
  add("n", Type::fun(o, o));
}

std::vector<Name> Pool::of_type(const Type& t) const {
  std::vector<Name> out;
  for (const Name& v : vars)
    if (v.type() == t) out.push_back(v);
  return out;
}

const Pool& pool() {
  static const Pool p;
  return p;
}

Type Gen::type(int depth) {
  const Pool& P = pool();
  if (depth <= 0 || chance(0.55)) {
    double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    return r < 0.45 ? P.a : r < 0.9 ? P.o : P.b;
  }
  Type arg = type(depth - 1);
  return Type::fun(arg, type(depth - 1));
}

Term Gen::leaf(const Type& t, const std::vector<Type>& binders) {
  std::vector<Term> cands;
  for (const Name& v : pool().of_type(t)) cands.push_back(Term::name(v));
  for (std::size_t i = 0; i < binders.size(); ++i)
    if (binders[binders.size() - 1 - i] == t) {
      // Favour bound variables so binders get used.
      cands.push_back(Term::bound(static_cast<std::uint32_t>(i), t));
      cands.push_back(Term::bound(static_cast<std::uint32_t>(i), t));
    }
  if (t.is_fun()) {
    const Type o = Type::o();
    if (t == Type::fun(o, o)) cands.push_back(Term::name(Name::neg()));
    if (t == Type::fun({o, o}, o)) cands.push_back(Term::name(Name::imp()));
    if (t.result().is_fun() && t.result().arg() == t.arg() && t.result().result().is_o())
      cands.push_back(Term::name(Name::eq(t.arg())));
    if (t.result().is_o() && t.arg().is_fun() && t.arg().arg().is_sort() && t.arg().result().is_o())
      cands.push_back(Term::name(Name::forall(t.arg().arg())));
  }
  if (cands.empty()) {
    std::vector<Type> inner = binders;
    inner.push_back(t.arg());
    return Term::lam_raw(t.arg(), leaf(t.result(), inner));
  }
  return pick(cands);
}

Term Gen::term(const Type& t, int depth, std::vector<Type> binders) {
  if (depth <= 0) return leaf(t, binders);
  for (;;) {
    double r = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (r < 0.2) return leaf(t, binders);
    if (r < 0.4 && t.is_fun()) {
      std::vector<Type> inner = binders;
      inner.push_back(t.arg());
      return Term::lam_raw(t.arg(), term(t.result(), depth - 1, inner));
    }
    if (r < 0.6) {
      // Variable head applied to j arguments.
      struct Cand {
        Term head;
        std::size_t j;
      };
      std::vector<Cand> cands;
      auto consider = [&](const Term& h) {
        Type ht = h.type();
        for (std::size_t j = 1; ht.is_fun(); ++j) {
          ht = ht.result();
          if (ht == t) cands.push_back({h, j});
        }
      };
      for (const Name& v : pool().vars) consider(Term::name(v));
      for (std::size_t i = 0; i < binders.size(); ++i)
        consider(Term::bound(static_cast<std::uint32_t>(i), binders[binders.size() - 1 - i]));
      if (cands.empty()) continue;
      const Cand& c = pick(cands);
      Term out = c.head;
      for (std::size_t i = 0; i < c.j; ++i) out = Term::app(out, term(out.type().arg(), depth - 1, binders));
      return out;
    }
    if (r < 0.72) {
      Type tau = type(1);
      std::vector<Type> inner = binders;
      inner.push_back(tau);
      Term fun = Term::lam_raw(tau, term(t, depth - 1, inner));
      return Term::app(fun, term(tau, depth - 1, binders));
    }
    if (t.is_o()) {
      switch (below(5)) {
        case 0:
          return mk_not(term(t, depth - 1, binders));
        case 1:
          return mk_imp(term(t, depth - 1, binders), term(t, depth - 1, binders));
        case 2:
        case 3: {
          Type tau = type(1);
          return mk_eq(term(tau, depth - 1, binders), term(tau, depth - 1, binders));
        }
        default:
          return mk_forall(term(Type::fun(pool().a, t), depth - 1, binders));
      }
    }
  }
}

Term Gen::base_spine(int depth) {
  std::vector<Name> heads;
  for (const Name& v : pool().vars)
    if (v.type().is_fun()) heads.push_back(v);
  Term out = Term::name(pick(heads));
  while (out.type().is_fun()) out = Term::app(out, term(out.type().arg(), depth - 1));
  return out;
}

Substitution Gen::substitution(int depth) {
  Substitution th;
  for (const Name& v : pool().vars)
    if (chance(0.3)) th.bind(v, term(v.type(), depth));
  return th;
}

Term Gen::bsr_predicate(int depth) {
  const Pool& P = pool();
  if (depth <= 0 || chance(0.2)) return Term::name(pick(P.of_type(Type::fun(P.a, P.o))));
  return Term::lam_raw(P.a, bsr_formula(depth - 1, chance(0.5), {P.a}));
}

Term Gen::bsr_formula(int depth, bool top, std::vector<Type> binders) {
  const Pool& P = pool();
  auto individual = [&]() {
    std::vector<Term> c;
    for (const Name& v : P.of_type(P.a)) c.push_back(Term::name(v));
    for (std::size_t i = 0; i < binders.size(); ++i)
      if (binders[binders.size() - 1 - i] == P.a) {
        c.push_back(Term::bound(static_cast<std::uint32_t>(i), P.a));
        c.push_back(Term::bound(static_cast<std::uint32_t>(i), P.a));
      }
    return pick(c);
  };
  auto atom = [&]() -> Term {
    switch (below(4)) {
      case 0:
        return Term::var(chance(0.5) ? "p" : "q", P.o);
      case 1:
        return Term::app(Term::var(chance(0.5) ? "r" : "s", Type::fun(P.a, P.o)), individual());
      case 2:
        return Term::app(Term::var("h", Type::fun({P.a, P.a}, P.o)), {individual(), individual()});
      default:
        return mk_eq(individual(), individual());
    }
  };
  if (depth <= 0) return atom();
  switch (below(top ? 4 : 3)) {
    case 0:
      return atom();
    case 1:
      return mk_not(bsr_formula(depth - 1, false, binders));
    case 2:
      return mk_imp(bsr_formula(depth - 1, false, binders), bsr_formula(depth - 1, false, binders));
    default: {
      std::vector<Type> inner = binders;
      inner.push_back(P.a);
      return mk_forall(Term::lam_raw(P.a, bsr_formula(depth - 1, true, inner)));
    }
  }
}

Frame Gen::frame(std::size_t max_size) {
  const Pool& P = pool();
  return Frame({{P.a, 1 + below(max_size)}, {P.b, 1 + below(max_size)}});
}

Value Gen::value(const Frame& f, const Type& t) {
  std::uint64_t n = f.card(t);
  return f.element(t, std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_));
}

Model Gen::model(std::size_t max_size, const std::vector<Name>& extra) {
  Model m;
  m.frame = frame(max_size);
  for (const Name& v : pool().vars) m.values[v] = value(m.frame, v.type());
  for (const Name& v : extra) m.values[v] = value(m.frame, v.type());
  return m;
}

std::optional<bool> satisfiable_extension(const Model& m, const std::vector<Term>& formulas, std::uint64_t limit) {
  std::vector<Name> missing;
  for (const Term& s : formulas)
    for (const Name& v : free_vars(s))
      if (!m.values.count(v) && std::find(missing.begin(), missing.end(), v) == missing.end()) missing.push_back(v);
  std::vector<std::uint64_t> cards;
  std::uint64_t total = 1;
  for (const Name& v : missing) {
    cards.push_back(m.frame.card(v.type()));
    if (cards.back() > limit || total * cards.back() > limit) return std::nullopt;
    total *= cards.back();
  }
  Model ext = m;
  const Value one = Value::atom(1);
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t rest = i;
    for (std::size_t j = 0; j < missing.size(); ++j) {
      ext.values[missing[j]] = m.frame.element(missing[j].type(), rest % cards[j]);
      rest /= cards[j];
    }
    bool all = true;
    for (const Term& s : formulas)
      if (eval(ext, s) != one) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace hotab::testkit
