#include "hotab/rules.hpp"

#include <algorithm>
#include <map>

#include "hotab/fragments.hpp"
#include "hotab/normalize.hpp"

namespace hotab {

namespace {

constexpr std::pair<RuleId, const char*> kRuleNames[] = {
    {RuleId::DN, "DN"},   {RuleId::BQ, "BQ"},   {RuleId::BE, "BE"},   {RuleId::FQ, "FQ"},     {RuleId::FE, "FE"},
    {RuleId::Mat, "Mat"}, {RuleId::Dec, "Dec"}, {RuleId::Con, "Con"}, {RuleId::Imp, "Imp"},   {RuleId::ImpN, "ImpN"},
    {RuleId::All, "All"}, {RuleId::AllN, "AllN"}, {RuleId::Close, "Close"},
};

}  // namespace

const char* to_string(RuleId r) {
  for (const auto& [id, name] : kRuleNames)
    if (id == r) return name;
  return "?";
}

std::optional<RuleId> rule_from_string(std::string_view s) {
  for (const auto& [id, name] : kRuleNames)
    if (s == name) return id;
  return std::nullopt;
}

std::size_t instantiation_size(const Term& t) {
  switch (t.kind()) {
    case TermKind::App:
      return instantiation_size(t.fun()) + instantiation_size(t.arg());
    case TermKind::Lam:
      return 1 + instantiation_size(t.body());
    default:
      return 1;
  }
}

// ---------------------------------------------------------------------------
// Term enumeration

namespace {

void collect_base_types(const Type& t, std::vector<Type>& out) {
  if (t.is_base()) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  collect_base_types(t.arg(), out);
  collect_base_types(t.result(), out);
}

class Enumerator {
 public:
  explicit Enumerator(const Signature& sig) {
    for (const Name& n : sig.heads) heads_.push_back(Term::name(n));
    if (sig.with_not) heads_.push_back(Term::name(Name::neg()));
    if (sig.with_imp) heads_.push_back(Term::name(Name::imp()));
    for (const Type& t : sig.eq_types) heads_.push_back(Term::name(Name::eq(t)));
    for (const Type& a : sig.sorts) heads_.push_back(Term::name(Name::forall(a)));
  }

  const std::vector<Term>& terms(const Type& ty, const std::vector<Type>& ctx, std::size_t w) {
    std::string key = std::to_string(w) + "|" + ty.str();
    for (const Type& c : ctx) key += "|" + c.str();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<Term> out;
    if (w >= 1) {
      // Neutral terms: a head applied to k arguments.
      std::vector<Term> hs = heads_;
      for (std::size_t i = 0; i < ctx.size(); ++i)
        hs.push_back(Term::bound(static_cast<std::uint32_t>(i), ctx[ctx.size() - 1 - i]));
      for (const Term& h : hs) {
        std::vector<Type> arg_types;
        Type cur = h.type();
        while (true) {
          if (cur == ty && arg_types.size() + 1 <= w) spread(h, arg_types, ctx, w - 1, out);
          if (!cur.is_fun()) break;
          arg_types.push_back(cur.arg());
          cur = cur.result();
        }
      }
      if (ty.is_fun() && w >= 2) {
        std::vector<Type> inner = ctx;
        inner.push_back(ty.arg());
        Type binder = ty.arg();
        for (const Term& b : terms(ty.result(), inner, w - 1)) out.push_back(Term::lam_raw(binder, b));
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  // Applies `h` to arguments of the given types whose sizes sum to `budget`.
  void spread(const Term& h, const std::vector<Type>& args, const std::vector<Type>& ctx, std::size_t budget,
              std::vector<Term>& out) {
    if (args.empty()) {
      if (budget == 0) out.push_back(h);
      return;
    }
    if (budget < args.size()) return;
    std::vector<Term> acc;
    fill(h, args, 0, ctx, budget, acc, out);
  }

  void fill(const Term& h, const std::vector<Type>& args, std::size_t i, const std::vector<Type>& ctx,
            std::size_t budget, std::vector<Term>& acc, std::vector<Term>& out) {
    if (i == args.size()) {
      if (budget == 0) out.push_back(Term::app(h, acc));
      return;
    }
    std::size_t rest = args.size() - i - 1;
    for (std::size_t w = 1; w + rest <= budget; ++w) {
      // Copy: recursive calls may rehash the memo.
      std::vector<Term> cands = terms(args[i], ctx, w);
      for (const Term& c : cands) {
        acc.push_back(c);
        fill(h, args, i + 1, ctx, budget - w, acc, out);
        acc.pop_back();
      }
    }
  }

  std::vector<Term> heads_;
  std::map<std::string, std::vector<Term>> memo_;
};

}  // namespace

std::vector<Term> enumerate_normal_terms(const Signature& sig, const Type& sigma, std::size_t size) {
  Enumerator e(sig);
  return e.terms(sigma, {}, size);
}

Signature branch_signature(const Branch& a) {
  Signature sig;
  sig.heads = a.free_vars();
  std::vector<Type> bases{Type::o()};
  for (const Term& s : a.formulas())
    for_each_subterm(s, [&](const Term& t, std::uint32_t) { collect_base_types(t.type(), bases); });
  sig.eq_types = bases;
  for (const Type& b : bases)
    if (b.is_sort()) sig.sorts.push_back(b);
  return sig;
}

std::vector<Term> closed_subterms(const Branch& a, const Type& sigma) {
  std::vector<Term> out;
  TermHashSet seen;
  for (const Term& s : a.formulas())
    for_each_subterm(s, [&](const Term& t, std::uint32_t) {
      if (t.type() == sigma && t.is_closed() && seen.insert(t).second) out.push_back(t);
    });
  return out;
}

std::vector<Term> instantiation_terms(const Branch& a, const Type& sigma, std::size_t fuel) {
  std::vector<Term> out;
  TermHashSet seen;
  auto take = [&](const Term& t) {
    if (instantiation_size(t) <= fuel && seen.insert(t).second) out.push_back(t);
  };
  if (sigma.is_sort())
    for (const Term& t : a.discriminating(sigma)) take(t);
  for (const Term& t : closed_subterms(a, sigma)) take(t);

  Signature sig = branch_signature(a);
  bool have_var = std::any_of(sig.heads.begin(), sig.heads.end(), [&](const Name& n) { return n.type() == sigma; });
  if (!have_var) sig.heads.push_back(fresh_var(sigma, [&](std::string_view id) { return a.uses_id(id); }));
  Enumerator e(sig);
  for (std::size_t w = 1; w <= fuel; ++w)
    for (const Term& t : e.terms(sigma, {}, w)) take(t);
  return out;
}

// ---------------------------------------------------------------------------
// Instance construction

namespace {

bool subset_of(const Branch& a, const std::vector<Term>& fs) {
  return std::all_of(fs.begin(), fs.end(), [&](const Term& f) { return a.contains(f); });
}

bool redundant(const Branch& a, const RuleInstance& r) {
  return std::any_of(r.alternatives.begin(), r.alternatives.end(),
                     [&](const std::vector<Term>& alt) { return subset_of(a, alt); });
}

auto taken_in(const Branch& a) {
  return [&a](std::string_view id) { return a.uses_id(id); };
}

// Variables worth testing for "is there a variable x with ...": the free
// variables of the branch of the right type plus one fresh variable (which
// stands for every variable not free in the branch).
std::vector<Term> candidate_vars(const Branch& a, const Type& sigma) {
  std::vector<Term> out;
  for (const Name& n : a.free_vars())
    if (n.type() == sigma) out.push_back(Term::name(n));
  out.push_back(Term::name(fresh_var(sigma, taken_in(a))));
  return out;
}

Term fe_conclusion(const Term& s, const Term& t, const Term& x) { return mk_neq(apply_norm(s, x), apply_norm(t, x)); }
Term alln_conclusion(const Term& s, const Term& x) { return mk_not(apply_norm(s, x)); }

bool fe_blocked(const Branch& a, const Term& s, const Term& t) {
  for (const Term& x : candidate_vars(a, s.type().arg()))
    if (a.contains(fe_conclusion(s, t, x))) return true;
  return false;
}

bool alln_blocked(const Branch& a, const Term& s, const Type& alpha) {
  for (const Term& x : candidate_vars(a, alpha))
    if (a.contains(alln_conclusion(s, x))) return true;
  return false;
}

// Whether [s u] is in A for some normal u : alpha.  Substituting a term of
// sort type creates no redex, so u is a closed subterm of [s u] unless s
// ignores its argument, in which case any variable witnesses it.
bool some_instance_in(const Branch& a, const Term& s, const Type& alpha) {
  for (const Term& u : closed_subterms(a, alpha))
    if (a.contains(apply_norm(s, u))) return true;
  return a.contains(apply_norm(s, Term::name(fresh_var(alpha, taken_in(a)))));
}

std::vector<Term> diseqs(const std::vector<Term>& ls, const std::vector<Term>& rs) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < ls.size(); ++i) out.push_back(mk_neq(ls[i], rs[i]));
  return out;
}

RuleInstance make(RuleId r, std::vector<Term> premises, std::vector<std::vector<Term>> alts,
                  std::optional<Term> term = std::nullopt) {
  RuleInstance ri;
  ri.rule = r;
  ri.premises = std::move(premises);
  ri.alternatives = std::move(alts);
  ri.term = std::move(term);
  return ri;
}

std::vector<std::vector<Term>> split(std::vector<Term> fs) {
  std::vector<std::vector<Term>> out;
  for (Term& f : fs) out.push_back({std::move(f)});
  return out;
}

// Single-premise conclusions that do not depend on the branch.
std::vector<std::vector<Term>> local_alternatives(RuleId r, const FormulaShape& sh) {
  const Term& s = *sh.lhs;
  switch (r) {
    case RuleId::DN:
      return {{s}};
    case RuleId::BQ:
      return {{s, *sh.rhs}, {mk_not(s), mk_not(*sh.rhs)}};
    case RuleId::BE:
      return {{s, mk_not(*sh.rhs)}, {mk_not(s), *sh.rhs}};
    case RuleId::Imp:
      return {{mk_not(s)}, {*sh.rhs}};
    case RuleId::ImpN:
      return {{s, mk_not(*sh.rhs)}};
    case RuleId::Dec:
      return split(diseqs(spine(s).args, spine(*sh.rhs).args));
    default:
      return {};
  }
}

RuleId rule_for(FormulaKind k) {
  switch (k) {
    case FormulaKind::DoubleNeg: return RuleId::DN;
    case FormulaKind::BoolEq: return RuleId::BQ;
    case FormulaKind::BoolDiseq: return RuleId::BE;
    case FormulaKind::Imp: return RuleId::Imp;
    case FormulaKind::NegImp: return RuleId::ImpN;
    default: return RuleId::Close;
  }
}

std::vector<std::vector<Term>> mat_alternatives(const Term& pos, const Term& neg_atom) {
  return split(diseqs(spine(pos).args, spine(neg_atom).args));
}

std::vector<std::vector<Term>> con_alternatives(const FormulaShape& eq, const FormulaShape& ne) {
  const Term &s = *eq.lhs, &t = *eq.rhs, &u = *ne.lhs, &v = *ne.rhs;
  return {{mk_neq(s, u), mk_neq(t, u)}, {mk_neq(s, v), mk_neq(t, v)}};
}

class Collector {
 public:
  Collector(const Branch& a, Calculus calc, std::size_t fuel, bool eager, std::size_t limit)
      : a_(a), calc_(calc), fuel_(fuel), eager_(eager), limit_(limit) {}

  std::vector<RuleInstance> run() {
    if (a_.closed()) return {};
    if (eager_) close();
    single(FormulaKind::DoubleNeg);
    single(FormulaKind::NegImp);
    fe();
    alln();
    if (calc_ == Calculus::STT) fq();
    all();
    if (calc_ == Calculus::STT) single(FormulaKind::BoolEq);
    single(FormulaKind::BoolDiseq);
    single(FormulaKind::Imp);
    mat();
    dec();
    con();
    return std::move(out_);
  }

 private:
  bool full() const { return out_.size() >= limit_; }

  void emit(RuleInstance r) {
    if (!full() && !redundant(a_, r)) out_.push_back(std::move(r));
  }

  const Term& f(std::size_t i) const { return a_.formulas()[i]; }

  void close() {
    for (std::size_t i = 0; i < a_.size() && !full(); ++i) {
      const FormulaShape& sh = a_.shape(i);
      if (sh.kind == FormulaKind::NegAtom || sh.kind == FormulaKind::NegImp || sh.kind == FormulaKind::NegForall ||
          sh.kind == FormulaKind::DoubleNeg || sh.kind == FormulaKind::BoolDiseq ||
          sh.kind == FormulaKind::FunDiseq || sh.kind == FormulaKind::SortDiseq) {
        const Term& inner = f(i).arg();
        if (a_.contains(inner)) {
          out_.push_back(make(RuleId::Close, {inner, f(i)}, {}));
          continue;
        }
      }
      if (sh.rhs && sh.lhs && *sh.lhs == *sh.rhs &&
          (sh.kind == FormulaKind::BoolDiseq || sh.kind == FormulaKind::FunDiseq || sh.kind == FormulaKind::SortDiseq))
        out_.push_back(make(RuleId::Close, {f(i)}, {}));
    }
  }

  void single(FormulaKind k) {
    for (std::size_t i : a_.of_kind(k)) {
      if (full()) return;
      RuleId r = rule_for(k);
      emit(make(r, {f(i)}, local_alternatives(r, a_.shape(i))));
    }
  }

  void fe() {
    for (std::size_t i : a_.of_kind(FormulaKind::FunDiseq)) {
      if (full()) return;
      const FormulaShape& sh = a_.shape(i);
      if (fe_blocked(a_, *sh.lhs, *sh.rhs)) continue;
      Term x = Term::name(fresh_var(sh.type->arg(), taken_in(a_)));
      emit(make(RuleId::FE, {f(i)}, {{fe_conclusion(*sh.lhs, *sh.rhs, x)}}, x));
    }
  }

  void alln() {
    for (std::size_t i : a_.of_kind(FormulaKind::NegForall)) {
      if (full()) return;
      const FormulaShape& sh = a_.shape(i);
      if (alln_blocked(a_, *sh.lhs, *sh.type)) continue;
      Term x = Term::name(fresh_var(*sh.type, taken_in(a_)));
      emit(make(RuleId::AllN, {f(i)}, {{alln_conclusion(*sh.lhs, x)}}, x));
    }
  }

  void fq() {
    std::map<Type, std::vector<Term>> cache;
    for (std::size_t i : a_.of_kind(FormulaKind::FunEq)) {
      const FormulaShape& sh = a_.shape(i);
      Type sigma = sh.type->arg();
      auto it = cache.find(sigma);
      if (it == cache.end()) it = cache.emplace(sigma, instantiation_terms(a_, sigma, fuel_)).first;
      for (const Term& u : it->second) {
        if (full()) return;
        emit(make(RuleId::FQ, {f(i)}, {{mk_eq(apply_norm(*sh.lhs, u), apply_norm(*sh.rhs, u))}}, u));
      }
    }
  }

  void all() {
    for (std::size_t i : a_.of_kind(FormulaKind::Forall)) {
      const FormulaShape& sh = a_.shape(i);
      const Term& s = *sh.lhs;
      const Type& alpha = *sh.type;
      std::vector<Term> us;
      if (calc_ == Calculus::STT) {
        us = instantiation_terms(a_, alpha, fuel_);
      } else if (!a_.discriminating(alpha).empty()) {
        us = a_.discriminating(alpha);
      } else if (!some_instance_in(a_, s, alpha)) {
        auto fv = std::find_if(a_.free_vars().begin(), a_.free_vars().end(),
                               [&](const Name& n) { return n.type() == alpha; });
        if (fv != a_.free_vars().end())
          us.push_back(Term::name(*fv));
        else
          us.push_back(Term::name(fresh_var(alpha, taken_in(a_))));
      }
      for (const Term& u : us) {
        if (full()) return;
        emit(make(RuleId::All, {f(i)}, {{apply_norm(s, u)}}, u));
      }
    }
  }

  void mat() {
    for (std::size_t i : a_.of_kind(FormulaKind::PosAtom)) {
      const Name& x = spine_head(f(i)).head_name();
      for (std::size_t j : a_.neg_atoms(x)) {
        if (full()) return;
        const Term& neg_atom = *a_.shape(j).lhs;
        emit(make(RuleId::Mat, {f(i), f(j)}, mat_alternatives(f(i), neg_atom)));
      }
    }
  }

  void dec() {
    for (std::size_t i : a_.of_kind(FormulaKind::SortDiseq)) {
      if (full()) return;
      const FormulaShape& sh = a_.shape(i);
      if (!sh.decomposable) continue;
      emit(make(RuleId::Dec, {f(i)}, local_alternatives(RuleId::Dec, sh)));
    }
  }

  void con() {
    for (std::size_t i : a_.of_kind(FormulaKind::SortEq)) {
      const FormulaShape& eq = a_.shape(i);
      for (std::size_t j : a_.sort_disequations(*eq.type)) {
        if (full()) return;
        emit(make(RuleId::Con, {f(i), f(j)}, con_alternatives(eq, a_.shape(j))));
      }
    }
  }

  const Branch& a_;
  Calculus calc_;
  std::size_t fuel_;
  bool eager_;
  std::size_t limit_;
  std::vector<RuleInstance> out_;
};

}  // namespace

std::vector<RuleInstance> applicable_stt(const Branch& a, std::size_t fuel, bool eager_close, std::size_t limit) {
  return Collector(a, Calculus::STT, fuel, eager_close, limit).run();
}

std::vector<RuleInstance> applicable_efo(const Branch& a, bool eager_close, std::size_t limit) {
  for (const Term& s : a.formulas())
    if (!is_quasi_efo(s)) throw FragmentViolation("branch member is not quasi-EFO");
  return Collector(a, Calculus::EFO, 0, eager_close, limit).run();
}

std::optional<RuleInstance> closing_instance(const Branch& a, bool eager_close) {
  if (a.closed()) {
    for (std::size_t i : a.of_kind(FormulaKind::PosAtom)) {
      const Term& x = a.formulas()[i];
      if (x.is_var() && a.contains(mk_not(x))) return make(RuleId::Mat, {x, mk_not(x)}, {});
    }
    for (std::size_t i : a.of_kind(FormulaKind::SortDiseq)) {
      const FormulaShape& sh = a.shape(i);
      if (*sh.lhs == *sh.rhs && sh.lhs->is_var()) return make(RuleId::Dec, {a.formulas()[i]}, {});
    }
  }
  if (eager_close) {
    auto v = Collector(a, Calculus::STT, 0, true, 1).run();
    if (!v.empty() && v.front().rule == RuleId::Close) return v.front();
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

std::string show_alts(const std::vector<std::vector<Term>>& alts) { return std::to_string(alts.size()) + " alternative(s)"; }

std::string expect_alts(const RuleInstance& r, const std::vector<std::vector<Term>>& want) {
  if (r.alternatives == want) return {};
  return std::string(to_string(r.rule)) + ": conclusions do not match the premises (expected " + show_alts(want) +
         ", got " + show_alts(r.alternatives) + ")";
}

bool is_free_var_of(const Branch& a, const Term& t, const Type& ty) {
  return t.is_var() && t.type() == ty && a.has_free(t.head_name());
}

}  // namespace

std::string explain_instance(const Branch& a, const RuleInstance& r, const RuleOptions& opts) {
  const std::string rn = to_string(r.rule);
  for (const Term& p : r.premises)
    if (!a.contains(p)) return rn + ": premise is not on the branch";
  for (const auto& alt : r.alternatives)
    for (const Term& s : alt)
      if (!s.type().is_o() || !s.is_closed() || !is_normal(s)) return rn + ": conclusion is not a normal formula";

  bool closing = (r.rule == RuleId::Mat || r.rule == RuleId::Dec || r.rule == RuleId::Close) && r.alternatives.empty();
  if (a.closed() && !closing) return rn + ": branch is closed";
  if (opts.calculus == Calculus::EFO) {
    if (r.rule == RuleId::BQ || r.rule == RuleId::FQ) return rn + ": not a rule of the EFO calculus";
    for (const Term& p : r.premises)
      if (!is_quasi_efo(p)) return rn + ": premise is not quasi-EFO";
  }
  const bool needs_term = r.rule == RuleId::FQ || r.rule == RuleId::FE || r.rule == RuleId::All || r.rule == RuleId::AllN;
  if (needs_term != r.term.has_value()) return rn + (needs_term ? ": missing term" : ": unexpected term");

  auto one = [&]() -> std::optional<FormulaShape> {
    if (r.premises.size() != 1) return std::nullopt;
    return classify(r.premises[0]);
  };

  switch (r.rule) {
    case RuleId::DN:
    case RuleId::BQ:
    case RuleId::BE:
    case RuleId::Imp:
    case RuleId::ImpN: {
      auto sh = one();
      if (!sh || rule_for(sh->kind) != r.rule) return rn + ": premise has the wrong shape";
      return expect_alts(r, local_alternatives(r.rule, *sh));
    }
    case RuleId::FQ: {
      auto sh = one();
      if (!sh || sh->kind != FormulaKind::FunEq) return rn + ": premise is not a functional equation";
      const Term& u = *r.term;
      if (u.type() != sh->type->arg() || !u.is_closed() || !is_normal(u)) return rn + ": instance term is not a normal term of the argument type";
      return expect_alts(r, {{mk_eq(apply_norm(*sh->lhs, u), apply_norm(*sh->rhs, u))}});
    }
    case RuleId::FE: {
      auto sh = one();
      if (!sh || sh->kind != FormulaKind::FunDiseq) return rn + ": premise is not a functional disequation";
      const Term& x = *r.term;
      if (!x.is_var() || x.type() != sh->type->arg()) return rn + ": term is not a variable of the argument type";
      if (a.has_free(x.head_name())) return rn + ": variable " + x.head_name().id() + " is not fresh";
      if (fe_blocked(a, *sh->lhs, *sh->rhs)) return rn + ": disequation was already extended";
      return expect_alts(r, {{fe_conclusion(*sh->lhs, *sh->rhs, x)}});
    }
    case RuleId::AllN: {
      auto sh = one();
      if (!sh || sh->kind != FormulaKind::NegForall) return rn + ": premise is not a negated quantification";
      const Term& x = *r.term;
      if (!x.is_var() || x.type() != *sh->type) return rn + ": term is not a variable of the quantified sort";
      if (a.has_free(x.head_name())) return rn + ": variable " + x.head_name().id() + " is not fresh";
      if (alln_blocked(a, *sh->lhs, *sh->type)) return rn + ": quantification was already witnessed";
      return expect_alts(r, {{alln_conclusion(*sh->lhs, x)}});
    }
    case RuleId::All: {
      auto sh = one();
      if (!sh || sh->kind != FormulaKind::Forall) return rn + ": premise is not a quantification";
      const Term& u = *r.term;
      const Type& alpha = *sh->type;
      if (u.type() != alpha || !u.is_closed() || !is_normal(u)) return rn + ": instance term is not a normal term of the sort";
      if (opts.calculus == Calculus::EFO) {
        if (!is_efo(u)) return rn + ": instance term is not EFO";
        const auto& disc = a.discriminating(alpha);
        if (!disc.empty()) {
          if (!a.is_discriminating(u)) return rn + ": instance term is not discriminating";
        } else if (!some_instance_in(a, *sh->lhs, alpha)) {
          bool has_var = std::any_of(a.free_vars().begin(), a.free_vars().end(),
                                     [&](const Name& n) { return n.type() == alpha; });
          if (has_var && !is_free_var_of(a, u, alpha)) return rn + ": instance term must be a variable free in the branch";
          if (!has_var && !u.is_var()) return rn + ": instance term must be a variable";
        }
      }
      return expect_alts(r, {{apply_norm(*sh->lhs, u)}});
    }
    case RuleId::Mat: {
      if (r.premises.size() != 2) return rn + ": needs two premises";
      FormulaShape p = classify(r.premises[0]), n = classify(r.premises[1]);
      if (p.kind != FormulaKind::PosAtom || n.kind != FormulaKind::NegAtom) return rn + ": premises are not complementary atoms";
      if (spine_head(*p.lhs) != spine_head(*n.lhs)) return rn + ": atoms have different heads";
      return expect_alts(r, mat_alternatives(*p.lhs, *n.lhs));
    }
    case RuleId::Dec: {
      auto sh = one();
      if (!sh || sh->kind != FormulaKind::SortDiseq || !sh->decomposable) return rn + ": premise is not a decomposable disequation";
      return expect_alts(r, local_alternatives(RuleId::Dec, *sh));
    }
    case RuleId::Con: {
      if (r.premises.size() != 2) return rn + ": needs two premises";
      FormulaShape e = classify(r.premises[0]), d = classify(r.premises[1]);
      if (e.kind != FormulaKind::SortEq || d.kind != FormulaKind::SortDiseq || *e.type != *d.type)
        return rn + ": premises are not an equation and a disequation at one sort";
      return expect_alts(r, con_alternatives(e, d));
    }
    case RuleId::Close: {
      if (!opts.eager_close) return rn + ": eager closing is disabled";
      if (!r.alternatives.empty()) return rn + ": has alternatives";
      if (r.premises.size() == 2 && r.premises[1] == mk_not(r.premises[0])) return {};
      if (r.premises.size() == 1) {
        FormulaShape sh = classify(r.premises[0]);
        bool diseq = sh.kind == FormulaKind::BoolDiseq || sh.kind == FormulaKind::FunDiseq || sh.kind == FormulaKind::SortDiseq;
        if (diseq && *sh.lhs == *sh.rhs) return {};
      }
      return rn + ": premises are not contradictory";
    }
  }
  return rn + ": unknown rule";
}

bool check_instance(const Branch& a, const RuleInstance& r, const RuleOptions& opts) {
  return explain_instance(a, r, opts).empty();
}

}  // namespace hotab
