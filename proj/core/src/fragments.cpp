#include "hotab/fragments.hpp"

#include "hotab/search.hpp"

namespace hotab {

bool is_efo_constant(const Name& c) {
  switch (c.op()) {
    case ConstOp::Not:
    case ConstOp::Imp:
    case ConstOp::Forall:
      return true;
    case ConstOp::Eq:
      return c.param().is_sort();
    case ConstOp::None:
      return false;
  }
  return false;
}

std::optional<Term> efo_witness(const Term& t) {
  std::optional<Term> w;
  for_each_subterm(t, [&](const Term& s, std::uint32_t) {
    if (!w && s.is_name() && s.head_name().is_const() && !is_efo_constant(s.head_name())) w = s;
  });
  return w;
}

bool is_efo(const Term& t) { return !efo_witness(t); }

namespace {

// Sides of `not (s = t)`, if `t` has that form.
std::optional<std::pair<Term, Term>> diseq_sides(const Term& t) {
  if (!t.is_app() || !t.fun().is_const(ConstOp::Not)) return std::nullopt;
  Spine sp = spine(t.arg());
  if (!sp.head.is_const(ConstOp::Eq) || sp.args.size() != 2) return std::nullopt;
  return std::make_pair(sp.args[0], sp.args[1]);
}

std::optional<Term> impure_witness(const Term& t) {
  std::optional<Term> w;
  for_each_subterm(t, [&](const Term& s, std::uint32_t) {
    if (w) return;
    if (s.is_name() && !is_pure_type(s.head_name().type())) w = s;
    if (s.is_lam() && !is_pure_type(s.binder_type())) w = s;
  });
  return w;
}

std::optional<Term> first_lambda(const Term& t) {
  std::optional<Term> w;
  for_each_subterm(t, [&](const Term& s, std::uint32_t) {
    if (!w && s.is_lam()) w = s;
  });
  return w;
}

// First forall below a negation or implication.
std::optional<Term> guarded_forall(const Term& t, bool below) {
  switch (t.kind()) {
    case TermKind::Name:
      if (below && t.is_const(ConstOp::Forall)) return t;
      return std::nullopt;
    case TermKind::Bound:
      return std::nullopt;
    case TermKind::Lam:
      return guarded_forall(t.body(), below);
    case TermKind::App:
      break;
  }
  Spine sp = spine(t);
  if (below && sp.head.is_const(ConstOp::Forall)) return t;
  bool guard = below || sp.head.is_const(ConstOp::Not) || sp.head.is_const(ConstOp::Imp);
  if (auto w = guarded_forall(sp.head, below)) return w;
  for (const Term& a : sp.args)
    if (auto w = guarded_forall(a, guard)) return w;
  return std::nullopt;
}

std::optional<Term> bsr_type_witness(const Term& t) {
  std::optional<Term> w;
  for_each_subterm(t, [&](const Term& s, std::uint32_t) {
    if (w) return;
    if (s.is_var() && !is_bsr_type(s.type())) w = s;
    if (s.is_lam() && !is_bsr_type(s.binder_type())) w = s;
  });
  return w;
}

}  // namespace

bool is_quasi_efo(const Term& t) {
  if (is_efo(t)) return true;
  auto d = diseq_sides(t);
  return d && is_efo(d->first) && is_efo(d->second);
}

bool is_lambda_free(const Term& t) { return !t.has_lambda(); }

bool is_pure_type(const Type& t) { return !t.contains_o(); }

bool is_pure_term(const Term& t) { return !impure_witness(t); }

bool is_pure_diseq(const Term& t) {
  auto d = diseq_sides(t);
  return d && is_pure_term(d->first) && is_pure_term(d->second);
}

bool is_bsr_type(const Type& t) {
  if (t.is_base()) return true;
  if (!t.target().is_o()) return false;
  for (const Type& a : t.arg_types())
    if (!a.is_sort()) return false;
  return true;
}

bool is_bsr(const Term& t) { return is_efo(t) && !bsr_type_witness(t) && !guarded_forall(t, false); }

FragmentReport classify_branch(const Branch& a) {
  FragmentReport r;
  auto note = [](FlagReport& flag, std::size_t i, std::optional<Term> w, std::string why) {
    if (!flag.holds) return;
    flag.holds = false;
    flag.formula = i;
    flag.witness = std::move(w);
    flag.reason = std::move(why);
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Term& s = a.formulas()[i];
    FormulaFlags ff;
    auto efo_w = efo_witness(s);
    ff.efo = !efo_w;
    ff.quasi_efo = is_quasi_efo(s);
    auto lam_w = first_lambda(s);
    ff.lambda_free = ff.quasi_efo && !lam_w;
    ff.pure = is_pure_diseq(s);
    auto bsr_ty = bsr_type_witness(s);
    auto bsr_q = guarded_forall(s, false);
    ff.bsr = ff.efo && !bsr_ty && !bsr_q;
    r.per_formula.push_back(ff);

    if (!ff.efo) note(r.efo, i, efo_w, "constant outside EFO");
    if (!ff.quasi_efo) note(r.quasi_efo, i, efo_w, "constant outside EFO");
    if (!ff.quasi_efo)
      note(r.lambda_free, i, efo_w, "not quasi-EFO");
    else if (lam_w)
      note(r.lambda_free, i, lam_w, "abstraction");
    if (!ff.pure) {
      if (!diseq_sides(s))
        note(r.pure, i, s, "not a disequation");
      else
        note(r.pure, i, impure_witness(s), "name or binder whose type contains o");
    }
    if (!ff.efo)
      note(r.bsr, i, efo_w, "constant outside EFO");
    else if (bsr_ty)
      note(r.bsr, i, bsr_ty, "variable of non-BSR type");
    else if (bsr_q)
      note(r.bsr, i, bsr_q, "forall below a negation or implication");
  }
  return r;
}

Verdict decide(const Branch& a, const DecideOptions& opts) {
  FragmentReport rep = classify_branch(a);
  if (!rep.decidable()) throw FragmentViolation("branch is not in the lambda-free, pure or BSR fragment");

  SearchConfig cfg;
  cfg.calculus = Calculus::EFO;
  cfg.max_nodes.reset();
  cfg.timeout.reset();
  cfg.max_domain = opts.max_domain;
  if (opts.check_bsr_gate && rep.bsr.holds) {
    cfg.on_instance = [](const Branch&, const RuleInstance& r) {
      if (r.rule != RuleId::All) return;
      for (const Term& s : r.alternatives.front())
        if (!is_bsr(s)) throw std::logic_error("quantifier instance left the BSR fragment");
    };
  }
  return refute(a, cfg);
}

}  // namespace hotab
