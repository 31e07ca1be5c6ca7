#include "hotab/normalize.hpp"

namespace hotab {

void Substitution::bind(const Name& x, const Term& t) {
  if (x.type() != t.type())
    throw TypeError("substitution for " + x.id() + " : " + x.type().str() + " has type " + t.type().str());
  if (!t.is_closed()) throw TypeError("substitution range must not contain loose bound indices");
  map_.insert_or_assign(x, t);
}

Substitution Substitution::with(const Name& x, const Term& t) const {
  Substitution s = *this;
  s.bind(x, t);
  return s;
}

const Term* Substitution::find(const Name& x) const {
  auto it = map_.find(x);
  return it == map_.end() ? nullptr : &it->second;
}

Term substitute(const Substitution& theta, const Term& s) {
  if (theta.empty()) return s;
  switch (s.kind()) {
    case TermKind::Name:
      if (const Term* t = theta.find(s.head_name())) return *t;
      return s;
    case TermKind::Bound:
      return s;
    case TermKind::App: {
      Term f = substitute(theta, s.fun());
      Term a = substitute(theta, s.arg());
      if (f.id() == s.fun().id() && a.id() == s.arg().id()) return s;
      return Term::app(f, a);
    }
    case TermKind::Lam: {
      Term b = substitute(theta, s.body());
      if (b.id() == s.body().id()) return s;
      return Term::lam_raw(s.binder_type(), b);
    }
  }
  return s;
}

namespace {

// Adds `by` to every index >= `cutoff`.
Term shift(const Term& t, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0 || t.loose_bound() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      return Term::bound(t.index() + by, t.type());
    case TermKind::App:
      return Term::app(shift(t.fun(), by, cutoff), shift(t.arg(), by, cutoff));
    case TermKind::Lam:
      return Term::lam_raw(t.binder_type(), shift(t.body(), by, cutoff + 1));
    default:
      return t;
  }
}

// Replaces index `depth` by `arg` lifted by `depth`, and lowers indices above.
Term subst_at(const Term& t, const Term& arg, std::uint32_t depth) {
  if (t.loose_bound() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      if (t.index() == depth) return shift(arg, depth, 0);
      return Term::bound(t.index() - 1, t.type());
    case TermKind::App:
      return Term::app(subst_at(t.fun(), arg, depth), subst_at(t.arg(), arg, depth));
    case TermKind::Lam:
      return Term::lam_raw(t.binder_type(), subst_at(t.body(), arg, depth + 1));
    default:
      return t;
  }
}

}  // namespace

Term instantiate(const Term& body, const Term& arg) { return subst_at(body, arg, 0); }

Term normalize(const Term& s) {
  switch (s.kind()) {
    case TermKind::Name:
    case TermKind::Bound:
      return s;
    case TermKind::Lam: {
      Term b = normalize(s.body());
      if (b.id() == s.body().id()) return s;
      return Term::lam_raw(s.binder_type(), b);
    }
    case TermKind::App:
      break;
  }
  // Contract the head redex until the head is no abstraction applied to an
  // argument, then normalize the arguments left to right.
  Term cur = s;
  while (true) {
    Spine sp = spine(cur);
    if (sp.head.is_lam() && !sp.args.empty()) {
      Term reduced = instantiate(sp.head.body(), sp.args[0]);
      cur = Term::app(reduced, std::span<const Term>(sp.args).subspan(1));
      continue;
    }
    Term head = sp.head.is_lam() ? normalize(sp.head) : sp.head;
    bool changed = head.id() != sp.head.id();
    for (Term& a : sp.args) {
      Term n = normalize(a);
      if (n.id() != a.id()) {
        changed = true;
        a = std::move(n);
      }
    }
    if (!changed) return cur;
    return Term::app(head, sp.args);
  }
}

bool is_normal(const Term& s) {
  switch (s.kind()) {
    case TermKind::Name:
    case TermKind::Bound:
      return true;
    case TermKind::Lam:
      return is_normal(s.body());
    case TermKind::App:
      if (s.fun().is_lam()) return false;
      return is_normal(s.fun()) && is_normal(s.arg());
  }
  return true;
}

Term apply_norm(const Term& s, const Term& t) {
  if (s.is_lam()) return normalize(instantiate(s.body(), t));
  return normalize(Term::app(s, t));
}

}  // namespace hotab
