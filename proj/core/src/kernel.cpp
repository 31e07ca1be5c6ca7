#include "hotab/kernel.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace hotab {

namespace {

inline std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// Type

struct Type::Node {
  bool base;
  std::string id;
  Type arg_, result_;
  std::size_t hash;
  bool has_o;
};

Type Type::o() {
  static const Type t = base("o");
  return t;
}

Type Type::base(std::string_view id) {
  if (id.empty()) throw TypeError("empty base type identifier");
  auto n = std::make_shared<Node>(Node{true, std::string(id), Type(nullptr), Type(nullptr), 0, id == "o"});
  n->hash = mix(0x51, std::hash<std::string_view>{}(id));
  return Type(std::move(n));
}

Type Type::fun(Type arg, Type result) {
  std::size_t h = mix(mix(0xa7, arg.hash()), result.hash());
  bool has_o = arg.contains_o() || result.contains_o();
  return Type(std::make_shared<Node>(Node{false, {}, std::move(arg), std::move(result), h, has_o}));
}

Type Type::fun(std::span<const Type> args, Type result) {
  Type t = std::move(result);
  for (auto it = args.rbegin(); it != args.rend(); ++it) t = fun(*it, std::move(t));
  return t;
}

bool Type::is_base() const { return node_->base; }
bool Type::is_o() const { return node_->base && node_->id == "o"; }
const std::string& Type::id() const {
  assert(is_base());
  return node_->id;
}
const Type& Type::arg() const {
  assert(is_fun());
  return node_->arg_;
}
const Type& Type::result() const {
  assert(is_fun());
  return node_->result_;
}

std::vector<Type> Type::arg_types() const {
  std::vector<Type> out;
  const Type* t = this;
  while (t->is_fun()) {
    out.push_back(t->arg());
    t = &t->result();
  }
  return out;
}

Type Type::target() const {
  const Type* t = this;
  while (t->is_fun()) t = &t->result();
  return *t;
}

std::size_t Type::arity() const {
  std::size_t n = 0;
  for (const Type* t = this; t->is_fun(); t = &t->result()) ++n;
  return n;
}

bool Type::contains_o() const { return node_->has_o; }
std::size_t Type::hash() const { return node_->hash; }

std::string Type::str() const {
  if (is_base()) return id();
  std::string s = "(>";
  const Type* t = this;
  while (t->is_fun()) {
    s += ' ';
    s += t->arg().str();
    t = &t->result();
  }
  s += ' ';
  s += t->str();
  s += ')';
  return s;
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->base != b.node_->base) return false;
  if (a.node_->base) return a.node_->id == b.node_->id;
  return a.node_->arg_ == b.node_->arg_ && a.node_->result_ == b.node_->result_;
}

int Type::compare(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return 0;
  if (a.is_base() != b.is_base()) return a.is_base() ? -1 : 1;
  if (a.is_base()) return a.id().compare(b.id()) < 0 ? -1 : (a.id() == b.id() ? 0 : 1);
  if (int c = compare(a.arg(), b.arg())) return c;
  return compare(a.result(), b.result());
}

// ---------------------------------------------------------------------------
// Name

struct Name::Data {
  std::string id;
  Type type;
  NameKind kind;
  ConstOp op;
  std::size_t hash;
};

Name Name::var(std::string_view id, Type type) {
  if (id.empty()) throw TypeError("empty variable identifier");
  std::size_t h = mix(mix(std::hash<std::string_view>{}(id), type.hash()), 1);
  return Name(std::make_shared<Data>(Data{std::string(id), std::move(type), NameKind::Variable, ConstOp::None, h}));
}

Name Name::neg() {
  static const Name n = [] {
    Type o = Type::o();
    Type t = Type::fun(o, o);
    std::size_t h = mix(mix(std::hash<std::string_view>{}("not"), t.hash()), 2);
    return Name(std::make_shared<Data>(Data{"not", t, NameKind::Constant, ConstOp::Not, h}));
  }();
  return n;
}

Name Name::imp() {
  static const Name n = [] {
    Type o = Type::o();
    Type t = Type::fun({o, o}, o);
    std::size_t h = mix(mix(std::hash<std::string_view>{}("imp"), t.hash()), 2);
    return Name(std::make_shared<Data>(Data{"imp", t, NameKind::Constant, ConstOp::Imp, h}));
  }();
  return n;
}

Name Name::eq(const Type& sigma) {
  Type t = Type::fun({sigma, sigma}, Type::o());
  std::size_t h = mix(mix(std::hash<std::string_view>{}("="), t.hash()), 2);
  return Name(std::make_shared<Data>(Data{"=", t, NameKind::Constant, ConstOp::Eq, h}));
}

Name Name::forall(const Type& alpha) {
  if (!alpha.is_sort()) throw TypeError("forall is only available at sorts, not at " + alpha.str());
  Type t = Type::fun(Type::fun(alpha, Type::o()), Type::o());
  std::size_t h = mix(mix(std::hash<std::string_view>{}("forall"), t.hash()), 2);
  return Name(std::make_shared<Data>(Data{"forall", t, NameKind::Constant, ConstOp::Forall, h}));
}

const std::string& Name::id() const { return data_->id; }
const Type& Name::type() const { return data_->type; }
NameKind Name::kind() const { return data_->kind; }
ConstOp Name::op() const { return data_->op; }
std::size_t Name::hash() const { return data_->hash; }

Type Name::param() const {
  switch (op()) {
    case ConstOp::Eq:
      return type().arg();
    case ConstOp::Forall:
      return type().arg().arg();
    default:
      throw TypeError("name " + id() + " has no type parameter");
  }
}

bool operator==(const Name& a, const Name& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->hash == b.data_->hash && a.data_->kind == b.data_->kind && a.data_->op == b.data_->op &&
         a.data_->id == b.data_->id && a.data_->type == b.data_->type;
}

int Name::compare(const Name& a, const Name& b) {
  if (a.data_ == b.data_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.id().compare(b.id())) return c < 0 ? -1 : 1;
  return Type::compare(a.type(), b.type());
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  TermKind kind;
  Type type;
  std::optional<Name> name;
  std::uint32_t index = 0;
  std::optional<Term> fun, arg;  // App: fun/arg, Lam: arg unused, fun = body
  std::size_t hash = 0;
  std::size_t size = 1;
  std::uint32_t loose = 0;
  bool has_lam = false;
};

Term Term::name(const Name& n) {
  auto node = std::make_shared<Node>(Node{TermKind::Name, n.type(), n, 0, std::nullopt, std::nullopt});
  node->hash = mix(0x11, n.hash());
  return Term(std::move(node));
}

Term Term::bound(std::uint32_t index, const Type& type) {
  auto node = std::make_shared<Node>(Node{TermKind::Bound, type, std::nullopt, index, std::nullopt, std::nullopt});
  node->hash = mix(mix(0x22, index), type.hash());
  node->loose = index + 1;
  return Term(std::move(node));
}

Term Term::app(const Term& f, const Term& x) {
  const Type& ft = f.type();
  if (!ft.is_fun()) throw TypeError("cannot apply a term of non-function type " + ft.str());
  if (ft.arg() != x.type())
    throw TypeError("argument type mismatch: expected " + ft.arg().str() + ", got " + x.type().str());
  auto node = std::make_shared<Node>(Node{TermKind::App, ft.result(), std::nullopt, 0, f, x});
  node->hash = mix(mix(0x33, f.hash()), x.hash());
  node->size = 1 + f.size() + x.size();
  node->loose = std::max(f.loose_bound(), x.loose_bound());
  node->has_lam = f.has_lambda() || x.has_lambda();
  return Term(std::move(node));
}

Term Term::app(const Term& f, std::span<const Term> args) {
  Term t = f;
  for (const Term& a : args) t = app(t, a);
  return t;
}

Term Term::lam_raw(const Type& binder, const Term& body) {
  auto node =
      std::make_shared<Node>(Node{TermKind::Lam, Type::fun(binder, body.type()), std::nullopt, 0, body, std::nullopt});
  node->hash = mix(mix(0x44, binder.hash()), body.hash());
  node->size = 1 + body.size();
  node->loose = body.loose_bound() > 0 ? body.loose_bound() - 1 : 0;
  node->has_lam = true;
  return Term(std::move(node));
}

namespace {

Term abstract_at(const Term& t, const Name& x, std::uint32_t depth) {
  switch (t.kind()) {
    case TermKind::Name:
      return t.head_name() == x ? Term::bound(depth, x.type()) : t;
    case TermKind::Bound:
      return t;
    case TermKind::App: {
      Term f = abstract_at(t.fun(), x, depth);
      Term a = abstract_at(t.arg(), x, depth);
      if (f.id() == t.fun().id() && a.id() == t.arg().id()) return t;
      return Term::app(f, a);
    }
    case TermKind::Lam: {
      Term b = abstract_at(t.body(), x, depth + 1);
      if (b.id() == t.body().id()) return t;
      return Term::lam_raw(t.binder_type(), b);
    }
  }
  return t;
}

}  // namespace

Term Term::lam(const Name& x, const Term& body) {
  if (!x.is_var()) throw TypeError("only variables can be bound");
  if (!occurs_free(x, body)) return lam_raw(x.type(), body);
  return lam_raw(x.type(), abstract_at(body, x, 0));
}

TermKind Term::kind() const { return node_->kind; }
const Type& Term::type() const { return node_->type; }
const Name& Term::head_name() const {
  assert(kind() == TermKind::Name);
  return *node_->name;
}
std::uint32_t Term::index() const { return node_->index; }
const Term& Term::fun() const {
  assert(kind() == TermKind::App);
  return *node_->fun;
}
const Term& Term::arg() const {
  assert(kind() == TermKind::App);
  return *node_->arg;
}
const Type& Term::binder_type() const {
  assert(kind() == TermKind::Lam);
  return node_->type.arg();
}
const Term& Term::body() const {
  assert(kind() == TermKind::Lam);
  return *node_->fun;
}
std::size_t Term::size() const { return node_->size; }
std::uint32_t Term::loose_bound() const { return node_->loose; }
bool Term::has_lambda() const { return node_->has_lam; }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  const Term* x = &a;
  const Term* y = &b;
  // Iterate down application spines to keep recursion shallow on long spines.
  while (true) {
    if (x->node_ == y->node_) return true;
    if (x->node_->hash != y->node_->hash || x->node_->kind != y->node_->kind || x->node_->size != y->node_->size)
      return false;
    switch (x->kind()) {
      case TermKind::Name:
        return x->head_name() == y->head_name();
      case TermKind::Bound:
        return x->index() == y->index() && x->type() == y->type();
      case TermKind::Lam:
        if (x->binder_type() != y->binder_type()) return false;
        x = &x->body();
        y = &y->body();
        continue;
      case TermKind::App:
        if (!(x->arg() == y->arg())) return false;
        x = &x->fun();
        y = &y->fun();
        continue;
    }
  }
}

int Term::compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case TermKind::Name:
      return Name::compare(a.head_name(), b.head_name());
    case TermKind::Bound:
      if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
      return Type::compare(a.type(), b.type());
    case TermKind::Lam:
      if (int c = Type::compare(a.binder_type(), b.binder_type())) return c;
      return compare(a.body(), b.body());
    case TermKind::App:
      if (int c = compare(a.fun(), b.fun())) return c;
      return compare(a.arg(), b.arg());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Connectives

Term mk_not(const Term& s) { return Term::app(Term::name(Name::neg()), s); }

Term mk_imp(const Term& s, const Term& t) { return Term::app(Term::name(Name::imp()), {s, t}); }

Term mk_eq(const Term& s, const Term& t) {
  if (s.type() != t.type()) throw TypeError("equation between terms of types " + s.type().str() + " and " + t.type().str());
  return Term::app(Term::name(Name::eq(s.type())), {s, t});
}

Term mk_neq(const Term& s, const Term& t) { return mk_not(mk_eq(s, t)); }

Term mk_forall(const Term& s) {
  const Type& t = s.type();
  if (!t.is_fun() || !t.result().is_o() || !t.arg().is_sort())
    throw TypeError("forall expects a predicate over a sort, got " + t.str());
  return Term::app(Term::name(Name::forall(t.arg())), s);
}

Term mk_forall(const Name& x, const Term& body) { return mk_forall(Term::lam(x, body)); }

// ---------------------------------------------------------------------------
// Utilities

void collect_free_vars(const Term& t, std::vector<Name>& out, NameHashSet& seen) {
  switch (t.kind()) {
    case TermKind::Name:
      if (t.head_name().is_var() && seen.insert(t.head_name()).second) out.push_back(t.head_name());
      return;
    case TermKind::Bound:
      return;
    case TermKind::App:
      collect_free_vars(t.fun(), out, seen);
      collect_free_vars(t.arg(), out, seen);
      return;
    case TermKind::Lam:
      collect_free_vars(t.body(), out, seen);
      return;
  }
}

NameSet free_vars(const Term& t) {
  std::vector<Name> v;
  NameHashSet seen;
  collect_free_vars(t, v, seen);
  return NameSet(v.begin(), v.end());
}

bool occurs_free(const Name& x, const Term& t) {
  switch (t.kind()) {
    case TermKind::Name:
      return t.head_name() == x;
    case TermKind::Bound:
      return false;
    case TermKind::App:
      return occurs_free(x, t.fun()) || occurs_free(x, t.arg());
    case TermKind::Lam:
      return occurs_free(x, t.body());
  }
  return false;
}

namespace {

const char* scheme_prefix(const Type& sigma) {
  if (sigma.is_o()) return "b";
  if (sigma.is_sort()) return "x";
  return sigma.target().is_o() ? "p" : "f";
}

}  // namespace

Name fresh_var(const Type& sigma, const std::function<bool(std::string_view)>& taken) {
  const std::string prefix = scheme_prefix(sigma);
  for (std::size_t i = 1;; ++i) {
    std::string id = prefix + std::to_string(i);
    if (!taken(id)) return Name::var(id, sigma);
  }
}

Name fresh_var(const Type& sigma, const NameSet& avoid) {
  std::unordered_set<std::string> ids;
  for (const Name& n : avoid) ids.insert(n.id());
  return fresh_var(sigma, [&](std::string_view id) { return ids.count(std::string(id)) > 0; });
}

Spine spine(const Term& t) {
  std::vector<Term> args;
  const Term* h = &t;
  while (h->is_app()) {
    args.push_back(h->arg());
    h = &h->fun();
  }
  std::reverse(args.begin(), args.end());
  return Spine{*h, std::move(args)};
}

const Term& spine_head(const Term& t) {
  const Term* h = &t;
  while (h->is_app()) h = &h->fun();
  return *h;
}

namespace {

void visit(const Term& t, std::uint32_t depth, const std::function<void(const Term&, std::uint32_t)>& f) {
  f(t, depth);
  switch (t.kind()) {
    case TermKind::App:
      visit(t.fun(), depth, f);
      visit(t.arg(), depth, f);
      break;
    case TermKind::Lam:
      visit(t.body(), depth + 1, f);
      break;
    default:
      break;
  }
}

}  // namespace

void for_each_subterm(const Term& t, const std::function<void(const Term&, std::uint32_t depth)>& f) {
  visit(t, 0, f);
}

}  // namespace hotab
