#include "hotab/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "hotab/normalize.hpp"

namespace hotab {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}

namespace {

const std::set<std::string, std::less<>> kKeywords = {"not", "imp", "=", "neq", "forall", "lam", ">", "o", "const"};

// ---------------------------------------------------------------------------
// Reader

struct SExpr {
  bool atom = false;
  std::string text;
  std::vector<SExpr> items;
  std::size_t line = 1, col = 1;

  [[noreturn]] void error(const std::string& msg) const { throw ParseError(line, col, msg); }
  bool is(std::string_view s) const { return atom && text == s; }
  bool head(std::string_view s) const { return !atom && !items.empty() && items[0].is(s); }
  const std::string& sym(const char* what) const {
    if (!atom) error(std::string("expected ") + what);
    return text;
  }
};

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    while (true) {
      skip();
      if (pos_ >= s_.size()) return out;
      out.push_back(read());
    }
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  SExpr read() {
    skip();
    SExpr e;
    e.line = line_;
    e.col = col_;
    if (pos_ >= s_.size()) throw ParseError(line_, col_, "unexpected end of input");
    char c = s_[pos_];
    if (c == ')') throw ParseError(line_, col_, "unexpected ')'");
    if (c == '(') {
      advance();
      while (true) {
        skip();
        if (pos_ >= s_.size()) throw ParseError(e.line, e.col, "unbalanced '('");
        if (s_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    e.atom = true;
    while (pos_ < s_.size()) {
      char d = s_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.text.push_back(d);
      advance();
    }
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

// ---------------------------------------------------------------------------
// Scoped elaboration

struct Scope {
  std::map<std::string, Type, std::less<>> sorts;
  std::map<std::string, Name, std::less<>> vars;
  std::vector<std::pair<std::string, Name>> locals;
  bool efo_mode = false;
};

void check_identifier(const SExpr& e, const char* what) {
  const std::string& id = e.sym(what);
  if (kKeywords.count(id)) e.error("'" + id + "' is reserved and cannot name a " + what);
}

Type elab_type(const Scope& sc, const SExpr& e) {
  if (e.atom) {
    if (e.text == "o") return Type::o();
    auto it = sc.sorts.find(e.text);
    if (it == sc.sorts.end()) e.error("undeclared sort '" + e.text + "'");
    return it->second;
  }
  if (!e.head(">") || e.items.size() < 3) e.error("expected a type: o, a sort, or (> T1 ... Tn) with n >= 2");
  Type t = elab_type(sc, e.items.back());
  for (std::size_t i = e.items.size() - 1; i-- > 1;) t = Type::fun(elab_type(sc, e.items[i]), t);
  return t;
}

void expect_type(const SExpr& e, const Type& want, const Type& got) {
  if (want != got) e.error("type error: expected " + print_type(want) + ", got " + print_type(got));
}

Term elab_term(Scope& sc, const SExpr& e);

Term apply_checked(const SExpr& e, Term f, const Term& x, const SExpr& arg_expr) {
  if (!f.type().is_fun()) e.error("type error: " + print_type(f.type()) + " is not a function type");
  expect_type(arg_expr, f.type().arg(), x.type());
  return Term::app(f, x);
}

Term with_binder(Scope& sc, const SExpr& binder, const std::function<Term(const Name&)>& body) {
  if (binder.atom || binder.items.size() != 2) binder.error("expected a binder (x T)");
  check_identifier(binder.items[0], "variable");
  Name x = Name::var(binder.items[0].text, elab_type(sc, binder.items[1]));
  sc.locals.emplace_back(x.id(), x);
  Term t = body(x);
  sc.locals.pop_back();
  return t;
}

Term elab_const(const Scope& sc, const SExpr& e) {
  if (e.items.size() < 2) e.error("expected (const not|imp|(= T)|(forall a))");
  const SExpr& c = e.items[1];
  if (c.is("not") && e.items.size() == 2) return Term::name(Name::neg());
  if (c.is("imp") && e.items.size() == 2) return Term::name(Name::imp());
  // (const (= T)), also accepted flat as (const = T)
  const bool flat = e.items.size() == 3;
  const SExpr* op = flat ? &c : c.atom || c.items.size() != 2 ? nullptr : &c.items[0];
  const SExpr* ty = flat ? &e.items[2] : op ? &c.items[1] : nullptr;
  if (op && e.items.size() == (flat ? 3u : 2u) && op->is("=")) return Term::name(Name::eq(elab_type(sc, *ty)));
  if (op && e.items.size() == (flat ? 3u : 2u) && op->is("forall")) {
    Type a = elab_type(sc, *ty);
    if (!a.is_sort()) ty->error("forall ranges over sorts only");
    return Term::name(Name::forall(a));
  }
  e.error("expected (const not|imp|(= T)|(forall a))");
}

Term elab_term(Scope& sc, const SExpr& e) {
  if (e.atom) {
    if (kKeywords.count(e.text)) e.error("unexpected keyword '" + e.text + "'");
    for (auto it = sc.locals.rbegin(); it != sc.locals.rend(); ++it)
      if (it->first == e.text) return Term::name(it->second);
    auto v = sc.vars.find(e.text);
    if (v == sc.vars.end()) e.error("undeclared name '" + e.text + "'");
    return Term::name(v->second);
  }
  if (e.items.empty()) e.error("empty application");
  const SExpr& h = e.items[0];
  auto arity = [&](std::size_t n) {
    if (e.items.size() != n + 1) e.error("'" + h.text + "' takes " + std::to_string(n) + " argument(s)");
  };
  auto formula = [&](const SExpr& s) {
    Term t = elab_term(sc, s);
    expect_type(s, Type::o(), t.type());
    return t;
  };
  if (h.is("not")) {
    arity(1);
    return mk_not(formula(e.items[1]));
  }
  if (h.is("imp")) {
    arity(2);
    Term a = formula(e.items[1]);
    return mk_imp(a, formula(e.items[2]));
  }
  if (h.is("=") || h.is("neq")) {
    arity(2);
    Term a = elab_term(sc, e.items[1]);
    Term b = elab_term(sc, e.items[2]);
    expect_type(e.items[2], a.type(), b.type());
    if (sc.efo_mode && !a.type().is_sort() && h.is("=")) e.error("equations are restricted to sorts in EFO mode");
    return h.is("=") ? mk_eq(a, b) : mk_neq(a, b);
  }
  if (h.is("lam")) {
    arity(2);
    return with_binder(sc, e.items[1], [&](const Name& x) { return Term::lam(x, elab_term(sc, e.items[2])); });
  }
  if (h.is("forall")) {
    arity(2);
    const SExpr& b = e.items[1];
    if (b.atom) {
      Type a = elab_type(sc, b);
      if (!a.is_sort()) b.error("forall ranges over sorts only");
      Term s = elab_term(sc, e.items[2]);
      expect_type(e.items[2], Type::fun(a, Type::o()), s.type());
      return mk_forall(s);
    }
    return with_binder(sc, b, [&](const Name& x) {
      Term body = formula(e.items[2]);
      if (x.type().is_sort()) return mk_forall(x, body);
      if (sc.efo_mode) b.error("forall ranges over sorts only in EFO mode");
      // forall x. s  as  (lam x. s) = (lam x. x = x)
      Term tx = Term::name(x);
      return mk_eq(Term::lam(x, body), Term::lam(x, mk_eq(tx, tx)));
    });
  }
  if (h.is("const")) return elab_const(sc, e);
  if (h.atom && kKeywords.count(h.text)) h.error("unexpected keyword '" + h.text + "'");
  if (e.items.size() < 2) e.error("application needs an argument");
  Term f = elab_term(sc, h);
  for (std::size_t i = 1; i < e.items.size(); ++i) f = apply_checked(e, f, elab_term(sc, e.items[i]), e.items[i]);
  return f;
}

// Declarations shared by problem and proof files.  Returns false for an
// unknown directive.
bool elab_directive(Scope& sc, Problem& p, const SExpr& d) {
  if (d.head("sort")) {
    if (d.items.size() != 2) d.error("expected (sort a)");
    check_identifier(d.items[1], "sort");
    const std::string& id = d.items[1].text;
    if (sc.sorts.count(id)) d.error("duplicate declaration of sort '" + id + "'");
    Type a = Type::base(id);
    sc.sorts.emplace(id, a);
    p.sorts.push_back(a);
    return true;
  }
  if (d.head("var")) {
    if (d.items.size() != 3) d.error("expected (var x T)");
    check_identifier(d.items[1], "variable");
    const std::string& id = d.items[1].text;
    if (sc.vars.count(id)) d.error("duplicate declaration of variable '" + id + "'");
    Name x = Name::var(id, elab_type(sc, d.items[2]));
    sc.vars.emplace(id, x);
    p.vars.push_back(x);
    return true;
  }
  if (d.head("assume")) {
    if (d.items.size() != 2) d.error("expected (assume t)");
    Term t = elab_term(sc, d.items[1]);
    expect_type(d.items[1], Type::o(), t.type());
    Term n = normalize(t);
    if (n != t) p.normalized.push_back(p.assumptions.size());
    p.assumptions.push_back(n);
    return true;
  }
  if (d.head("mode")) {
    if (d.items.size() != 2) d.error("expected (mode stt|efo|auto)");
    const std::string& m = d.items[1].sym("mode");
    if (m != "stt" && m != "efo" && m != "auto") d.items[1].error("mode must be stt, efo or auto");
    if (p.mode) d.error("duplicate mode directive");
    p.mode = m;
    sc.efo_mode = m == "efo";
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing

class Printer {
 public:
  explicit Printer(const Term& t) {
    for (const Name& n : free_vars(t)) avoid_.insert(n.id());
  }

  std::string term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Name:
        return name(t.head_name());
      case TermKind::Bound:
        return binders_[binders_.size() - 1 - t.index()];
      case TermKind::Lam: {
        std::string x = binder();
        std::string head = "(lam (" + x + " " + print_type(t.binder_type()) + ") ";
        binders_.push_back(x);
        std::string body = term(t.body());
        binders_.pop_back();
        return head + body + ")";
      }
      case TermKind::App:
        break;
    }
    Spine sp = spine(t);
    const Term& h = sp.head;
    const std::size_t n = sp.args.size();
    if (h.is_const(ConstOp::Not) && n == 1) {
      Spine in = spine(sp.args[0]);
      if (in.head.is_const(ConstOp::Eq) && in.args.size() == 2) return "(neq " + term(in.args[0]) + " " + term(in.args[1]) + ")";
      return "(not " + term(sp.args[0]) + ")";
    }
    if (h.is_const(ConstOp::Imp) && n == 2) return "(imp " + term(sp.args[0]) + " " + term(sp.args[1]) + ")";
    if (h.is_const(ConstOp::Eq) && n == 2) return "(= " + term(sp.args[0]) + " " + term(sp.args[1]) + ")";
    if (h.is_const(ConstOp::Forall) && n == 1) {
      const Term& s = sp.args[0];
      if (s.is_lam()) {
        std::string x = binder();
        std::string head = "(forall (" + x + " " + print_type(s.binder_type()) + ") ";
        binders_.push_back(x);
        std::string body = term(s.body());
        binders_.pop_back();
        return head + body + ")";
      }
      return "(forall " + print_type(h.head_name().param()) + " " + term(s) + ")";
    }
    std::string out = "(" + term(h);
    for (const Term& a : sp.args) out += " " + term(a);
    return out + ")";
  }

 private:
  static std::string name(const Name& n) {
    switch (n.op()) {
      case ConstOp::None: return n.id();
      case ConstOp::Not: return "(const not)";
      case ConstOp::Imp: return "(const imp)";
      case ConstOp::Eq: return "(const (= " + print_type(n.param()) + "))";
      case ConstOp::Forall: return "(const (forall " + print_type(n.param()) + "))";
    }
    return n.id();
  }

  std::string binder() const {
    static const char* const kBase[] = {"x", "y", "z", "u", "v", "w"};
    for (std::size_t k = 0;; ++k)
      for (const char* b : kBase) {
        std::string c = k == 0 ? b : b + std::to_string(k);
        if (!avoid_.count(c) && !kKeywords.count(c) && std::find(binders_.begin(), binders_.end(), c) == binders_.end())
          return c;
      }
  }

  std::set<std::string> avoid_;
  std::vector<std::string> binders_;
};

void write_declarations(std::ostream& os, const Problem& p) {
  for (const Type& a : p.sorts) os << "(sort " << a.id() << ")\n";
  for (const Name& x : p.vars) os << "(var " << x.id() << " " << print_type(x.type()) << ")\n";
  if (p.mode) os << "(mode " << *p.mode << ")\n";
  for (const Term& t : p.assumptions) os << "(assume " << print_term(t) << ")\n";
}

}  // namespace

std::string print_type(const Type& t) { return t.str(); }

std::string print_term(const Term& t) { return Printer(t).term(t); }

Problem parse_problem(std::string_view text) {
  Problem p;
  Scope sc;
  for (const SExpr& d : Reader(text).all())
    if (!elab_directive(sc, p, d)) d.error("expected (sort ...), (var ...), (assume ...) or (mode ...)");
  return p;
}

std::string serialize(const Problem& p) {
  std::ostringstream os;
  write_declarations(os, p);
  return os.str();
}

Term parse_term(const Problem& p, std::string_view text) {
  Scope sc;
  for (const Type& a : p.sorts) sc.sorts.emplace(a.id(), a);
  for (const Name& x : p.vars) sc.vars.emplace(x.id(), x);
  auto es = Reader(text).all();
  if (es.size() != 1) throw ParseError(1, 1, "expected exactly one term");
  return elab_term(sc, es[0]);
}

// ---------------------------------------------------------------------------
// Proofs

namespace {

void write_node(std::ostream& os, const Branch& a, const ProofNode& n, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  const RuleInstance& r = n.instance;
  os << pad << "(node " << to_string(r.rule) << "\n";
  os << pad << "  (premises";
  for (const Term& p : r.premises) os << " " << print_term(p);
  os << ")";
  if (r.term) {
    std::vector<Name> fresh;
    for (const Name& x : free_vars(*r.term))
      if (!a.has_free(x)) fresh.push_back(x);
    if (!fresh.empty()) {
      os << "\n" << pad << "  (decl";
      for (const Name& x : fresh) os << " (" << x.id() << " " << print_type(x.type()) << ")";
      os << ")";
    }
    os << "\n" << pad << "  (term " << print_term(*r.term) << ")";
  }
  for (std::size_t i = 0; i < r.alternatives.size(); ++i) {
    os << "\n" << pad << "  (alt " << (i + 1) << " (adds";
    for (const Term& s : r.alternatives[i]) os << " " << print_term(s);
    os << ")\n";
    if (i < n.children.size()) write_node(os, a.add_all(r.alternatives[i]), n.children[i], indent + 4);
    os << ")";
  }
  os << ")";
  if (indent == 2) os << "\n";
}

ProofNode read_node(Scope sc, const SExpr& e) {
  if (!e.head("node") || e.items.size() < 3) e.error("expected (node RULE (premises ...) ...)");
  ProofNode n;
  auto rule = rule_from_string(e.items[1].sym("rule name"));
  if (!rule) e.items[1].error("unknown rule '" + e.items[1].text + "'");
  n.instance.rule = *rule;
  for (std::size_t i = 2; i < e.items.size(); ++i) {
    const SExpr& part = e.items[i];
    if (part.head("premises")) {
      for (std::size_t k = 1; k < part.items.size(); ++k) n.instance.premises.push_back(elab_term(sc, part.items[k]));
    } else if (part.head("decl")) {
      for (std::size_t k = 1; k < part.items.size(); ++k) {
        const SExpr& b = part.items[k];
        if (b.atom || b.items.size() != 2) b.error("expected (x T)");
        check_identifier(b.items[0], "variable");
        sc.vars.insert_or_assign(b.items[0].text, Name::var(b.items[0].text, elab_type(sc, b.items[1])));
      }
    } else if (part.head("term")) {
      if (part.items.size() != 2) part.error("expected (term u)");
      n.instance.term = elab_term(sc, part.items[1]);
    } else if (part.head("alt")) {
      if (part.items.size() != 4 || !part.items[2].head("adds")) part.error("expected (alt i (adds ...) (node ...))");
      std::vector<Term> adds;
      for (std::size_t k = 1; k < part.items[2].items.size(); ++k) adds.push_back(elab_term(sc, part.items[2].items[k]));
      n.instance.alternatives.push_back(std::move(adds));
      n.children.push_back(read_node(sc, part.items[3]));
    } else {
      part.error("unexpected node component");
    }
  }
  return n;
}

}  // namespace

std::string serialize_proof(const Problem& p, const Proof& proof) {
  std::ostringstream os;
  write_declarations(os, p);
  os << "(calculus " << (proof.calculus == Calculus::EFO ? "efo" : "stt") << ")\n";
  if (proof.eager_close) os << "(eager-close)\n";
  os << "(proof\n";
  write_node(os, proof.root, proof.tree, 2);
  os << ")\n";
  return os.str();
}

ProofFile parse_proof(std::string_view text) {
  ProofFile f;
  Scope sc;
  std::optional<ProofNode> tree;
  for (const SExpr& d : Reader(text).all()) {
    if (elab_directive(sc, f.problem, d)) continue;
    if (d.head("calculus")) {
      if (d.items.size() != 2 || !(d.items[1].is("efo") || d.items[1].is("stt"))) d.error("expected (calculus efo|stt)");
      f.proof.calculus = d.items[1].is("efo") ? Calculus::EFO : Calculus::STT;
    } else if (d.head("eager-close")) {
      f.proof.eager_close = true;
    } else if (d.head("proof")) {
      if (tree) d.error("duplicate proof");
      if (d.items.size() != 2) d.error("expected (proof (node ...))");
      tree = read_node(sc, d.items[1]);
    } else {
      d.error("unexpected directive");
    }
  }
  if (!tree) throw ParseError(1, 1, "no (proof ...) in file");
  f.proof.root = f.problem.branch();
  f.proof.tree = std::move(*tree);
  return f;
}

// ---------------------------------------------------------------------------
// Models

std::string print_value(const Frame& f, const Value& v, const Type& t) {
  if (t.is_base()) return std::to_string(v.atom());
  std::string out = "[";
  const auto& es = v.entries();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(i) + "->" + print_value(f, es[i], t.result());
  }
  return out + "]";
}

std::string print_model(const Model& m) {
  std::ostringstream os;
  for (const auto& [a, n] : m.frame.sort_sizes()) {
    os << "sort " << a.id() << ":";
    auto lab = m.frame.labels.find(a);
    for (std::size_t i = 0; i < n; ++i) {
      os << (i ? ", " : " ") << i;
      if (lab != m.frame.labels.end() && i < lab->second.size()) {
        os << " = {";
        const auto& mem = lab->second[i].members;
        for (std::size_t k = 0; k < mem.size(); ++k) os << (k ? ", " : "") << print_term(mem[k]);
        os << "}";
      }
    }
    os << "\n";
  }
  for (const auto& [x, v] : m.values) os << x.id() << " = " << print_value(m.frame, v, x.type()) << "\n";
  return os.str();
}

}  // namespace hotab
