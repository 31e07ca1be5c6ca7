// Writes the randomly generated part of the decision-procedure corpus.
//
//   hotab_corpus_gen <corpus-dir> [per-fragment-count]
//
// Each fragment directory gets gen_NN.hot files, alternating between
// problems the generator expects to be satisfiable and unsatisfiable.
// Candidates are kept only if they classify into the intended fragment and
// the bounded model oracle stays cheap; the verdict itself is not used for
// filtering beyond that balance.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "gen.hpp"
#include "hotab/fragments.hpp"
#include "hotab/search.hpp"
#include "hotab/syntax.hpp"

namespace {

using namespace hotab;
using namespace hotab::testkit;

const Type a = Type::base("a");
const Type o = Type::o();

Problem make_problem(const std::vector<Term>& fs) {
  Problem p;
  NameHashSet seen;
  for (const Term& s : fs) collect_free_vars(s, p.vars, seen);
  for (const Term& s : fs) p.assumptions.push_back(normalize(s));
  std::set<Type> sorts;
  for (const Type& t : sorts_of(Branch(p.assumptions))) sorts.insert(t);
  for (const Name& x : p.vars)
    for (const Type& t : x.type().arg_types())
      if (t.is_sort()) sorts.insert(t);
  for (const Name& x : p.vars)
    if (x.type().target().is_sort()) sorts.insert(x.type().target());
  p.sorts.assign(sorts.begin(), sorts.end());
  return p;
}

Term var(const char* id, const Type& t) { return Term::var(id, t); }

// Lambda-free quasi-EFO formulas over a small first-order signature.
Term lambda_free_formula(Gen& g, int depth) {
  const Type ao = Type::fun(a, o);
  std::vector<Term> inds{var("x", a), var("y", a), var("z", a)};
  Term f = var("f", Type::fun(a, a));
  auto ind = [&]() { return g.chance(0.7) ? g.pick(inds) : Term::app(f, g.pick(inds)); };
  auto atom = [&]() -> Term {
    switch (g.below(4)) {
      case 0:
        return var(g.chance(0.5) ? "p" : "q", o);
      case 1:
        return Term::app(var("r", ao), ind());
      case 2:
        return mk_eq(ind(), ind());
      default:
        return Term::app(var("h", Type::fun({a, a}, o)), {ind(), ind()});
    }
  };
  if (depth <= 0) return atom();
  switch (g.below(6)) {
    case 0:
      return mk_not(lambda_free_formula(g, depth - 1));
    case 1:
      return mk_imp(lambda_free_formula(g, depth - 1), lambda_free_formula(g, depth - 1));
    case 2:
      return g.chance(0.5) ? mk_forall(var("r", ao)) : mk_not(mk_forall(var("r", ao)));
    case 3:
      return mk_neq(f, var("g", Type::fun(a, a)));
    default:
      return atom();
  }
}

// Pure terms: types built from `a` only, names x, y : a and f : a -> a.
Term pure_term(Gen& g, const Type& t, int depth, std::vector<Type> binders = {}) {
  std::vector<Term> leaves;
  if (t == a) {
    leaves = {var("x", a), var("y", a)};
    for (std::size_t i = 0; i < binders.size(); ++i)
      if (binders[binders.size() - 1 - i] == a) leaves.push_back(Term::bound(static_cast<std::uint32_t>(i), a));
  }
  if (t == Type::fun(a, a)) leaves.push_back(var("f", t));
  if (t.is_fun()) {
    std::vector<Type> inner = binders;
    inner.push_back(t.arg());
    return Term::lam_raw(t.arg(), pure_term(g, t.result(), depth - 1, inner));
  }
  if (depth <= 0 || g.chance(0.5)) return g.pick(leaves);
  return Term::app(var("f", Type::fun(a, a)), pure_term(g, a, depth - 1, binders));
}

Term pure_diseq(Gen& g, bool aim_unsat) {
  const std::vector<Type> types{a, Type::fun(a, a), Type::fun({a, a}, a)};
  const Type& t = g.pick(types);
  Term s = pure_term(g, t, 3);
  Term u = aim_unsat && g.chance(0.7) ? s : pure_term(g, t, 3);
  return mk_neq(s, u);
}

bool oracle_cheap(const Branch& a) {
  std::uint64_t total = 1;
  Frame f({{Type::base("a"), 3}});
  for (const Name& x : a.free_vars()) {
    std::uint64_t c = f.card(x.type());
    if (c > 600) return false;
    total *= c;
    if (total > 2000000) return false;
  }
  return true;
}

bool in_fragment(const std::string& frag, const FragmentReport& r) {
  if (frag == "lambda_free") return r.quasi_efo.holds && r.lambda_free.holds;
  if (frag == "pure") return r.quasi_efo.holds && r.pure.holds && !r.lambda_free.holds;
  return r.quasi_efo.holds && r.bsr.holds && !r.lambda_free.holds;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: hotab_corpus_gen <corpus-dir> [count]\n";
    return 2;
  }
  std::filesystem::path root = argv[1];
  const int count = argc > 2 ? std::stoi(argv[2]) : 12;
  Gen g(20261015);

  for (const std::string frag : {"lambda_free", "pure", "bsr"}) {
    std::filesystem::create_directories(root / frag);
    int made = 0;
    for (int attempt = 0; made < count && attempt < 100000; ++attempt) {
      const bool aim_unsat = made % 2 == 1;
      std::vector<Term> fs;
      std::size_t n = 2 + g.below(4);
      for (std::size_t k = 0; k < n; ++k) {
        if (frag == "lambda_free") fs.push_back(lambda_free_formula(g, 2));
        else if (frag == "pure") fs.push_back(pure_diseq(g, aim_unsat));
        else fs.push_back(g.bsr_formula(3, true));
        if (frag == "pure" && k == 1) break;
      }
      Problem p = make_problem(fs);
      Branch b = p.branch();
      if (!in_fragment(frag, classify_branch(b)) || !oracle_cheap(b)) continue;

      auto t0 = std::chrono::steady_clock::now();
      Verdict v = decide(b);
      double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (dt > 1.0) continue;
      if ((v.kind == VerdictKind::Refuted) != aim_unsat) continue;

      char name[32];
      std::snprintf(name, sizeof name, "gen_%02d.hot", made + 1);
      std::ofstream out(root / frag / name);
      out << "; generated (seed 20261015), expected " << (aim_unsat ? "unsat" : "sat") << "\n" << serialize(p);
      ++made;
    }
    std::cout << frag << ": " << made << " problems\n";
  }
  return 0;
}
