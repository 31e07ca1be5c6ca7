#include <benchmark/benchmark.h>

#include "hotab/fragments.hpp"
#include "hotab/normalize.hpp"
#include "hotab/search.hpp"
#include "hotab/syntax.hpp"

namespace {

using namespace hotab;

const Type a = Type::base("a");
const Type o = Type::o();

// Church numeral n applied to itself: normalizes to a tower of applications.
Term church(int n, const Type& t) {
  Name f = Name::var("f", Type::fun(t, t)), x = Name::var("x", t);
  Term body = Term::name(x);
  for (int i = 0; i < n; ++i) body = Term::app(Term::name(f), body);
  return Term::lam(f, Term::lam(x, body));
}

void BM_NormalizeChurch(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Type t = Type::fun(a, a);
  Term c1 = church(n, t), c2 = church(n, a);
  Term g = Term::var("g", Type::fun(a, a)), z = Term::var("z", a);
  Term redex = Term::app(Term::app(c1, c2), g);
  redex = Term::app(redex, z);
  for (auto _ : st) benchmark::DoNotOptimize(normalize(redex));
  st.SetLabel(std::to_string(normalize(redex).size()) + " nodes");
}
BENCHMARK(BM_NormalizeChurch)->Arg(2)->Arg(3)->Arg(4);

void BM_Discriminants(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  std::vector<Term> vars, fs;
  for (int i = 0; i < n; ++i) vars.push_back(Term::var("x" + std::to_string(i), a));
  // A cycle of disequations: many maximal independent sets.
  for (int i = 0; i < n; ++i) fs.push_back(mk_neq(vars[i], vars[(i + 1) % n]));
  for (auto _ : st) {
    Branch b(fs);
    benchmark::DoNotOptimize(discriminants(b, a).size());
  }
}
BENCHMARK(BM_Discriminants)->Arg(6)->Arg(10)->Arg(14);

void BM_DoubleNegation(benchmark::State& st) {
  Problem p = parse_problem(
      "(sort a) (var f (> a o)) (var p (> (> a o) o)) (assume (p f))\n"
      "(assume (not (p (lam (x a) (not (not (f x)))))))");
  Branch b = p.branch();
  SearchConfig cfg;
  cfg.calculus = Calculus::EFO;
  for (auto _ : st) benchmark::DoNotOptimize(refute(b, cfg).kind);
}
BENCHMARK(BM_DoubleNegation);

void BM_IdentityConstant(benchmark::State& st) {
  Problem p = parse_problem("(var y o) (assume (= (lam (x o) x) (lam (x o) y)))");
  Branch b = p.branch();
  for (auto _ : st) benchmark::DoNotOptimize(refute(b).kind);
}
BENCHMARK(BM_IdentityConstant);

void BM_DecideBsrChain(benchmark::State& st) {
  // r0 c, forall x. ri x -> r(i+1) x, not rn c
  const int n = static_cast<int>(st.range(0));
  Type ao = Type::fun(a, o);
  Term c = Term::var("c", a);
  Name x = Name::var("x", a);
  std::vector<Term> fs{Term::app(Term::var("r0", ao), c)};
  for (int i = 0; i < n; ++i) {
    Term ri = Term::var("r" + std::to_string(i), ao), rj = Term::var("r" + std::to_string(i + 1), ao);
    fs.push_back(mk_forall(x, mk_imp(Term::app(ri, Term::name(x)), Term::app(rj, Term::name(x)))));
  }
  fs.push_back(mk_not(Term::app(Term::var("r" + std::to_string(n), ao), c)));
  Branch b(fs);
  for (auto _ : st) benchmark::DoNotOptimize(decide(b).kind);
}
BENCHMARK(BM_DecideBsrChain)->Arg(2)->Arg(4)->Arg(8);

void BM_ExtractModel(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  std::vector<Term> fs;
  for (int i = 0; i + 1 < n; ++i)
    fs.push_back(mk_neq(Term::var("x" + std::to_string(i), a), Term::var("x" + std::to_string(i + 1), a)));
  Branch b(fs);
  for (auto _ : st) benchmark::DoNotOptimize(extract_model(b).values.size());
}
BENCHMARK(BM_ExtractModel)->Arg(3)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
