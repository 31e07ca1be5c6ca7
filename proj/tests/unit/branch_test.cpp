#include <gtest/gtest.h>

#include "hotab/branch.hpp"
#include "hotab/normalize.hpp"
#include "oracles.hpp"

namespace hotab {
namespace {

const Type a = Type::base("a");
const Type o = Type::o();
const Term x = Term::var("x", a), y = Term::var("y", a), z = Term::var("z", a);

std::vector<std::vector<Term>> members(const std::vector<Discriminant>& ds) {
  std::vector<std::vector<Term>> out;
  for (const auto& d : ds) out.push_back(d.members);
  return out;
}

TEST(Classify, Shapes) {
  Term p = Term::var("p", o);
  EXPECT_EQ(classify(mk_not(mk_not(p))).kind, FormulaKind::DoubleNeg);

  Term f = Term::var("f", Type::fun(a, a)), g = Term::var("g", Type::fun(a, a));
  EXPECT_EQ(classify(mk_neq(f, g)).kind, FormulaKind::FunDiseq);

  FormulaShape sh = classify(mk_neq(Term::app(f, x), Term::app(f, y)));
  EXPECT_EQ(sh.kind, FormulaKind::SortDiseq);
  EXPECT_TRUE(sh.decomposable);
  EXPECT_EQ(*sh.type, a);
  EXPECT_FALSE(classify(mk_neq(Term::app(f, x), Term::app(g, y))).decomposable);

  EXPECT_EQ(classify(p).kind, FormulaKind::PosAtom);
  EXPECT_EQ(classify(mk_not(p)).kind, FormulaKind::NegAtom);
  EXPECT_EQ(classify(mk_eq(p, p)).kind, FormulaKind::BoolEq);
  EXPECT_EQ(classify(mk_imp(p, p)).kind, FormulaKind::Imp);
  Name v = Name::var("v", a);
  EXPECT_EQ(classify(mk_forall(v, mk_eq(Term::name(v), x))).kind, FormulaKind::Forall);
  EXPECT_EQ(classify(mk_not(mk_forall(v, mk_eq(Term::name(v), x)))).kind, FormulaKind::NegForall);
}

TEST(Closed, Examples) {
  Term p = Term::var("p", o);
  EXPECT_TRUE(is_closed(Branch(std::vector<Term>{p, mk_not(p)})));
  EXPECT_FALSE(is_closed(Branch()));
  EXPECT_TRUE(is_closed(Branch(std::vector<Term>{mk_neq(x, x)})));
}

TEST(Closed, NeedsVariables) {
  Term f = Term::var("f", Type::fun(a, a));
  Term fx = Term::app(f, x);
  EXPECT_FALSE(is_closed(Branch(std::vector<Term>{mk_neq(fx, fx)})));
  Term r = Term::var("r", Type::fun(a, o));
  Term rx = Term::app(r, x);
  EXPECT_FALSE(is_closed(Branch(std::vector<Term>{rx, mk_not(rx)})));
}

TEST(Discriminating, Examples) {
  Branch tri(std::vector<Term>{mk_neq(x, y), mk_neq(x, z), mk_neq(y, z)});
  EXPECT_EQ(discriminating_terms(tri, a), (std::vector<Term>{x, y, z}));
  EXPECT_TRUE(discriminating_terms(Branch(), a).empty());

  Term fx = Term::app(Term::var("f", Type::fun(a, a)), x);
  EXPECT_EQ(discriminating_terms(Branch(std::vector<Term>{mk_neq(fx, y)}), a), (std::vector<Term>{fx, y}));
}

TEST(Discriminants, ThreeVariables) {
  Branch tri(std::vector<Term>{mk_neq(x, y), mk_neq(x, z), mk_neq(y, z)});
  EXPECT_EQ(members(discriminants(tri, a)), (std::vector<std::vector<Term>>{{x}, {y}, {z}}));
}

TEST(Discriminants, NoDisequationsGivesEmptyOne) {
  auto ds = discriminants(Branch(std::vector<Term>{mk_eq(x, y)}), a);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_TRUE(ds[0].members.empty());
}

TEST(Discriminants, OneDisequation) {
  Branch b(std::vector<Term>{mk_neq(x, y)});
  EXPECT_EQ(members(discriminants(b, a)), (std::vector<std::vector<Term>>{{x}, {y}}));
  EXPECT_EQ(testkit::brute_discriminants(b, a), (std::vector<std::vector<Term>>{{x}, {y}}));
}

TEST(Discriminants, PathOfThree) {
  // x != y, y != z: {x, z} and {y}.
  Branch b(std::vector<Term>{mk_neq(x, y), mk_neq(y, z)});
  auto got = members(discriminants(b, a));
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, testkit::brute_discriminants(b, a));
  EXPECT_EQ(got.size(), 2u);
}

TEST(Discriminants, MemoizedPerBranch) {
  Branch b(std::vector<Term>{mk_neq(x, y)});
  EXPECT_EQ(&b.discriminants(a), &b.discriminants(a));
}

TEST(Separated, EitherOrientation) {
  Branch b(std::vector<Term>{mk_neq(x, y)});
  EXPECT_TRUE(separated(b, x, y));
  EXPECT_TRUE(separated(b, y, x));
  EXPECT_FALSE(separated(b, x, z));
}

TEST(Add, Persistent) {
  Term p = Term::var("p", o);
  Branch empty;
  Branch one = empty.add(p);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_TRUE(one.contains(p));
  EXPECT_TRUE(empty.empty());
  EXPECT_TRUE(one.add(p).same(one));
}

TEST(Add, UpdatesSortIndices) {
  Branch b = Branch(std::vector<Term>{mk_eq(x, y)}).add(mk_neq(z, x));
  ASSERT_EQ(b.sort_equations(a).size(), 1u);
  ASSERT_EQ(b.sort_disequations(a).size(), 1u);
  EXPECT_EQ(b.sort_disequations(a)[0], 1u);
  EXPECT_EQ(b.discriminating(a), (std::vector<Term>{z, x}));
  EXPECT_EQ(testkit::branch_cache_mismatch(b), "");
}

TEST(Add, RejectsNonFormulas) {
  Name v = Name::var("v", a);
  Term p = Term::var("p", o);
  EXPECT_THROW(Branch().add(x), TypeError);
  EXPECT_THROW(Branch().add(Term::app(Term::lam(v, p), x)), TypeError);
}

TEST(Branch, FreeVarsInOrder) {
  Term f = Term::var("f", Type::fun(a, a));
  Branch b(std::vector<Term>{mk_neq(Term::app(f, y), x), mk_eq(z, y)});
  EXPECT_EQ(b.free_vars(), (std::vector<Name>{f.head_name(), y.head_name(), x.head_name(), z.head_name()}));
  EXPECT_TRUE(b.uses_id("f"));
  EXPECT_FALSE(b.uses_id("g"));
}

}  // namespace
}  // namespace hotab
