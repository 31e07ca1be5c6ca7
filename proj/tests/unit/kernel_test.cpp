#include <gtest/gtest.h>

#include "hotab/kernel.hpp"

namespace hotab {
namespace {

const Type a = Type::base("a");
const Type o = Type::o();

TEST(Type, BaseAndArrow) {
  EXPECT_TRUE(Type::base("o").is_o());
  EXPECT_TRUE(a.is_sort());
  Type t = Type::fun({a, a}, o);
  EXPECT_EQ(t.arity(), 2u);
  EXPECT_EQ(t.target(), o);
  EXPECT_EQ(t, Type::fun(a, Type::fun(a, o)));
  EXPECT_TRUE(t.contains_o());
  EXPECT_FALSE(Type::fun(a, a).contains_o());
}

TEST(Term, TypeOf) {
  Term x = Term::var("x", a);
  EXPECT_EQ(type_of(x), a);
  Term px = Term::var("p", o);
  EXPECT_EQ(type_of(mk_not(px)), o);
  Term lam = Term::lam(x.head_name(), mk_eq(x, x));
  EXPECT_EQ(type_of(lam), Type::fun(a, o));
}

TEST(Term, IllTypedApplicationThrows) {
  Term x = Term::var("x", a);
  EXPECT_THROW(Term::app(x, x), TypeError);
  EXPECT_THROW(Term::app(Term::name(Name::neg()), x), TypeError);
}

TEST(Term, AlphaEquivalentLambdasAreEqual) {
  Name x = Name::var("x", a), y = Name::var("y", a);
  Term l1 = Term::lam(x, Term::name(x));
  Term l2 = Term::lam(y, Term::name(y));
  EXPECT_EQ(l1, l2);
  EXPECT_EQ(l1.hash(), l2.hash());
  EXPECT_NE(Term::lam(x, Term::name(y)), l1);
}

TEST(Term, Caches) {
  Name x = Name::var("x", a);
  Term f = Term::var("f", Type::fun(a, a));
  Term body = Term::app(f, Term::name(x));
  Term l = Term::lam(x, body);
  EXPECT_EQ(l.size(), 4u);
  EXPECT_TRUE(l.is_closed());
  EXPECT_EQ(l.body().loose_bound(), 1u);
  EXPECT_TRUE(l.has_lambda());
  EXPECT_FALSE(body.has_lambda());
}

TEST(FreeVars, Examples) {
  Name x = Name::var("x", a);
  EXPECT_TRUE(free_vars(Term::lam(x, Term::name(x))).empty());

  Term f = Term::var("f", Type::fun(a, a));
  EXPECT_EQ(free_vars(Term::app(f, Term::name(x))), (NameSet{f.head_name(), x}));

  Term g = Term::var("g", Type::fun(a, o));
  Term p = Term::var("p", Type::fun(Type::fun(a, o), o));
  EXPECT_EQ(free_vars(mk_not(Term::app(p, g))), (NameSet{p.head_name(), g.head_name()}));
}

TEST(FreeVars, ConstantsExcluded) {
  Term x = Term::var("x", a);
  EXPECT_EQ(free_vars(mk_eq(x, x)), NameSet{x.head_name()});
  EXPECT_TRUE(free_vars(Term::name(Name::forall(a))).empty());
}

TEST(FreshVar, Scheme) {
  Name first = fresh_var(a, NameSet{});
  Name second = fresh_var(a, NameSet{first});
  EXPECT_EQ(first.type(), a);
  EXPECT_NE(first, second);
  EXPECT_EQ(fresh_var(a, NameSet{}), first);
  EXPECT_EQ(first.id(), "x1");
  EXPECT_EQ(second.id(), "x2");
  EXPECT_EQ(fresh_var(o, NameSet{}).id()[0], 'b');
  EXPECT_EQ(fresh_var(Type::fun(a, o), NameSet{}).id()[0], 'p');
  EXPECT_EQ(fresh_var(Type::fun(a, a), NameSet{}).id()[0], 'f');
}

TEST(FreshVar, GrowingAvoidSetNeverCollides) {
  NameSet avoid;
  for (int i = 0; i < 50; ++i) {
    Name x = fresh_var(a, avoid);
    EXPECT_FALSE(avoid.count(x));
    avoid.insert(x);
  }
}

TEST(FreshVar, AvoidsIdentifiersAcrossTypes) {
  Name taken = Name::var("x1", o);
  Name x = fresh_var(a, {taken});
  EXPECT_NE(x.id(), "x1");
}

TEST(Spine, Examples) {
  Term x = Term::var("x", Type::fun({a, a}, o));
  Term s1 = Term::var("s1", a), s2 = Term::var("s2", a);
  Spine sp = spine(Term::app(x, {s1, s2}));
  EXPECT_EQ(sp.head, x);
  EXPECT_EQ(sp.args, (std::vector<Term>{s1, s2}));

  EXPECT_TRUE(spine(x).args.empty());

  Name y = Name::var("y", a);
  Term id = Term::lam(y, Term::name(y));
  Spine r = spine(Term::app(id, s1));
  EXPECT_EQ(r.head, id);
  EXPECT_EQ(r.args, std::vector<Term>{s1});
}

}  // namespace
}  // namespace hotab
