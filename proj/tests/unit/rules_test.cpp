#include <gtest/gtest.h>

#include <algorithm>

#include "hotab/fragments.hpp"
#include "hotab/normalize.hpp"
#include "hotab/rules.hpp"

namespace hotab {
namespace {

const Type a = Type::base("a");
const Type o = Type::o();
const Type ao = Type::fun(a, o);

struct DoubleNegation {
  Term p = Term::var("p", Type::fun(ao, o));
  Term f = Term::var("f", ao);
  Name x = Name::var("x", a);
  Term lam = Term::lam(x, mk_not(mk_not(Term::app(f, Term::name(x)))));
  Branch branch{std::vector<Term>{Term::app(p, f), mk_not(Term::app(p, lam))}};
};

std::vector<RuleInstance> of_rule(const std::vector<RuleInstance>& v, RuleId r) {
  std::vector<RuleInstance> out;
  std::copy_if(v.begin(), v.end(), std::back_inserter(out), [&](const RuleInstance& i) { return i.rule == r; });
  return out;
}

TEST(Applicable, DoubleNegationRootIsMating) {
  DoubleNegation fx;
  for (const auto& insts : {applicable_stt(fx.branch, 2), applicable_efo(fx.branch)}) {
    ASSERT_FALSE(insts.empty());
    EXPECT_EQ(insts[0].rule, RuleId::Mat);
    ASSERT_EQ(insts[0].alternatives.size(), 1u);
    EXPECT_EQ(insts[0].alternatives[0], std::vector<Term>{mk_neq(fx.f, fx.lam)});
  }
}

TEST(Applicable, NothingOnClosedBranch) {
  Term p = Term::var("p", o);
  Branch b(std::vector<Term>{p, mk_not(p)});
  EXPECT_TRUE(applicable_stt(b, 3).empty());
  EXPECT_TRUE(applicable_efo(b).empty());
  auto c = closing_instance(b);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->rule, RuleId::Mat);
  EXPECT_TRUE(c->alternatives.empty());
}

TEST(Applicable, FunctionalExtensionalityBlockedByWitness) {
  Term f = Term::var("f", ao), g = Term::var("g", ao);
  Term x = Term::var("x", a);
  Branch b(std::vector<Term>{mk_neq(f, g), mk_neq(Term::app(f, x), Term::app(g, x))});
  EXPECT_TRUE(of_rule(applicable_stt(b, 1), RuleId::FE).empty());
  EXPECT_TRUE(of_rule(applicable_efo(b), RuleId::FE).empty());
}

TEST(Applicable, FunctionalExtensionalityFresh) {
  Term f = Term::var("f", Type::fun(a, a)), g = Term::var("g", Type::fun(a, a));
  Branch b(std::vector<Term>{mk_neq(f, g)});
  auto fe = of_rule(applicable_efo(b), RuleId::FE);
  ASSERT_EQ(fe.size(), 1u);
  ASSERT_TRUE(fe[0].term);
  EXPECT_FALSE(b.has_free(fe[0].term->head_name()));
  EXPECT_EQ(fe[0].alternatives[0], std::vector<Term>{mk_neq(Term::app(f, *fe[0].term), Term::app(g, *fe[0].term))});
}

TEST(ApplicableEfo, QuantifierUsesDiscriminatingTerms) {
  Term r = Term::var("r", ao);
  Term u = Term::var("u", a), v = Term::var("v", a);
  Branch b(std::vector<Term>{mk_forall(r), mk_neq(u, v)});
  auto all = of_rule(applicable_efo(b), RuleId::All);
  std::vector<Term> terms;
  for (const auto& i : all) terms.push_back(*i.term);
  EXPECT_EQ(terms, (std::vector<Term>{u, v}));
}

TEST(ApplicableEfo, QuantifierWithoutDiscriminatingTermsGetsOneVariable) {
  Term y = Term::var("y", o);
  Name x = Name::var("x", a);
  Term s = mk_forall(x, mk_not(mk_imp(y, y)));
  Branch b(std::vector<Term>{s});
  auto all = of_rule(applicable_efo(b), RuleId::All);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_TRUE(all[0].term->is_var());
  EXPECT_EQ(all[0].term->type(), a);
  EXPECT_EQ(all[0].alternatives[0], std::vector<Term>{mk_not(mk_imp(y, y))});

  // Once the instance is present the restriction stops further instances.
  Branch after = b.add(all[0].alternatives[0][0]);
  EXPECT_TRUE(of_rule(applicable_efo(after), RuleId::All).empty());
}

TEST(ApplicableEfo, QuantifierPrefersFreeVariable) {
  Term r = Term::var("r", ao);
  Term y = Term::var("y", a), w = Term::var("w", a);
  Branch b(std::vector<Term>{mk_forall(r), mk_eq(y, w)});
  auto all = of_rule(applicable_efo(b), RuleId::All);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(*all[0].term, y);
}

TEST(ApplicableEfo, NegatedQuantifierCloses) {
  Name x = Name::var("x", a);
  Branch b(std::vector<Term>{mk_not(mk_forall(x, mk_eq(Term::name(x), Term::name(x))))});
  auto insts = applicable_efo(b);
  ASSERT_FALSE(insts.empty());
  ASSERT_EQ(insts[0].rule, RuleId::AllN);
  Term c = insts[0].alternatives.at(0).at(0);
  Term v = *insts[0].term;
  EXPECT_EQ(c, mk_neq(v, v));
  EXPECT_TRUE(is_closed(b.add(c)));
}

TEST(ApplicableEfo, RejectsNonQuasiEfo) {
  Term y = Term::var("y", o);
  Name x = Name::var("x", o);
  Branch b(std::vector<Term>{mk_eq(Term::lam(x, Term::name(x)), Term::lam(x, y))});
  EXPECT_THROW(applicable_efo(b), FragmentViolation);
}

TEST(CheckInstance, DoubleNegationRoot) {
  DoubleNegation fx;
  RuleInstance r{RuleId::Mat, {Term::app(fx.p, fx.f), mk_not(Term::app(fx.p, fx.lam))}, std::nullopt,
                 {{mk_neq(fx.f, fx.lam)}}};
  EXPECT_TRUE(check_instance(fx.branch, r));
  EXPECT_TRUE(check_instance(fx.branch, r, {Calculus::EFO, false}));
}

TEST(CheckInstance, FunctionalExtensionalityNeedsFreshVariable) {
  Term f = Term::var("f", ao), g = Term::var("g", ao);
  Term y = Term::var("y", a);
  Branch b(std::vector<Term>{mk_neq(f, g), mk_eq(y, y)});
  RuleInstance r{RuleId::FE, {mk_neq(f, g)}, y, {{mk_neq(Term::app(f, y), Term::app(g, y))}}};
  EXPECT_FALSE(check_instance(b, r));
  Term z = Term::var("z", a);
  r.term = z;
  r.alternatives = {{mk_neq(Term::app(f, z), Term::app(g, z))}};
  EXPECT_TRUE(check_instance(b, r));
}

TEST(CheckInstance, Confrontation) {
  Term s = Term::var("s", a), t = Term::var("t", a), u = Term::var("u", a), v = Term::var("v", a);
  Branch b(std::vector<Term>{mk_eq(s, t), mk_neq(u, v)});
  RuleInstance r{RuleId::Con, {mk_eq(s, t), mk_neq(u, v)}, std::nullopt,
                 {{mk_neq(s, u), mk_neq(t, u)}, {mk_neq(s, v), mk_neq(t, v)}}};
  EXPECT_TRUE(check_instance(b, r));
  std::swap(r.alternatives[0], r.alternatives[1]);
  EXPECT_FALSE(check_instance(b, r));
}

TEST(CheckInstance, WrongConclusionRejected) {
  Term p = Term::var("p", o), q = Term::var("q", o);
  Branch b(std::vector<Term>{mk_imp(p, q)});
  RuleInstance ok{RuleId::Imp, {mk_imp(p, q)}, std::nullopt, {{mk_not(p)}, {q}}};
  EXPECT_TRUE(check_instance(b, ok));
  RuleInstance bad = ok;
  bad.alternatives = {{p}, {q}};
  EXPECT_FALSE(check_instance(b, bad));
  RuleInstance missing = ok;
  missing.premises = {mk_imp(q, p)};
  EXPECT_FALSE(check_instance(b, missing));
}

TEST(CheckInstance, EagerCloseOnlyWhenEnabled) {
  Term r = Term::var("r", ao);
  Term rx = Term::app(r, Term::var("x", a));
  Branch b(std::vector<Term>{rx, mk_not(rx)});
  auto c = closing_instance(b, true);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->rule, RuleId::Close);
  EXPECT_TRUE(check_instance(b, *c, {Calculus::STT, true}));
  EXPECT_FALSE(check_instance(b, *c, {Calculus::STT, false}));
}

TEST(InstantiationTerms, OrderAndFuel) {
  Term x = Term::var("x", a), y = Term::var("y", a);
  Term f = Term::var("f", Type::fun(a, a));
  Branch b(std::vector<Term>{mk_neq(y, x), mk_eq(Term::app(f, x), x)});
  auto one = instantiation_terms(b, a, 1);
  EXPECT_EQ(one, (std::vector<Term>{y, x}));
  auto two = instantiation_terms(b, a, 2);
  EXPECT_EQ(std::vector<Term>(two.begin(), two.begin() + 3), (std::vector<Term>{y, x, Term::app(f, x)}));
  for (const Term& t : two) {
    EXPECT_LE(instantiation_size(t), 2u);
    EXPECT_TRUE(is_normal(t));
    EXPECT_EQ(t.type(), a);
  }
}

TEST(EnumerateNormalTerms, SmallBoolean) {
  Signature sig;
  sig.heads = {Name::var("p", o)};
  sig.with_imp = false;
  // size 1: p; size 2: not p
  EXPECT_EQ(enumerate_normal_terms(sig, o, 1), std::vector<Term>{Term::var("p", o)});
  EXPECT_EQ(enumerate_normal_terms(sig, o, 2), std::vector<Term>{mk_not(Term::var("p", o))});
}

TEST(RuleNames, RoundTrip) {
  for (RuleId r : {RuleId::DN, RuleId::BQ, RuleId::BE, RuleId::FQ, RuleId::FE, RuleId::Mat, RuleId::Dec, RuleId::Con,
                   RuleId::Imp, RuleId::ImpN, RuleId::All, RuleId::AllN, RuleId::Close})
    EXPECT_EQ(rule_from_string(to_string(r)), r);
  EXPECT_FALSE(rule_from_string("Cut"));
}

}  // namespace
}  // namespace hotab
