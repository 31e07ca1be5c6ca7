#include "hotab/search.hpp"

#include <algorithm>
#include <stdexcept>

#include "hotab/fragments.hpp"
#include "hotab/normalize.hpp"

namespace hotab {

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Refuted: return "unsat";
    case VerdictKind::Satisfiable: return "sat";
    case VerdictKind::Unknown: return "unknown";
  }
  return "?";
}

namespace {

void count_nodes(const ProofNode& n, std::size_t& total, std::map<RuleId, std::size_t>* rules) {
  ++total;
  if (rules) ++(*rules)[n.instance.rule];
  for (const ProofNode& c : n.children) count_nodes(c, total, rules);
}

}  // namespace

std::size_t Proof::node_count() const {
  std::size_t total = 0;
  count_nodes(tree, total, nullptr);
  return total;
}

std::map<RuleId, std::size_t> Proof::rule_counts() const {
  std::size_t total = 0;
  std::map<RuleId, std::size_t> rules;
  count_nodes(tree, total, &rules);
  return rules;
}

// ---------------------------------------------------------------------------
// Search

namespace {

using Clock = std::chrono::steady_clock;

enum class Status { Closed, Open, Exhausted };

struct Outcome {
  Status status = Status::Closed;
  ProofNode node;
  std::optional<Branch> open;
  std::string reason;
};

class Searcher {
 public:
  Searcher(const SearchConfig& cfg, Clock::time_point start, SearchStats& stats)
      : cfg_(cfg), start_(start), stats_(stats) {}

  Outcome explore(const Branch& a, std::size_t fuel) {
    if (cfg_.max_nodes && stats_.nodes >= *cfg_.max_nodes) return exhausted("nodes");
    if (cfg_.timeout && (stats_.nodes & 63) == 0 && Clock::now() - start_ > *cfg_.timeout) return exhausted("timeout");
    ++stats_.nodes;

    Outcome out;
    if (auto c = closing_instance(a, cfg_.eager_close)) {
      if (cfg_.on_instance) cfg_.on_instance(a, *c);
      out.node.instance = std::move(*c);
      return out;
    }
    std::vector<RuleInstance> next = applicable(a, fuel, 1);
    if (next.empty()) {
      out.status = Status::Open;
      out.open = a;
      return out;
    }
    std::size_t pick = 0;
    if (next.front().alternatives.size() > 1) {
      // Prefer the branching instance that leaves the fewest open children.
      next = applicable(a, fuel, SIZE_MAX);
      std::size_t best = SIZE_MAX;
      for (std::size_t i = 0; i < next.size() && best > 0; ++i) {
        std::size_t open = 0;
        for (const auto& alt : next[i].alternatives) open += !a.add_all(alt).closed();
        if (open < best) best = open, pick = i;
      }
    }
    if (cfg_.on_instance) cfg_.on_instance(a, next[pick]);
    out.node.instance = std::move(next[pick]);
    for (const auto& alt : out.node.instance.alternatives) {
      Outcome child = explore(a.add_all(alt), fuel);
      if (child.status != Status::Closed) return child;
      out.node.children.push_back(std::move(child.node));
    }
    return out;
  }

 private:
  std::vector<RuleInstance> applicable(const Branch& a, std::size_t fuel, std::size_t limit) const {
    return cfg_.calculus == Calculus::EFO ? applicable_efo(a, cfg_.eager_close, limit)
                                          : applicable_stt(a, fuel, cfg_.eager_close, limit);
  }

  static Outcome exhausted(std::string why) {
    Outcome o;
    o.status = Status::Exhausted;
    o.reason = std::move(why);
    return o;
  }

  const SearchConfig& cfg_;
  Clock::time_point start_;
  SearchStats& stats_;
};

void require_quasi_efo(const Branch& a) {
  for (const Term& s : a.formulas())
    if (!is_quasi_efo(s)) throw FragmentViolation("the EFO calculus needs quasi-EFO formulas");
}

}  // namespace

Verdict refute(const Branch& a, const SearchConfig& cfg) {
  const auto start = Clock::now();
  Verdict v;
  auto finish = [&]() -> Verdict {
    v.stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return std::move(v);
  };

  std::vector<std::size_t> levels{0};
  if (cfg.calculus == Calculus::EFO) {
    require_quasi_efo(a);
  } else {
    levels = cfg.fuel_schedule;
    if (levels.empty()) throw std::invalid_argument("empty fuel schedule");
    for (std::size_t i = 1; i < levels.size(); ++i)
      if (levels[i] <= levels[i - 1]) throw std::invalid_argument("fuel schedule must be strictly increasing");
  }

  Searcher s(cfg, start, v.stats);
  for (std::size_t fuel : levels) {
    v.stats.fuel = fuel;
    Outcome o = s.explore(a, fuel);
    if (o.status == Status::Closed) {
      Proof p{a, std::move(o.node), cfg.calculus, cfg.eager_close};
      if (std::string why = explain_proof(p); !why.empty()) throw std::logic_error("search produced an invalid proof: " + why);
      v.kind = VerdictKind::Refuted;
      v.proof = std::move(p);
      return finish();
    }
    if (o.status == Status::Exhausted) {
      v.reason = o.reason;
      return finish();
    }
    const Branch& e = *o.open;
    bool complete = cfg.calculus == Calculus::EFO ||
                    (e.of_kind(FormulaKind::FunEq).empty() && e.of_kind(FormulaKind::Forall).empty());
    if (!complete) continue;
    try {
      Model m = extract_model(e, cfg.max_domain);
      if (!check_model(m, a)) throw std::logic_error("extracted model does not satisfy the input");
      v.kind = VerdictKind::Satisfiable;
      v.model = std::move(m);
      v.saturated = e;
    } catch (const DomainTooLarge&) {
      v.reason = "domain";
    } catch (const ExtractionFailure& ex) {
      if (cfg.calculus == Calculus::EFO) throw;
      v.reason = "extraction";
    } catch (const NotEvident& ex) {
      if (cfg.calculus == Calculus::EFO) throw std::logic_error(std::string("saturated branch is not evident: ") + ex.what());
      v.reason = "extraction";
    }
    return finish();
  }
  v.reason = "fuel";
  return finish();
}

Saturation saturate_efo(const Branch& a, const std::function<void(const Branch&, const RuleInstance&)>& on_instance) {
  require_quasi_efo(a);
  SearchConfig cfg;
  cfg.calculus = Calculus::EFO;
  cfg.max_nodes.reset();
  cfg.timeout.reset();
  cfg.on_instance = on_instance;
  SearchStats stats;
  Searcher s(cfg, Clock::now(), stats);
  Outcome o = s.explore(a, 0);
  Saturation out;
  if (o.status == Status::Closed)
    out.proof = Proof{a, std::move(o.node), Calculus::EFO, false};
  else
    out.saturated = std::move(o.open);
  return out;
}

// ---------------------------------------------------------------------------
// Proof checking

namespace {

std::string check_node(const Branch& a, const ProofNode& n, const RuleOptions& opts, std::size_t depth) {
  std::string why = explain_instance(a, n.instance, opts);
  if (!why.empty()) return "depth " + std::to_string(depth) + ": " + why;
  const auto& alts = n.instance.alternatives;
  if (n.children.size() != alts.size())
    return "depth " + std::to_string(depth) + ": " + std::to_string(alts.size()) + " alternatives but " +
           std::to_string(n.children.size()) + " subproofs";
  for (std::size_t i = 0; i < alts.size(); ++i) {
    why = check_node(a.add_all(alts[i]), n.children[i], opts, depth + 1);
    if (!why.empty()) return why;
  }
  return {};
}

}  // namespace

std::string explain_proof(const Proof& p) {
  RuleOptions opts{p.calculus, p.eager_close};
  if (p.calculus == Calculus::EFO)
    for (const Term& s : p.root.formulas())
      if (!is_quasi_efo(s)) return "root branch is not quasi-EFO";
  return check_node(p.root, p.tree, opts, 0);
}

bool check_proof(const Proof& p) { return explain_proof(p).empty(); }

// ---------------------------------------------------------------------------
// Evidence

const char* to_string(EvidenceCondition c) {
  switch (c) {
    case EvidenceCondition::DN: return "EDN";
    case EvidenceCondition::BQ: return "EBQ";
    case EvidenceCondition::BE: return "EBE";
    case EvidenceCondition::FQ: return "EFQ";
    case EvidenceCondition::FE: return "EFE";
    case EvidenceCondition::Mat: return "EMat";
    case EvidenceCondition::Dec: return "EDec";
    case EvidenceCondition::Con: return "ECon";
    case EvidenceCondition::Imp: return "EImp";
    case EvidenceCondition::ImpN: return "EImpN";
    case EvidenceCondition::All: return "EAll";
    case EvidenceCondition::AllD: return "EAllD";
    case EvidenceCondition::AllN: return "EAllN";
  }
  return "?";
}

namespace {

class EvidenceChecker {
 public:
  EvidenceChecker(const Branch& e, EvidenceScope scope, std::size_t fuel) : e_(e), scope_(scope), fuel_(fuel) {}

  EvidenceReport run() {
    for (std::size_t i = 0; i < e_.size(); ++i) check(i);
    rep_.evident = rep_.violations.empty();
    return std::move(rep_);
  }

 private:
  bool has(const Term& s) const { return e_.contains(s); }
  bool has_all(std::initializer_list<Term> fs) const {
    return std::all_of(fs.begin(), fs.end(), [&](const Term& s) { return has(s); });
  }

  void fail(EvidenceCondition c, std::vector<Term> fs, std::string detail = {}) {
    rep_.violations.push_back({c, std::move(fs), std::move(detail)});
  }

  // Free variables of type sigma, plus one variable not free in E.
  std::vector<Term> some_vars(const Type& sigma) const {
    std::vector<Term> out;
    for (const Name& n : e_.free_vars())
      if (n.type() == sigma) out.push_back(Term::name(n));
    out.push_back(Term::name(fresh_var(sigma, [&](std::string_view id) { return e_.uses_id(id); })));
    return out;
  }

  bool some_pair_separated(const std::vector<Term>& ls, const std::vector<Term>& rs) const {
    for (std::size_t i = 0; i < ls.size(); ++i)
      if (has(mk_neq(ls[i], rs[i]))) return true;
    return false;
  }

  void check(std::size_t i) {
    const Term& f = e_.formulas()[i];
    const FormulaShape& sh = e_.shape(i);
    switch (sh.kind) {
      case FormulaKind::DoubleNeg:
        if (!has(*sh.lhs)) fail(EvidenceCondition::DN, {f});
        break;
      case FormulaKind::BoolEq:
        if (!has_all({*sh.lhs, *sh.rhs}) && !has_all({mk_not(*sh.lhs), mk_not(*sh.rhs)})) fail(EvidenceCondition::BQ, {f});
        break;
      case FormulaKind::BoolDiseq:
        if (!has_all({*sh.lhs, mk_not(*sh.rhs)}) && !has_all({mk_not(*sh.lhs), *sh.rhs})) fail(EvidenceCondition::BE, {f});
        break;
      case FormulaKind::FunEq: {
        rep_.bounded = true;
        for (const Term& u : instantiation_terms(e_, sh.type->arg(), fuel_))
          if (!has(mk_eq(apply_norm(*sh.lhs, u), apply_norm(*sh.rhs, u)))) {
            fail(EvidenceCondition::FQ, {f}, "missing instance");
            break;
          }
        break;
      }
      case FormulaKind::FunDiseq: {
        bool ok = false;
        for (const Term& x : some_vars(sh.type->arg()))
          if (has(mk_neq(apply_norm(*sh.lhs, x), apply_norm(*sh.rhs, x)))) ok = true;
        if (!ok) fail(EvidenceCondition::FE, {f});
        break;
      }
      case FormulaKind::SortDiseq: {
        if (sh.decomposable) {
          Spine l = spine(*sh.lhs), r = spine(*sh.rhs);
          if (l.args.empty() || !some_pair_separated(l.args, r.args)) fail(EvidenceCondition::Dec, {f});
        }
        break;
      }
      case FormulaKind::PosAtom: {
        Spine l = spine(f);
        for (std::size_t j : e_.neg_atoms(l.head.head_name())) {
          Spine r = spine(*e_.shape(j).lhs);
          if (l.args.empty() || !some_pair_separated(l.args, r.args)) fail(EvidenceCondition::Mat, {f, e_.formulas()[j]});
        }
        break;
      }
      case FormulaKind::SortEq: {
        const Term &s = *sh.lhs, &t = *sh.rhs;
        for (std::size_t j : e_.sort_disequations(*sh.type)) {
          const FormulaShape& d = e_.shape(j);
          const Term &u = *d.lhs, &v = *d.rhs;
          if (!has_all({mk_neq(s, u), mk_neq(t, u)}) && !has_all({mk_neq(s, v), mk_neq(t, v)}))
            fail(EvidenceCondition::Con, {f, e_.formulas()[j]});
        }
        break;
      }
      case FormulaKind::Imp:
        if (!has(mk_not(*sh.lhs)) && !has(*sh.rhs)) fail(EvidenceCondition::Imp, {f});
        break;
      case FormulaKind::NegImp:
        if (!has_all({*sh.lhs, mk_not(*sh.rhs)})) fail(EvidenceCondition::ImpN, {f});
        break;
      case FormulaKind::Forall:
        forall(f, *sh.lhs, *sh.type);
        break;
      case FormulaKind::NegForall: {
        bool ok = false;
        for (const Term& x : some_vars(*sh.type))
          if (has(mk_not(apply_norm(*sh.lhs, x)))) ok = true;
        if (!ok) fail(EvidenceCondition::AllN, {f});
        break;
      }
      default:
        break;
    }
  }

  void forall(const Term& f, const Term& s, const Type& alpha) {
    if (scope_ == EvidenceScope::STTBounded) {
      rep_.bounded = true;
      for (const Term& u : instantiation_terms(e_, alpha, fuel_))
        if (!has(apply_norm(s, u))) {
          fail(EvidenceCondition::All, {f}, "missing instance");
          return;
        }
      return;
    }
    for (const Term& u : e_.discriminating(alpha))
      if (!has(apply_norm(s, u))) {
        fail(EvidenceCondition::All, {f, u}, "missing instance at a discriminating term");
        return;
      }
    // Some [s u] in E: u is a closed subterm of it, or s ignores u.
    bool some = has(apply_norm(s, some_vars(alpha).back()));
    if (!some)
      for (const Term& u : closed_subterms(e_, alpha))
        if (has(apply_norm(s, u))) {
          some = true;
          break;
        }
    if (!some) fail(EvidenceCondition::AllD, {f}, "no instance in the branch");
  }

  const Branch& e_;
  EvidenceScope scope_;
  std::size_t fuel_;
  EvidenceReport rep_;
};

}  // namespace

EvidenceReport is_evident(const Branch& e, EvidenceScope scope, std::size_t fuel) {
  return EvidenceChecker(e, scope, fuel).run();
}

}  // namespace hotab
