#include "hotab/branch.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <unordered_map>

#include "hotab/normalize.hpp"

namespace hotab {

const char* to_string(FormulaKind k) {
  switch (k) {
    case FormulaKind::DoubleNeg: return "DoubleNeg";
    case FormulaKind::BoolEq: return "BoolEq";
    case FormulaKind::BoolDiseq: return "BoolDiseq";
    case FormulaKind::FunEq: return "FunEq";
    case FormulaKind::FunDiseq: return "FunDiseq";
    case FormulaKind::SortEq: return "SortEq";
    case FormulaKind::SortDiseq: return "SortDiseq";
    case FormulaKind::PosAtom: return "PosAtom";
    case FormulaKind::NegAtom: return "NegAtom";
    case FormulaKind::Imp: return "Imp";
    case FormulaKind::NegImp: return "NegImp";
    case FormulaKind::Forall: return "Forall";
    case FormulaKind::NegForall: return "NegForall";
    case FormulaKind::Other: return "Other";
  }
  return "?";
}

namespace {

FormulaKind eq_kind(const Type& t, bool negated) {
  if (t.is_o()) return negated ? FormulaKind::BoolDiseq : FormulaKind::BoolEq;
  if (t.is_sort()) return negated ? FormulaKind::SortDiseq : FormulaKind::SortEq;
  return negated ? FormulaKind::FunDiseq : FormulaKind::FunEq;
}

// Classifies a formula that is not a negation.
FormulaShape classify_positive(const Term& s, const Spine& sp) {
  FormulaShape r;
  const Term& h = sp.head;
  if (!h.is_name()) return r;
  const Name& n = h.head_name();
  if (n.is_var()) {
    r.kind = FormulaKind::PosAtom;
    r.lhs = s;
    return r;
  }
  switch (n.op()) {
    case ConstOp::Eq:
      if (sp.args.size() == 2) {
        r.kind = eq_kind(n.param(), false);
        r.lhs = sp.args[0];
        r.rhs = sp.args[1];
        r.type = n.param();
      }
      break;
    case ConstOp::Imp:
      if (sp.args.size() == 2) {
        r.kind = FormulaKind::Imp;
        r.lhs = sp.args[0];
        r.rhs = sp.args[1];
      }
      break;
    case ConstOp::Forall:
      if (sp.args.size() == 1) {
        r.kind = FormulaKind::Forall;
        r.lhs = sp.args[0];
        r.type = n.param();
      }
      break;
    default:
      break;
  }
  return r;
}

}  // namespace

FormulaShape classify(const Term& s) {
  Spine sp = spine(s);
  if (!sp.head.is_const(ConstOp::Not) || sp.args.size() != 1) return classify_positive(s, sp);

  const Term& inner = sp.args[0];
  Spine isp = spine(inner);
  FormulaShape r;
  if (isp.head.is_const(ConstOp::Not) && isp.args.size() == 1) {
    r.kind = FormulaKind::DoubleNeg;
    r.lhs = isp.args[0];
    return r;
  }
  FormulaShape pos = classify_positive(inner, isp);
  switch (pos.kind) {
    case FormulaKind::BoolEq:
    case FormulaKind::FunEq:
    case FormulaKind::SortEq:
      r = pos;
      r.kind = eq_kind(*pos.type, true);
      if (r.kind == FormulaKind::SortDiseq) {
        const Term& lh = spine_head(*r.lhs);
        const Term& rh = spine_head(*r.rhs);
        r.decomposable = lh.is_var() && rh.is_var() && lh.head_name() == rh.head_name();
      }
      return r;
    case FormulaKind::PosAtom:
      r.kind = FormulaKind::NegAtom;
      r.lhs = inner;
      return r;
    case FormulaKind::Imp:
      r = pos;
      r.kind = FormulaKind::NegImp;
      return r;
    case FormulaKind::Forall:
      r = pos;
      r.kind = FormulaKind::NegForall;
      return r;
    default:
      return r;
  }
}

bool Discriminant::contains(const Term& t) const {
  return std::find(members.begin(), members.end(), t) != members.end();
}

// ---------------------------------------------------------------------------

constexpr std::size_t kKinds = static_cast<std::size_t>(FormulaKind::Other) + 1;

struct Branch::Data {
  std::vector<Term> items;
  std::vector<FormulaShape> shapes;
  std::unordered_map<Term, std::size_t> index;
  std::vector<Name> fvs;
  NameHashSet fv_set;
  std::unordered_set<std::string> ids;
  std::array<std::vector<std::size_t>, kKinds> by_kind;
  std::unordered_map<Type, std::vector<std::size_t>> sort_eqs, sort_diseqs;
  std::vector<Type> diseq_sorts;
  std::unordered_map<Name, std::vector<std::size_t>> pos, neg;
  std::unordered_map<Type, std::vector<Term>> discr;
  TermHashSet discr_set;
  bool closed = false;

  void insert(const Term& s);
};

struct Branch::Memo {
  std::mutex mutex;
  std::unordered_map<Type, std::vector<Discriminant>> discs;
};

namespace {

const std::vector<Term>& empty_terms() {
  static const std::vector<Term> v;
  return v;
}

bool is_var_of(const Term& t, bool want_o) {
  return t.is_var() && (want_o ? t.type().is_o() : t.type().is_sort());
}

}  // namespace

void Branch::Data::insert(const Term& s) {
  if (!s.type().is_o()) throw TypeError("branch members must be formulas, got type " + s.type().str());
  if (!s.is_closed()) throw TypeError("branch members must not contain loose bound indices");
  if (!is_normal(s)) throw TypeError("branch members must be normal");
  std::size_t i = items.size();
  items.push_back(s);
  index.emplace(s, i);
  FormulaShape sh = classify(s);
  by_kind[static_cast<std::size_t>(sh.kind)].push_back(i);

  std::size_t before = fvs.size();
  collect_free_vars(s, fvs, fv_set);
  for (std::size_t k = before; k < fvs.size(); ++k) ids.insert(fvs[k].id());

  switch (sh.kind) {
    case FormulaKind::SortEq:
      sort_eqs[*sh.type].push_back(i);
      break;
    case FormulaKind::SortDiseq: {
      auto& v = sort_diseqs[*sh.type];
      if (v.empty()) diseq_sorts.push_back(*sh.type);
      v.push_back(i);
      auto& d = discr[*sh.type];
      for (const Term* side : {&*sh.lhs, &*sh.rhs})
        if (discr_set.insert(*side).second) d.push_back(*side);
      if (*sh.lhs == *sh.rhs && is_var_of(*sh.lhs, false)) closed = true;
      break;
    }
    case FormulaKind::PosAtom: {
      const Term& h = spine_head(s);
      pos[h.head_name()].push_back(i);
      if (s.is_var() && index.count(mk_not(s))) closed = true;
      break;
    }
    case FormulaKind::NegAtom: {
      const Term& atom = *sh.lhs;
      neg[spine_head(atom).head_name()].push_back(i);
      if (atom.is_var() && index.count(atom)) closed = true;
      break;
    }
    default:
      break;
  }
  shapes.push_back(std::move(sh));
}

Branch::Branch() : data_(std::make_shared<Data>()), memo_(std::make_shared<Memo>()) {}

Branch::Branch(std::span<const Term> formulas) : Branch() {
  auto d = std::make_shared<Data>();
  for (const Term& s : formulas)
    if (!d->index.count(s)) d->insert(s);
  data_ = std::move(d);
}

Branch Branch::add(const Term& s) const {
  if (contains(s)) return *this;
  auto d = std::make_shared<Data>(*data_);
  d->insert(s);
  Branch b;
  b.data_ = std::move(d);
  return b;
}

Branch Branch::add_all(std::span<const Term> fs) const {
  bool fresh = false;
  for (const Term& s : fs)
    if (!contains(s)) fresh = true;
  if (!fresh) return *this;
  auto d = std::make_shared<Data>(*data_);
  for (const Term& s : fs)
    if (!d->index.count(s)) d->insert(s);
  Branch b;
  b.data_ = std::move(d);
  return b;
}

bool Branch::contains(const Term& s) const { return data_->index.count(s) > 0; }

std::optional<std::size_t> Branch::position(const Term& s) const {
  auto it = data_->index.find(s);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::span<const Term> Branch::formulas() const { return data_->items; }
const FormulaShape& Branch::shape(std::size_t i) const { return data_->shapes.at(i); }
std::size_t Branch::size() const { return data_->items.size(); }
const std::vector<Name>& Branch::free_vars() const { return data_->fvs; }
bool Branch::has_free(const Name& x) const { return data_->fv_set.count(x) > 0; }
bool Branch::uses_id(std::string_view id) const { return data_->ids.count(std::string(id)) > 0; }

std::span<const std::size_t> Branch::of_kind(FormulaKind k) const {
  return data_->by_kind[static_cast<std::size_t>(k)];
}

namespace {

template <class Map, class Key>
std::span<const std::size_t> lookup(const Map& m, const Key& k) {
  auto it = m.find(k);
  if (it == m.end()) return {};
  return it->second;
}

}  // namespace

std::span<const std::size_t> Branch::sort_equations(const Type& alpha) const { return lookup(data_->sort_eqs, alpha); }
std::span<const std::size_t> Branch::sort_disequations(const Type& alpha) const {
  return lookup(data_->sort_diseqs, alpha);
}
std::span<const std::size_t> Branch::pos_atoms(const Name& x) const { return lookup(data_->pos, x); }
std::span<const std::size_t> Branch::neg_atoms(const Name& x) const { return lookup(data_->neg, x); }
std::vector<Type> Branch::diseq_sorts() const { return data_->diseq_sorts; }

const std::vector<Term>& Branch::discriminating(const Type& alpha) const {
  auto it = data_->discr.find(alpha);
  return it == data_->discr.end() ? empty_terms() : it->second;
}

bool Branch::is_discriminating(const Term& t) const { return data_->discr_set.count(t) > 0; }

bool Branch::closed() const { return data_->closed; }

namespace {

// Bron-Kerbosch with pivoting on the compatibility graph (the complement of
// the conflict graph); maximal cliques there are the discriminants.
class CliqueEnumerator {
 public:
  explicit CliqueEnumerator(std::vector<std::vector<char>> compat) : compat_(std::move(compat)) {}

  std::vector<std::vector<std::size_t>> run(const std::vector<std::size_t>& vertices) {
    std::vector<std::size_t> r;
    recurse(r, vertices, {});
    return std::move(out_);
  }

 private:
  void recurse(std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
    if (p.empty() && x.empty()) {
      std::vector<std::size_t> c = r;
      std::sort(c.begin(), c.end());
      out_.push_back(std::move(c));
      return;
    }
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have = false;
    for (const auto* set : {&p, &x}) {
      for (std::size_t u : *set) {
        std::size_t cnt = 0;
        for (std::size_t v : p) cnt += compat_[u][v];
        if (!have || cnt > best) {
          pivot = u;
          best = cnt;
          have = true;
        }
      }
    }
    std::vector<std::size_t> candidates;
    for (std::size_t v : p)
      if (!compat_[pivot][v]) candidates.push_back(v);
    for (std::size_t v : candidates) {
      std::vector<std::size_t> np, nx;
      for (std::size_t w : p)
        if (compat_[v][w]) np.push_back(w);
      for (std::size_t w : x)
        if (compat_[v][w]) nx.push_back(w);
      r.push_back(v);
      recurse(r, std::move(np), std::move(nx));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  std::vector<std::vector<char>> compat_;
  std::vector<std::vector<std::size_t>> out_;
};

std::vector<Discriminant> compute_discriminants(const Branch& a, const Type& alpha) {
  const std::vector<Term>& terms = a.discriminating(alpha);
  const std::size_t n = terms.size();
  if (n == 0) return {Discriminant{}};

  std::unordered_map<Term, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos.emplace(terms[i], i);
  std::vector<std::vector<char>> compat(n, std::vector<char>(n, 1));
  std::vector<char> self_conflict(n, 0);
  for (std::size_t i = 0; i < n; ++i) compat[i][i] = 0;
  for (std::size_t idx : a.sort_disequations(alpha)) {
    const FormulaShape& sh = a.shape(idx);
    std::size_t u = pos.at(*sh.lhs), v = pos.at(*sh.rhs);
    if (u == v) {
      self_conflict[u] = 1;
    } else {
      compat[u][v] = compat[v][u] = 0;
    }
  }
  std::vector<std::size_t> vertices;
  for (std::size_t i = 0; i < n; ++i)
    if (!self_conflict[i]) vertices.push_back(i);

  auto cliques = CliqueEnumerator(std::move(compat)).run(vertices);
  std::sort(cliques.begin(), cliques.end());
  std::vector<Discriminant> out;
  out.reserve(cliques.size());
  for (const auto& c : cliques) {
    Discriminant d;
    for (std::size_t i : c) d.members.push_back(terms[i]);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

const std::vector<Discriminant>& Branch::discriminants(const Type& alpha) const {
  std::lock_guard<std::mutex> lock(memo_->mutex);
  auto it = memo_->discs.find(alpha);
  if (it != memo_->discs.end()) return it->second;
  return memo_->discs.emplace(alpha, compute_discriminants(*this, alpha)).first->second;
}

bool is_closed(const Branch& a) { return a.closed(); }

std::vector<Term> discriminating_terms(const Branch& a, const Type& alpha) { return a.discriminating(alpha); }

std::vector<Discriminant> discriminants(const Branch& a, const Type& alpha) { return a.discriminants(alpha); }

bool separated(const Branch& a, const Term& s, const Term& t) {
  return a.contains(mk_neq(s, t)) || a.contains(mk_neq(t, s));
}

}  // namespace hotab
