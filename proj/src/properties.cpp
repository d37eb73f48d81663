#include "qbaf/properties.hpp"

#include "qbaf/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <thread>

namespace qbaf {

const char* to_string(PropertyId p) {
  switch (p) {
    case PropertyId::Anonymity: return "Anonymity";
    case PropertyId::Independence: return "Independence";
    case PropertyId::Directionality: return "Directionality";
    case PropertyId::Equivalence: return "Equivalence";
    case PropertyId::Stability: return "Stability";
    case PropertyId::Neutrality: return "Neutrality";
    case PropertyId::Monotony: return "Monotony";
    case PropertyId::Reinforcement: return "Reinforcement";
    case PropertyId::Resilience: return "Resilience";
    case PropertyId::Franklin: return "Franklin";
    case PropertyId::Weakening: return "Weakening";
    case PropertyId::Strengthening: return "Strengthening";
    case PropertyId::Duality: return "Duality";
    case PropertyId::AlmostOpenMindedness: return "AlmostOpenMindedness";
  }
  return "?";
}

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return "Holds";
    case VerdictStatus::Violated: return "Violated";
    case VerdictStatus::VacuouslyHolds: return "VacuouslyHolds";
  }
  return "?";
}

const char* to_string(Semantics s) { return s == Semantics::Discrete ? "discrete" : "continuous"; }

SolveReport<double> solve(const Qbaf& q, Semantics semantics, const PropertyConfig& cfg) {
  return semantics == Semantics::Discrete ? iterate(q, cfg.iteration) : integrate(q, cfg.integration);
}

PlusSets plus_sets(const Qbaf& q, const Vector<double>& sigma, ArgumentId a, double threshold) {
  PlusSets p;
  for (const auto& [b, w] : q.in_edges(a)) {
    if (!(sigma[b] > threshold)) continue;
    (w < 0 ? p.att_plus : p.sup_plus).push_back(b);
  }
  return p;
}

bool injection_feasible(std::vector<double> sup, std::vector<double> att, double slack) {
  if (sup.size() > att.size()) return false;
  std::sort(sup.begin(), sup.end(), std::greater<>());
  std::sort(att.begin(), att.end(), std::greater<>());
  for (std::size_t i = 0; i < sup.size(); ++i)
    if (sup[i] > att[i] + slack) return false;
  return true;
}

bool has_unit_weights(const Qbaf& q) {
  return std::all_of(q.edges().begin(), q.edges().end(), [](const auto& e) { return e.weight == 1.0 || e.weight == -1.0; });
}

namespace {

std::string fresh_label(const Qbaf& q, const std::set<std::string>& taken, const std::string& stem) {
  std::string label = stem;
  while (q.find(label) || taken.count(label)) label = "_" + label;
  return label;
}

}  // namespace

Qbaf open_mindedness_companion(const Qbaf& q, ArgumentId target, Index k, int p) {
  if (!q.contains(target)) throw Error(ErrorKind::UnknownArgument, "no argument with id " + std::to_string(target));
  if (k < 0) throw Error(ErrorKind::InvalidConfig, "k must be non-negative");
  if (p != -1 && p != 1) throw Error(ErrorKind::InvalidConfig, "p must be -1 or +1");
  auto d = q.draft();
  std::set<std::string> taken;
  for (Index i = 1; i <= k; ++i) {
    auto label = fresh_label(q, taken, "A" + std::to_string(i));
    taken.insert(label);
    const auto id = d.add_argument(1.0, label);
    d.add_edge(id, target, static_cast<double>(p));
  }
  return Qbaf(std::move(d));
}

namespace {

std::string num(double v) { return format_double(v); }

class Tally {
 public:
  explicit Tally(PropertyId id) : id_(id) {}

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++witnesses_;
    if (!ok && !counterexample_) counterexample_ = describe();
  }
  void fail(std::string what) {
    ++witnesses_;
    if (!counterexample_) counterexample_ = std::move(what);
  }

  PropertyVerdict verdict() const {
    PropertyVerdict v{id_, VerdictStatus::VacuouslyHolds, 0, std::nullopt};
    v.witnesses_checked = witnesses_;
    v.counterexample = counterexample_;
    v.status = counterexample_ ? VerdictStatus::Violated
               : witnesses_ == 0 ? VerdictStatus::VacuouslyHolds
                                 : VerdictStatus::Holds;
    return v;
  }

 private:
  PropertyId id_;
  Index witnesses_ = 0;
  std::optional<std::string> counterexample_;
};

struct Context {
  const Qbaf& q;
  const Vector<double>& s;
  const PropertyConfig& cfg;
  std::vector<std::vector<ArgumentId>> att, sup;  // sorted by id

  Context(const Qbaf& q_, const Vector<double>& s_, const PropertyConfig& c) : q(q_), s(s_), cfg(c) {
    att.resize(q.size());
    sup.resize(q.size());
    for (const auto& e : q.edges()) (e.weight < 0 ? att : sup)[e.target].push_back(e.source);
    for (auto& v : att) std::sort(v.begin(), v.end());
    for (auto& v : sup) std::sort(v.begin(), v.end());
  }

  Index n() const { return q.size(); }
  double beta(ArgumentId a) const { return q.base_score(a); }
  const std::string& name(ArgumentId a) const { return q.label(a); }

  std::vector<double> strengths(const std::vector<ArgumentId>& ids) const {
    std::vector<double> out;
    out.reserve(ids.size());
    for (auto id : ids) out.push_back(s[id]);
    return out;
  }

  // Some bijection maps each strength onto an equal one (within match_tolerance).
  bool same_multiset(const std::vector<ArgumentId>& x, const std::vector<ArgumentId>& y) const {
    if (x.size() != y.size()) return false;
    auto u = strengths(x), v = strengths(y);
    std::sort(u.begin(), u.end());
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < u.size(); ++i)
      if (std::abs(u[i] - v[i]) > cfg.match_tolerance) return false;
    return true;
  }

  std::string pair(ArgumentId a, ArgumentId b) const {
    return "a=" + name(a) + " b=" + name(b) + ": sigma(a)=" + num(s[a]) + ", sigma(b)=" + num(s[b]);
  }

  std::mt19937_64 rng(PropertyId p) const { return std::mt19937_64(derive_seed(cfg.seed, static_cast<std::uint64_t>(p))); }

  SolveReport<double> resolve(const Qbaf& other) const { return solve(other, cfg.semantics, cfg); }
};

bool subset(const std::vector<ArgumentId>& x, const std::vector<ArgumentId>& y) {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

std::vector<ArgumentId> minus(const std::vector<ArgumentId>& x, const std::vector<ArgumentId>& y) {
  std::vector<ArgumentId> out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

PropertyVerdict anonymity(const Context& c) {
  Tally t(PropertyId::Anonymity);
  if (c.n() == 0) return t.verdict();
  auto rng = c.rng(PropertyId::Anonymity);
  std::vector<ArgumentId> perm(c.n());
  std::iota(perm.begin(), perm.end(), ArgumentId(0));
  std::shuffle(perm.begin(), perm.end(), rng);

  QbafDraft<double> d;
  d.labels.resize(c.n());
  d.base_scores.resize(c.n());
  for (ArgumentId a = 0; a < c.n(); ++a) {
    d.labels[perm[a]] = c.q.label(a);
    d.base_scores[perm[a]] = c.beta(a);
  }
  for (const auto& e : c.q.edges()) d.add_edge(perm[e.source], perm[e.target], e.weight);
  const auto r = c.resolve(Qbaf(std::move(d)));
  if (!r.converged()) {
    t.fail(std::string("relabelled copy did not converge: ") + to_string(r.status));
    return t.verdict();
  }
  const auto& s2 = r.interpretation.values();
  for (ArgumentId a = 0; a < c.n(); ++a)
    t.expect(std::abs(s2[perm[a]] - c.s[a]) <= c.cfg.eq_tolerance, [&] {
      return "a=" + c.name(a) + ": sigma(a)=" + num(c.s[a]) + ", relabelled copy gives " + num(s2[perm[a]]);
    });
  return t.verdict();
}

PropertyVerdict independence(const Context& c) {
  Tally t(PropertyId::Independence);
  auto rng = c.rng(PropertyId::Independence);
  RandomQbafParams p;
  p.n_args = std::uniform_int_distribution<Index>(1, 4)(rng);
  p.edge_density = 0.5;
  p.acyclic = true;
  p.base_grid = 0.25;
  p.seed = rng();
  const Qbaf other = random_qbaf(p);
  const auto other_sigma = solve_acyclic(other).values();

  auto d = c.q.draft();
  std::set<std::string> taken;
  for (ArgumentId a = 0; a < other.size(); ++a) {
    auto label = fresh_label(c.q, taken, "ind" + other.label(a));
    taken.insert(label);
    d.add_argument(other.base_score(a), label);
  }
  for (const auto& e : other.edges()) d.add_edge(e.source + c.n(), e.target + c.n(), e.weight);
  const auto r = c.resolve(Qbaf(std::move(d)));
  if (!r.converged()) {
    t.fail(std::string("disjoint union did not converge: ") + to_string(r.status));
    return t.verdict();
  }
  const auto& s2 = r.interpretation.values();
  for (ArgumentId a = 0; a < c.n(); ++a)
    t.expect(std::abs(s2[a] - c.s[a]) <= c.cfg.eq_tolerance, [&] {
      return "a=" + c.name(a) + ": sigma(a)=" + num(c.s[a]) + ", in disjoint union " + num(s2[a]);
    });
  for (ArgumentId a = 0; a < other.size(); ++a)
    t.expect(std::abs(s2[a + c.n()] - other_sigma[a]) <= c.cfg.eq_tolerance, [&] {
      return "added argument " + other.label(a) + ": alone " + num(other_sigma[a]) + ", in disjoint union " +
             num(s2[a + c.n()]);
    });
  return t.verdict();
}

PropertyVerdict directionality(const Context& c) {
  Tally t(PropertyId::Directionality);
  std::vector<std::size_t> picks(c.q.edges().size());
  std::iota(picks.begin(), picks.end(), std::size_t(0));
  if (static_cast<Index>(picks.size()) > c.cfg.max_companions) {
    auto rng = c.rng(PropertyId::Directionality);
    std::shuffle(picks.begin(), picks.end(), rng);
    picks.resize(c.cfg.max_companions);
    std::sort(picks.begin(), picks.end());
  }

  std::vector<std::vector<ArgumentId>> children(c.n());
  for (const auto& e : c.q.edges()) children[e.source].push_back(e.target);

  for (auto i : picks) {
    const auto removed = c.q.edges()[i];
    auto d = c.q.draft();
    d.edges.erase(d.edges.begin() + static_cast<std::ptrdiff_t>(i));
    const auto r = c.resolve(Qbaf(std::move(d)));
    if (!r.converged()) continue;
    const auto& s2 = r.interpretation.values();

    std::vector<bool> reach(c.n(), false);
    std::queue<ArgumentId> todo;
    reach[removed.target] = true;
    todo.push(removed.target);
    while (!todo.empty()) {
      const auto x = todo.front();
      todo.pop();
      for (auto y : children[x])
        if (!reach[y]) reach[y] = true, todo.push(y);
    }
    for (ArgumentId x = 0; x < c.n(); ++x) {
      if (reach[x]) continue;
      t.expect(std::abs(s2[x] - c.s[x]) <= c.cfg.eq_tolerance, [&] {
        return "removing " + c.name(removed.source) + "->" + c.name(removed.target) + " moved " + c.name(x) + " from " +
               num(c.s[x]) + " to " + num(s2[x]);
      });
    }
  }
  return t.verdict();
}

PropertyVerdict equivalence(const Context& c) {
  Tally t(PropertyId::Equivalence);
  for (ArgumentId a = 0; a < c.n(); ++a)
    for (ArgumentId b = a + 1; b < c.n(); ++b) {
      if (c.beta(a) != c.beta(b)) continue;
      if (!c.same_multiset(c.att[a], c.att[b]) || !c.same_multiset(c.sup[a], c.sup[b])) continue;
      t.expect(std::abs(c.s[a] - c.s[b]) <= c.cfg.eq_tolerance, [&] { return c.pair(a, b) + ", expected equal"; });
    }
  return t.verdict();
}

PropertyVerdict stability(const Context& c) {
  Tally t(PropertyId::Stability);
  for (ArgumentId a = 0; a < c.n(); ++a) {
    if (!c.att[a].empty() || !c.sup[a].empty()) continue;
    t.expect(std::abs(c.s[a] - c.beta(a)) <= c.cfg.eq_tolerance, [&] {
      return "a=" + c.name(a) + " has no parents: sigma(a)=" + num(c.s[a]) + ", beta(a)=" + num(c.beta(a));
    });
  }
  return t.verdict();
}

// b has exactly the parents of a plus one extra parent d with sigma(d) = 0.
PropertyVerdict neutrality(const Context& c) {
  Tally t(PropertyId::Neutrality);
  for (ArgumentId a = 0; a < c.n(); ++a)
    for (ArgumentId b = 0; b < c.n(); ++b) {
      if (a == b || c.beta(a) != c.beta(b)) continue;
      if (!subset(c.att[a], c.att[b]) || !subset(c.sup[a], c.sup[b])) continue;
      auto extra = minus(c.att[b], c.att[a]);
      const auto extra_sup = minus(c.sup[b], c.sup[a]);
      extra.insert(extra.end(), extra_sup.begin(), extra_sup.end());
      if (extra.size() != 1 || c.s[extra[0]] > c.cfg.match_tolerance) continue;
      t.expect(std::abs(c.s[a] - c.s[b]) <= c.cfg.eq_tolerance,
               [&] { return c.pair(a, b) + ", extra parent " + c.name(extra[0]) + " has strength 0, expected equal"; });
    }
  return t.verdict();
}

bool strictly_inside(double x) { return x > 0.0 && x < 1.0; }

PropertyVerdict monotony(const Context& c) {
  Tally t(PropertyId::Monotony);
  const double eq = c.cfg.eq_tolerance;
  for (ArgumentId a = 0; a < c.n(); ++a)
    for (ArgumentId b = 0; b < c.n(); ++b) {
      if (a == b || c.beta(a) != c.beta(b) || !strictly_inside(c.beta(a))) continue;
      if (!subset(c.att[a], c.att[b]) || !subset(c.sup[b], c.sup[a])) continue;
      t.expect(c.s[a] >= c.s[b] - eq, [&] { return c.pair(a, b) + ", expected sigma(a) >= sigma(b)"; });

      const auto pa = plus_sets(c.q, c.s, a, eq), pb = plus_sets(c.q, c.s, b, eq);
      const bool more_att = pb.att_plus.size() > pa.att_plus.size();
      const bool fewer_sup = pa.sup_plus.size() > pb.sup_plus.size();
      if ((c.s[a] > 0 || c.s[b] < 1) && (more_att || fewer_sup))
        t.expect(c.s[a] > c.s[b], [&] { return c.pair(a, b) + ", expected sigma(a) > sigma(b) (strict)"; });
    }
  return t.verdict();
}

// Att(a) \ {x} = Att(b) \ {y}: either the sets agree or they differ by
// exactly one element on each side.
std::optional<std::pair<std::optional<ArgumentId>, std::optional<ArgumentId>>> swap_pair(
    const std::vector<ArgumentId>& xa, const std::vector<ArgumentId>& xb) {
  const auto only_a = minus(xa, xb), only_b = minus(xb, xa);
  if (only_a.empty() && only_b.empty()) return std::pair<std::optional<ArgumentId>, std::optional<ArgumentId>>{};
  if (only_a.size() == 1 && only_b.size() == 1)
    return std::pair<std::optional<ArgumentId>, std::optional<ArgumentId>>{only_a[0], only_b[0]};
  return std::nullopt;
}

PropertyVerdict reinforcement(const Context& c) {
  Tally t(PropertyId::Reinforcement);
  const double eq = c.cfg.eq_tolerance, m = c.cfg.match_tolerance;
  for (ArgumentId a = 0; a < c.n(); ++a)
    for (ArgumentId b = 0; b < c.n(); ++b) {
      if (a == b || c.beta(a) != c.beta(b) || !strictly_inside(c.beta(a))) continue;
      const auto att = swap_pair(c.att[a], c.att[b]);
      const auto sup = swap_pair(c.sup[a], c.sup[b]);
      if (!att || !sup) continue;
      const auto [x, y] = *att;
      const auto [xs, ys] = *sup;
      if (x && c.s[*x] > c.s[*y] + m) continue;
      if (xs && c.s[*xs] < c.s[*ys] - m) continue;
      t.expect(c.s[a] >= c.s[b] - eq, [&] { return c.pair(a, b) + ", expected sigma(a) >= sigma(b)"; });

      const bool weaker_att = x && c.s[*x] < c.s[*y] - eq;
      const bool stronger_sup = xs && c.s[*xs] > c.s[*ys] + eq;
      if ((c.s[a] > 0 || c.s[b] < 1) && (weaker_att || stronger_sup))
        t.expect(c.s[a] > c.s[b], [&] { return c.pair(a, b) + ", expected sigma(a) > sigma(b) (strict)"; });
    }
  return t.verdict();
}

PropertyVerdict resilience(const Context& c) {
  Tally t(PropertyId::Resilience);
  for (ArgumentId a = 0; a < c.n(); ++a) {
    if (!strictly_inside(c.beta(a))) continue;
    t.expect(strictly_inside(c.s[a]), [&] {
      return "a=" + c.name(a) + ": beta(a)=" + num(c.beta(a)) + " but sigma(a)=" + num(c.s[a]);
    });
  }
  return t.verdict();
}

PropertyVerdict franklin(const Context& c) {
  Tally t(PropertyId::Franklin);
  for (ArgumentId a = 0; a < c.n(); ++a)
    for (ArgumentId b = 0; b < c.n(); ++b) {
      if (a == b || c.beta(a) != c.beta(b)) continue;
      if (!subset(c.att[b], c.att[a]) || !subset(c.sup[b], c.sup[a])) continue;
      const auto x = minus(c.att[a], c.att[b]), y = minus(c.sup[a], c.sup[b]);
      if (x.size() != 1 || y.size() != 1) continue;
      if (std::abs(c.s[x[0]] - c.s[y[0]]) > c.cfg.match_tolerance) continue;
      t.expect(std::abs(c.s[a] - c.s[b]) <= c.cfg.eq_tolerance, [&] {
        return c.pair(a, b) + ", attacker " + c.name(x[0]) + " and supporter " + c.name(y[0]) +
               " should cancel, expected equal";
      });
    }
  return t.verdict();
}

// Weakening (sign = -1) and Strengthening (sign = +1): the "losing" side is
// injected into the "winning" side with strict dominance somewhere.
PropertyVerdict domination(const Context& c, int sign) {
  const auto id = sign < 0 ? PropertyId::Weakening : PropertyId::Strengthening;
  Tally t(id);
  const double eq = c.cfg.eq_tolerance, m = c.cfg.match_tolerance;
  for (ArgumentId a = 0; a < c.n(); ++a) {
    if (sign < 0 ? !(c.beta(a) > 0) : !(c.beta(a) < 1)) continue;
    if (c.cfg.skip_extreme_targets && !strictly_inside(c.beta(a))) continue;
    auto lose = c.strengths(sign < 0 ? c.sup[a] : c.att[a]);
    auto win = c.strengths(sign < 0 ? c.att[a] : c.sup[a]);
    if (!injection_feasible(lose, win, m)) continue;
    std::sort(lose.begin(), lose.end(), std::greater<>());
    std::sort(win.begin(), win.end(), std::greater<>());
    bool strict = false;
    for (std::size_t i = 0; i < win.size() && !strict; ++i)
      strict = i < lose.size() ? win[i] > lose[i] + eq : win[i] > eq;
    if (!strict) continue;
    t.expect(sign < 0 ? c.s[a] < c.beta(a) : c.s[a] > c.beta(a), [&] {
      return "a=" + c.name(a) + ": sigma(a)=" + num(c.s[a]) + ", beta(a)=" + num(c.beta(a)) + ", expected sigma(a) " +
             (sign < 0 ? "<" : ">") + " beta(a)";
    });
  }
  return t.verdict();
}

PropertyVerdict duality(const Context& c) {
  Tally t(PropertyId::Duality);
  for (ArgumentId a = 0; a < c.n(); ++a)
    for (ArgumentId b = 0; b < c.n(); ++b) {
      if (a == b || c.beta(a) < 0.5 || std::abs(c.beta(a) + c.beta(b) - 1.0) > 1e-12) continue;
      if (!c.same_multiset(c.att[a], c.sup[b]) || !c.same_multiset(c.sup[a], c.att[b])) continue;
      const double gap = (c.s[a] - c.beta(a)) - (c.beta(b) - c.s[b]);
      t.expect(std::abs(gap) <= c.cfg.eq_tolerance,
               [&] { return c.pair(a, b) + ", expected sigma(a) - beta(a) = beta(b) - sigma(b), off by " + num(gap); });
    }
  return t.verdict();
}

double logit(double p) { return std::log(p / (1.0 - p)); }

PropertyVerdict open_mindedness(const Context& c) {
  Tally t(PropertyId::AlmostOpenMindedness);
  std::vector<ArgumentId> targets;
  for (ArgumentId a = 0; a < c.n(); ++a)
    if (strictly_inside(c.beta(a))) targets.push_back(a);
  if (static_cast<Index>(targets.size()) > c.cfg.open_mind_targets) {
    auto rng = c.rng(PropertyId::AlmostOpenMindedness);
    std::shuffle(targets.begin(), targets.end(), rng);
    targets.resize(c.cfg.open_mind_targets);
    std::sort(targets.begin(), targets.end());
  }

  const double eps = c.cfg.open_mind_epsilon;
  for (auto a : targets) {
    for (int p : {-1, 1}) {
      std::optional<double> prev;
      bool skipped = false;
      std::string broken;
      for (Index k = 1; k <= c.cfg.open_mind_k_max; ++k) {
        const auto r = c.resolve(open_mindedness_companion(c.q, a, k, p));
        if (!r.converged()) {
          skipped = true;
          break;
        }
        const double v = r.interpretation.values()[a];
        if (prev && broken.empty() && !(p < 0 ? v < *prev : v > *prev))
          broken = "a=" + c.name(a) + ": sigma^{k,p}(a) not strictly " + (p < 0 ? "decreasing" : "increasing") +
                   " at k=" + std::to_string(k) + " (" + num(*prev) + " then " + num(v) + ")";
        prev = v;
      }
      if (!skipped) t.expect(broken.empty(), [&] { return broken; });

      // Each original parent contributes at most 1 in absolute value, so the
      // aggregate of a is pushed past the eps threshold once k exceeds this.
      const double parents = static_cast<double>(p < 0 ? c.sup[a].size() : c.att[a].size());
      const double need = p < 0 ? logit(c.beta(a)) + parents - logit(eps) : logit(1 - eps) - logit(c.beta(a)) + parents;
      const Index k = std::max<Index>(1, static_cast<Index>(std::floor(need)) + 1);
      const auto r = c.resolve(open_mindedness_companion(c.q, a, k, p));
      if (!r.converged()) continue;
      const double v = r.interpretation.values()[a];
      t.expect(p < 0 ? v < eps : v > 1 - eps, [&] {
        return "a=" + c.name(a) + ": with k=" + std::to_string(k) + (p < 0 ? " attackers" : " supporters") +
               " sigma(a)=" + num(v) + ", expected " + (p < 0 ? "< " + num(eps) : "> " + num(1 - eps));
      });
    }
  }
  return t.verdict();
}

}  // namespace

PropertyVerdict check_property(PropertyId prop, const Qbaf& q, const Interpretation<double>& sigma,
                               const PropertyConfig& cfg) {
  if (!has_unit_weights(q)) throw Error(ErrorKind::NonUnitWeights, "property checks need every weight to be -1 or +1");
  if (sigma.size() != q.size()) throw Error(ErrorKind::PartialInterpretation, "interpretation size does not match");
  const Context c(q, sigma.values(), cfg);
  switch (prop) {
    case PropertyId::Anonymity: return anonymity(c);
    case PropertyId::Independence: return independence(c);
    case PropertyId::Directionality: return directionality(c);
    case PropertyId::Equivalence: return equivalence(c);
    case PropertyId::Stability: return stability(c);
    case PropertyId::Neutrality: return neutrality(c);
    case PropertyId::Monotony: return monotony(c);
    case PropertyId::Reinforcement: return reinforcement(c);
    case PropertyId::Resilience: return resilience(c);
    case PropertyId::Franklin: return franklin(c);
    case PropertyId::Weakening: return domination(c, -1);
    case PropertyId::Strengthening: return domination(c, 1);
    case PropertyId::Duality: return duality(c);
    case PropertyId::AlmostOpenMindedness: return open_mindedness(c);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown property");
}

std::vector<PropertyVerdict> check_all(const Qbaf& q, const Interpretation<double>& sigma, const PropertyConfig& cfg) {
  std::vector<PropertyVerdict> out;
  for (auto p : all_properties) out.push_back(check_property(p, q, sigma, cfg));
  return out;
}

Index SuiteSummary::total_violations() const {
  Index n = 0;
  for (const auto& t : tally) n += t.violated;
  return n;
}

Qbaf suite_instance(const SuiteParams& params, Index i) {
  const auto seed = derive_seed(params.seed, static_cast<std::uint64_t>(i));
  std::mt19937_64 rng(seed);
  static constexpr double grids[] = {0.1, 0.25, 0.5};
  RandomQbafParams p;
  p.n_args = std::uniform_int_distribution<Index>(params.min_args, params.max_args)(rng);
  p.edge_density = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
  p.acyclic = i % 2 == 0;
  p.max_in_degree = p.acyclic ? 0 : params.cyclic_max_in_degree;
  p.base_grid = grids[std::uniform_int_distribution<int>(0, 2)(rng)];
  p.seed = rng();
  return random_qbaf(p);
}

namespace {

struct CaseResult {
  std::vector<PropertyVerdict> verdicts;
  bool solved = false;
  bool injected = false;
  bool flagged = false;
};

CaseResult run_case(const SuiteParams& params, Index i, Semantics sem) {
  CaseResult out;
  const Qbaf q = suite_instance(params, i);
  PropertyConfig cfg = params.property;
  cfg.semantics = sem;
  cfg.seed = derive_seed(params.seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(2 * i + (sem == Semantics::Continuous)));
  const auto r = solve(q, sem, cfg);
  if (!r.converged()) return out;
  out.solved = true;
  auto sigma = r.interpretation;
  if (params.inject_faults && q.size() > 0) {
    std::mt19937_64 rng(cfg.seed);
    const auto a = std::uniform_int_distribution<Index>(0, q.size() - 1)(rng);
    const double v = *sigma[a];
    // Move by 0.1 towards the interior side so the value stays in [0, 1].
    sigma.set(a, v >= 0.5 ? v - 0.1 : v + 0.1);
    out.injected = true;
  }
  out.verdicts = check_all(q, sigma, cfg);
  out.flagged = std::any_of(out.verdicts.begin(), out.verdicts.end(),
                            [](const auto& v) { return v.status == VerdictStatus::Violated; });
  return out;
}

}  // namespace

SuiteSummary run_suite(const SuiteParams& params) {
  if (params.instances < 1) throw Error(ErrorKind::InvalidConfig, "need at least one instance");
  if (params.min_args < 1 || params.min_args > params.max_args)
    throw Error(ErrorKind::InvalidConfig, "argument count range must satisfy 1 <= min <= max");

  const Index cases = params.instances * 2;
  std::vector<CaseResult> results(static_cast<std::size_t>(cases));
  std::atomic<Index> next{0};
  const auto worker = [&] {
    for (Index c; (c = next++) < cases;)
      results[c] = run_case(params, c / 2, c % 2 ? Semantics::Continuous : Semantics::Discrete);
  };
  const unsigned jobs = std::max(1u, params.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Aggregate in case order so the summary does not depend on scheduling.
  SuiteSummary s;
  s.instances = params.instances;
  for (Index c = 0; c < cases; ++c) {
    const auto& r = results[c];
    if (!r.solved) {
      ++s.unsolved;
      continue;
    }
    ++s.checked;
    s.injected += r.injected;
    s.flagged += r.injected && r.flagged;
    for (const auto& v : r.verdicts) {
      auto& t = s.tally[static_cast<std::size_t>(v.property)];
      t.witnesses += v.witnesses_checked;
      switch (v.status) {
        case VerdictStatus::Holds: ++t.holds; break;
        case VerdictStatus::VacuouslyHolds: ++t.vacuous; break;
        case VerdictStatus::Violated:
          ++t.violated;
          if (!t.first_counterexample)
            t.first_counterexample = "instance " + std::to_string(c / 2) + " (" +
                                     to_string(c % 2 ? Semantics::Continuous : Semantics::Discrete) +
                                     "): " + *v.counterexample;
          break;
      }
    }
  }
  return s;
}

}  // namespace qbaf
