// One PASS/FAIL line per criterion. Usage: qbaf_acceptance [criterion...]
#include "random_mlp.hpp"

#include "qbaf/qbaf.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace qbaf;

namespace {

// Tolerances and sizes, pinned.
constexpr double kDelta1 = 1e-6;
constexpr Index kMaxIter1 = 10000;
constexpr Index kDetectLo = 50, kDetectHi = 200;
constexpr double kTailStep = 0.01;
constexpr double kRuntime1 = 1.0;

constexpr double kResidual2 = 1e-4;
constexpr double kMaxTime2 = 1000.0;
constexpr double kRuntime2 = 5.0;

constexpr int kGraphs3 = 200;
constexpr double kWeight3 = 1.3;
constexpr Index kParents3 = 3;
constexpr double kEps3 = 1e-6;
constexpr Index kBound3 = 546;
constexpr double kRuntime3 = 30.0;

constexpr int kGraphs4 = 500;
constexpr Index kArgs4 = 30;
constexpr double kAgree4 = 1e-4;

constexpr Index kInstances5 = 1000;
constexpr std::uint64_t kSeed5 = 7;
constexpr Index kInjected5 = 50;

constexpr double kDuality6 = 1e-6;
constexpr double kOpen7 = 1e-6;

constexpr int kNetworks8 = 1000;
constexpr double kForward8 = 1e-9;
constexpr double kRoundTrip8 = 1e-6;

constexpr double kResidual9 = 1e-4;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double sup(const Vector<double>& x, const Vector<double>& y) { return (x - y).lpNorm<Eigen::Infinity>(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome divergence() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto q = divergence_family(3, 3, 0.5, 0.4, 0.7);
  IterationConfig<double> cfg;
  cfg.tolerance = kDelta1;
  cfg.max_iterations = kMaxIter1;
  cfg.record_trajectory = true;
  const auto r = iterate(q, cfg);
  const double took = seconds_since(t0);

  bool ok = r.status == SolveStatus::Oscillating && r.steps >= kDetectLo && r.steps <= kDetectHi &&
            r.residual >= kTailStep && took < kRuntime1;
  // The tail itself: s_k close to s_{k-2}, far from s_{k-1}.
  const auto& t = *r.trajectory;
  const auto n = t.size();
  const double two = sup(t[n - 1].state, t[n - 3].state), one = sup(t[n - 1].state, t[n - 2].state);
  ok = ok && two < kDelta1 && one >= kTailStep;

  const auto r67 = iterate(divergence_family(3, 3, 0.5, 0.4, 0.67), cfg);
  ok = ok && r67.status != SolveStatus::Converged;

  std::ostringstream d;
  d << to_string(r.status) << " at step " << r.steps << " (one-step change " << fmt("%.3f", one)
    << ", two-step " << fmt("%.1e", two) << ", " << fmt("%.3f", took) << " s); w=0.67: " << to_string(r67.status)
    << " at step " << r67.steps;
  return {ok, d.str()};
}

Outcome rescue() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto q = divergence_family(3, 3, 0.5, 0.4, 0.7);
  IntegrationConfig<double> cfg;
  cfg.max_time = kMaxTime2;
  const auto r = integrate(q, cfg);
  const double took = seconds_since(t0);
  if (!r.converged()) return {false, std::string("continuous run ended ") + to_string(r.status)};
  const double res = residual(q, r.interpretation.values());
  std::ostringstream d;
  d << "converged at t=" << r.steps * cfg.step << ", residual " << fmt("%.1e", res) << ", "
    << fmt("%.3f", took) << " s";
  return {res < kResidual2 && r.steps * cfg.step < kMaxTime2 && took < kRuntime2, d.str()};
}

Outcome bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto b = iteration_bound(kEps3, kWeight3, kParents3);
  if (!b || *b != kBound3) return {false, "bound at W=1.3, P=3 is not 546"};
  int bad = 0, cyclic = 0;
  double worst = 0;
  for (int i = 0; i < kGraphs3; ++i) {
    RandomQbafParams p;
    p.n_args = 2 + i % 29;
    p.edge_density = 0.5;
    p.acyclic = false;
    p.max_in_degree = kParents3;
    p.weight_mode = WeightMode::bounded(kWeight3);
    p.base_lo = 0.0;
    p.base_hi = 1.0;
    p.seed = derive_seed(303, static_cast<std::uint64_t>(i));
    const auto q = random_qbaf(p);
    cyclic += !is_acyclic(q);
    const auto g = analyze(q);
    const auto own = iteration_bound(kEps3, g);
    if (!own || *own > kBound3) {
      ++bad;
      continue;
    }

    IterationConfig<double> ref;
    ref.tolerance = 1e-12;
    ref.max_iterations = 1000000;
    ref.oscillation_window = 0;
    const auto r = iterate(q, ref);
    if (!r.converged()) {
      ++bad;
      continue;
    }
    Vector<double> s = q.base_scores();
    for (Index k = 0; k < kBound3; ++k) s = update(q, s);
    const double err = sup(s, r.interpretation.values());
    worst = std::max(worst, err);
    bad += !(err < kEps3);
  }
  const double took = seconds_since(t0);
  std::ostringstream d;
  d << kGraphs3 << " graphs (" << cyclic << " cyclic), worst error after 546 steps " << fmt("%.1e", worst) << ", "
    << bad << " violations, " << fmt("%.2f", took) << " s";
  return {bad == 0 && took < kRuntime3, d.str()};
}

Outcome acyclic_agreement() {
  int bad = 0;
  double worst = 0;
  for (int i = 0; i < kGraphs4; ++i) {
    RandomQbafParams p;
    p.n_args = 1 + i % kArgs4;
    p.edge_density = 0.1 + 0.5 * (i % 7) / 6.0;
    p.weight_mode = i % 2 ? WeightMode::unit() : WeightMode::bounded(3.0);
    p.seed = derive_seed(404, static_cast<std::uint64_t>(i));
    const auto q = random_qbaf(p);
    const Vector<double> a = solve_acyclic(q).values();
    const auto d = iterate(q);
    const auto c = integrate(q);
    if (!d.converged() || !c.converged()) {
      ++bad;
      continue;
    }
    const double gap = std::max({sup(a, d.interpretation.values()), sup(a, c.interpretation.values()),
                                 sup(d.interpretation.values(), c.interpretation.values())});
    worst = std::max(worst, gap);
    bad += !(gap < kAgree4);
  }
  std::ostringstream d;
  d << kGraphs4 << " graphs, worst pairwise gap " << fmt("%.1e", worst) << ", " << bad << " violations";
  return {bad == 0, d.str()};
}

Outcome property_suite() {
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  SuiteParams p;
  p.instances = kInstances5;
  p.seed = kSeed5;
  p.jobs = jobs;
  const auto s = run_suite(p);

  std::ostringstream d;
  d << s.checked << " solved cases, " << s.total_violations() << " violations";
  for (auto prop : all_properties) {
    const auto& t = s.tally[static_cast<std::size_t>(prop)];
    if (t.violated) d << "; " << to_string(prop) << " " << t.violated;
  }

  SuiteParams f = p;
  f.instances = kInjected5 / 2;  // both semantics per instance
  f.inject_faults = true;
  const auto fs = run_suite(f);
  d << "; injected " << fs.injected << ", flagged " << fs.flagged;

  // Informational only: does not change the verdict.
  SuiteParams inner = p;
  inner.property.skip_extreme_targets = true;
  const auto is = run_suite(inner);
  d << "; excluding beta in {0,1} targets for Weakening/Strengthening: " << is.total_violations() << " violations";

  const bool ok = s.unsolved == 0 && s.total_violations() == 0 && fs.injected == kInjected5 && fs.flagged == fs.injected;
  return {ok, d.str()};
}

Outcome duality() {
  int bad = 0, cases = 0;
  double worst = 0;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0, 1);
  for (double eps : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    for (int trial = 0; trial < 20; ++trial) {
      // a and b share parents; every edge into b is the negation of the one into a.
      QbafDraft<double> d;
      const auto a = d.add_argument(0.5 + eps, "a");
      const auto b = d.add_argument(0.5 - eps, "b");
      const int parents = trial % 6;
      for (int j = 0; j < parents; ++j) {
        const auto x = d.add_argument(u(rng));
        const double w = (u(rng) < 0.5 ? -1.0 : 1.0) * (trial % 2 ? 1.0 : 0.2 + u(rng));
        d.add_edge(x, a, w);
        d.add_edge(x, b, -w);
        if (j > 0 && trial % 3 == 0) d.add_edge(x - 1, x, u(rng) < 0.5 ? -1.0 : 1.0);
      }
      const Qbaf q(std::move(d));
      for (const auto& r : {iterate(q), integrate(q)}) {
        ++cases;
        if (!r.converged()) {
          ++bad;
          continue;
        }
        const auto& s = r.interpretation.values();
        const double gap = std::abs(s[a] + s[b] - 1.0);
        worst = std::max(worst, gap);
        bad += !(gap < kDuality6);
      }
    }
  }
  std::ostringstream d;
  d << cases << " solves over eps in {0..0.5}, worst |sigma(a)+sigma(b)-1| " << fmt("%.1e", worst);
  return {bad == 0, d.str()};
}

Outcome open_mindedness() {
  QbafDraft<double> one;
  one.add_argument(0.5, "a");
  const Qbaf lonely(std::move(one));
  double worst = 0;
  bool ok = true;
  std::ostringstream d;
  for (Index k = 1; k <= 10; ++k) {
    const auto q = open_mindedness_companion(lonely, 0, k, -1);
    const double expected = 1.0 / (1.0 + std::exp(static_cast<double>(k)));
    const auto r1 = iterate(q), r2 = integrate(q);
    if (!r1.converged() || !r2.converged()) {
      ok = false;
      continue;
    }
    for (double v : {r1.interpretation.values()[0], r2.interpretation.values()[0]}) worst = std::max(worst, std::abs(v - expected));
    if (k == 5) d << "k=5 gives " << fmt("%.10f", r1.interpretation.values()[0]) << ", ";
  }
  d << "worst gap over k=1..10 " << fmt("%.1e", worst);
  return {ok && worst < kOpen7, d.str()};
}

Outcome mlp_equivalence() {
  std::mt19937_64 rng(808);
  double fwd = 0, trip = 0;
  int failures = 0;
  for (int i = 0; i < kNetworks8; ++i) {
    const auto m = testing_aid::random_mlp(rng, 2 + i % 3);
    const auto x = testing_aid::random_inputs(rng, static_cast<Index>(m.inputs().size()));
    const auto y = forward(m, x);
    const auto q = mlp_to_qbaf(m, x);
    const Vector<double> s = solve_acyclic(q).values();
    fwd = std::max(fwd, sup(s, y));
    try {
      const auto t = qbaf_to_mlp(q);
      const auto z = forward(t.mlp, t.inputs);
      for (Index a = 0; a < q.size(); ++a) trip = std::max(trip, std::abs(z[t.node_of_argument[a]] - s[a]));
    } catch (const Error&) {
      ++failures;
    }
  }
  std::ostringstream d;
  d << kNetworks8 << " networks, forward gap " << fmt("%.1e", fwd) << ", round-trip gap " << fmt("%.1e", trip);
  if (failures) d << ", " << failures << " translations failed";
  return {failures == 0 && fwd < kForward8 && trip < kRoundTrip8, d.str()};
}

Outcome stock() {
  const auto q1 = stock_example(1.0), q2 = stock_example(2.0);
  const auto sell = *q1.find("sell"), buy = *q1.find("buy");
  bool ok = true;
  std::ostringstream d;
  for (int engine = 0; engine < 2; ++engine) {
    const auto r1 = engine ? integrate(q1) : iterate(q1);
    const auto r2 = engine ? integrate(q2) : iterate(q2);
    d << (engine ? "; continuous" : "discrete");
    if (!r1.converged() || !r2.converged()) {
      d << " s=1 " << to_string(r1.status) << ", s=2 " << to_string(r2.status);
      ok = false;
      continue;
    }
    const auto& a = r1.interpretation.values();
    const auto& b = r2.interpretation.values();
    const double res = std::max(residual(q1, a), residual(q2, b));
    ok = ok && res < kResidual9;
    for (auto id : {sell, buy}) ok = ok && std::abs(b[id] - 0.5) > std::abs(a[id] - 0.5);
    d << " sell " << fmt("%.4f", a[sell]) << "->" << fmt("%.4f", b[sell]) << ", buy " << fmt("%.4f", a[buy]) << "->"
      << fmt("%.4f", b[buy]) << ", residual " << fmt("%.1e", res);
  }
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"divergence reproduction", divergence},
      {"continuous rescue", rescue},
      {"convergence bound soundness", bound},
      {"acyclic equivalence", acyclic_agreement},
      {"property suite", property_suite},
      {"duality closed form", duality},
      {"open-mindedness asymptotics", open_mindedness},
      {"mlp equivalence", mlp_equivalence},
      {"stock example sharpening", stock},
  };

  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion '" << argv[i] << "'\n";
      return 2;
    }
    pick.push_back(c);
  }
  if (pick.empty())
    for (int c = 1; c <= static_cast<int>(criteria.size()); ++c) pick.push_back(c);

  int failed = 0;
  for (int c : pick) {
    const auto& [name, run] = criteria[static_cast<std::size_t>(c - 1)];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << c << " " << (o.pass ? "PASS" : "FAIL") << " " << name << ": " << o.detail << "\n"
              << std::flush;
  }
  return failed ? 1 : 0;
}
