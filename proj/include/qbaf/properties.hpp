#pragma once

#include "qbaf/continuous.hpp"
#include "qbaf/discrete.hpp"
#include "qbaf/generators.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qbaf {

enum class PropertyId {
  Anonymity,
  Independence,
  Directionality,
  Equivalence,
  Stability,
  Neutrality,
  Monotony,
  Reinforcement,
  Resilience,
  Franklin,
  Weakening,
  Strengthening,
  Duality,
  AlmostOpenMindedness,
};

inline constexpr std::array<PropertyId, 14> all_properties = {
    PropertyId::Anonymity,     PropertyId::Independence, PropertyId::Directionality, PropertyId::Equivalence,
    PropertyId::Stability,     PropertyId::Neutrality,   PropertyId::Monotony,       PropertyId::Reinforcement,
    PropertyId::Resilience,    PropertyId::Franklin,     PropertyId::Weakening,      PropertyId::Strengthening,
    PropertyId::Duality,       PropertyId::AlmostOpenMindedness,
};

const char* to_string(PropertyId p);

enum class VerdictStatus { Holds, Violated, VacuouslyHolds };
const char* to_string(VerdictStatus s);

struct PropertyVerdict {
  PropertyId property;
  VerdictStatus status = VerdictStatus::VacuouslyHolds;
  Index witnesses_checked = 0;
  std::optional<std::string> counterexample;
};

enum class Semantics { Discrete, Continuous };
const char* to_string(Semantics s);

// Tolerances:
//  - eq_tolerance (1e-4) bounds every equality/non-strict conclusion and is
//    the "non-zero strength" threshold of the plus sets; strict hypotheses
//    such as sigma(x) < sigma(y) must hold by more than this margin.
//  - match_tolerance decides whether two computed strengths are "equal" in a
//    hypothesis. It is far below eq_tolerance so that a matched hypothesis
//    cannot move a conclusion by more than eq_tolerance.
//  - companion instances are solved at 1e-12 so that strict conclusions
//    (sigma(a) > sigma(b), 0 < sigma < 1) can be compared literally.
struct PropertyConfig {
  double eq_tolerance = 1e-4;
  double match_tolerance = 1e-9;
  Semantics semantics = Semantics::Discrete;
  IterationConfig<double> iteration{1e-12, 200000, false, 0};
  IntegrationConfig<double> integration{0.05, 1e-12, 20000, false};
  std::uint64_t seed = 0;
  // Edge removals tried for Directionality and targets tried for
  // AlmostOpenMindedness.
  Index max_companions = 8;
  Index open_mind_targets = 2;
  // sigma^{k,p}(a) must be strictly monotone in k for k = 1..open_mind_k_max.
  Index open_mind_k_max = 10;
  // Limit check: for k above the closed-form threshold, sigma^{k,-}(a) < eps
  // and sigma^{k,+}(a) > 1 - eps.
  double open_mind_epsilon = 1e-3;
  // Weakening/Strengthening are stated for beta(a) > 0 (resp. < 1), but base
  // scores 0 and 1 are absorbing, so beta(a) = 1 (resp. 0) targets violate
  // them. Off by default; only for reporting where violations come from.
  bool skip_extreme_targets = false;
};

SolveReport<double> solve(const Qbaf& q, Semantics semantics, const PropertyConfig& cfg);

// Attackers/supporters whose strength exceeds `threshold`.
struct PlusSets {
  std::vector<ArgumentId> att_plus;
  std::vector<ArgumentId> sup_plus;
};
PlusSets plus_sets(const Qbaf& q, const Vector<double>& sigma, ArgumentId a, double threshold);

// True iff an injection g: sup -> att with sup[i] <= g(sup[i]) (up to `slack`)
// exists. Sorting both descending and matching greedily is exact.
bool injection_feasible(std::vector<double> sup_strengths, std::vector<double> att_strengths, double slack = 0.0);

// Q plus k fresh sources of base score 1 attached to `target` with weight p
// (p = -1: attackers, p = +1: supporters).
Qbaf open_mindedness_companion(const Qbaf& q, ArgumentId target, Index k, int p);

bool has_unit_weights(const Qbaf& q);

// Checks one property on (q, sigma). Throws NonUnitWeights unless every
// weight is -1 or +1, and PartialInterpretation unless sigma is fully defined.
PropertyVerdict check_property(PropertyId prop, const Qbaf& q, const Interpretation<double>& sigma,
                               const PropertyConfig& cfg = {});

std::vector<PropertyVerdict> check_all(const Qbaf& q, const Interpretation<double>& sigma,
                                       const PropertyConfig& cfg = {});

struct SuiteParams {
  Index instances = 100;
  std::uint64_t seed = 0;
  Index min_args = 1;
  Index max_args = 10;
  // Cyclic instances cap the in-degree here; 3 keeps W*P < 4 for unit weights.
  Index cyclic_max_in_degree = 3;
  PropertyConfig property;
  // Perturb one strength per solved instance by +-0.1 before checking.
  bool inject_faults = false;
  unsigned jobs = 1;
};

struct PropertyTally {
  Index holds = 0;
  Index violated = 0;
  Index vacuous = 0;
  Index witnesses = 0;
  std::optional<std::string> first_counterexample;
};

struct SuiteSummary {
  std::array<PropertyTally, 14> tally{};
  Index instances = 0;
  Index checked = 0;   // (instance, semantics) pairs that converged and were checked
  Index unsolved = 0;  // (instance, semantics) pairs without a converged solve
  Index injected = 0;
  Index flagged = 0;  // injected cases where some property reported Violated

  Index total_violations() const;
};

// Instance i uses seed derive_seed(seed, i): even i acyclic, odd i cyclic with
// bounded in-degree; unit weights; base scores on a coarse grid. Each
// instance is solved with both semantics and every property is checked.
SuiteSummary run_suite(const SuiteParams& params);

// The i-th generated instance of run_suite.
Qbaf suite_instance(const SuiteParams& params, Index i);

}  // namespace qbaf
