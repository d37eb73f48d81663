#include "support.hpp"

using namespace qbaf;

TEST_SUITE("generators") {

TEST_CASE("stock example") {
  const auto q = stock_example(1.0);
  CHECK(q.size() == 5);
  CHECK(q.edges().size() == 7);
  CHECK_FALSE(is_acyclic(q));
  CHECK(q.labels() == std::vector<std::string>{"A1", "A2", "A3", "sell", "buy"});
  for (ArgumentId a = 0; a < 5; ++a) CHECK(q.base_score(a) == 0.5);
  CHECK(attackers(q, *q.find("A1")).size() == 2);
  CHECK(q.weight(*q.find("sell"), *q.find("buy")) == -1.0);
  CHECK(q.weight(*q.find("buy"), *q.find("sell")) == -1.0);
  CHECK(q.weight(*q.find("A1"), *q.find("sell")) == 1.0);

  const auto doubled = stock_example(2.0);
  REQUIRE(doubled.edges().size() == q.edges().size());
  for (std::size_t i = 0; i < q.edges().size(); ++i) {
    CHECK(doubled.edges()[i].source == q.edges()[i].source);
    CHECK(doubled.edges()[i].target == q.edges()[i].target);
    CHECK(doubled.edges()[i].weight == 2.0 * q.edges()[i].weight);
  }
  CHECK(doubled.base_scores() == q.base_scores());

  CHECK(stock_example(1.0, {{"A2", 0.9}}).base_score(1) == 0.9);
  CHECK(error_kind_of([] { stock_example(0.0); }) == ErrorKind::NonPositiveScale);
  CHECK(error_kind_of([] { stock_example(-1.0); }) == ErrorKind::NonPositiveScale);
  CHECK(error_kind_of([] { stock_example(1.0, {{"hold", 0.5}}); }) == ErrorKind::UnknownArgument);
}

TEST_CASE("divergence family shape") {
  const auto q = divergence_family(2, 4, 0.5, 0.4, 0.7);
  CHECK(q.size() == 6);
  CHECK(q.edges().size() == 36);
  for (ArgumentId a = 0; a < 6; ++a) {
    CHECK(q.in_degree(a) == 6);
    const bool blue = a < 2;
    CHECK(attackers(q, a).size() == (blue ? 2u : 4u));
    CHECK(supporters(q, a).size() == (blue ? 4u : 2u));
    CHECK(q.base_score(a) == (blue ? 0.5 : 0.4));
  }
  for (const auto& e : q.edges()) CHECK(std::fabs(e.weight) == 0.7);
  CHECK(error_kind_of([] { divergence_family(0, 3, 0.5, 0.5, 1.0); }) == ErrorKind::InvalidConfig);
  CHECK(error_kind_of([] { divergence_family(3, 3, 0.5, 0.5, 0.0); }) == ErrorKind::NonPositiveScale);
}

TEST_CASE("random qbaf is deterministic in its seed") {
  RandomQbafParams p;
  p.n_args = 12;
  p.edge_density = 0.3;
  p.seed = 42;
  CHECK(random_qbaf(p) == random_qbaf(p));
  p.seed = 43;
  const auto other = random_qbaf(p);
  p.seed = 42;
  CHECK_FALSE(random_qbaf(p) == other);
}

TEST_CASE("random qbaf respects its parameters") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomQbafParams p;
    p.n_args = 1 + static_cast<Index>(seed % 20);
    p.edge_density = 0.5;
    p.acyclic = seed % 2 == 0;
    p.weight_mode = seed % 4 < 2 ? WeightMode::unit() : WeightMode::bounded(1.3);
    p.base_lo = 0.2;
    p.base_hi = 0.8;
    p.max_in_degree = seed % 3 == 0 ? 2 : 0;
    p.seed = seed;
    const auto q = random_qbaf(p);
    CHECK(q.size() == p.n_args);
    if (p.acyclic) CHECK(is_acyclic(q));
    for (ArgumentId a = 0; a < q.size(); ++a) {
      CHECK(q.base_score(a) >= 0.2);
      CHECK(q.base_score(a) <= 0.8);
      if (p.max_in_degree > 0) CHECK(q.in_degree(a) <= 2);
    }
    for (const auto& e : q.edges()) {
      if (p.weight_mode.kind == WeightMode::Kind::UnitSigned) CHECK(std::fabs(e.weight) == 1.0);
      CHECK(std::fabs(e.weight) > 0.0);
      CHECK(std::fabs(e.weight) <= 1.3);
    }
  }
}

TEST_CASE("density extremes") {
  RandomQbafParams p;
  p.n_args = 8;
  p.edge_density = 0.0;
  CHECK(random_qbaf(p).edges().empty());
  p.edge_density = 1.0;
  CHECK(random_qbaf(p).edges().size() == 8u * 7u / 2u);
  p.acyclic = false;
  CHECK(random_qbaf(p).edges().size() == 64u);
}

TEST_CASE("base grid and extremes") {
  RandomQbafParams p;
  p.n_args = 50;
  p.base_grid = 0.25;
  p.seed = 7;
  const auto q = random_qbaf(p);
  for (ArgumentId a = 0; a < q.size(); ++a) {
    const double b = q.base_score(a) / 0.25;
    CHECK(b == std::round(b));
  }
  p.base_grid = 0;
  p.extreme_probability = 1.0;
  const auto e = random_qbaf(p);
  for (ArgumentId a = 0; a < e.size(); ++a) CHECK((e.base_score(a) == 0.0 || e.base_score(a) == 1.0));
}

TEST_CASE("parameter errors") {
  RandomQbafParams p;
  p.edge_density = 1.5;
  CHECK(error_kind_of([&] { random_qbaf(p); }) == ErrorKind::InvalidConfig);
  p = {};
  p.base_lo = 0.7;
  p.base_hi = 0.3;
  CHECK(error_kind_of([&] { random_qbaf(p); }) == ErrorKind::InvalidConfig);
  p = {};
  p.n_args = -1;
  CHECK(error_kind_of([&] { random_qbaf(p); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("derive_seed spreads indices") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 5) == derive_seed(1, 5));
  CHECK(derive_seed(1, 5) != derive_seed(2, 5));
}

}  // TEST_SUITE
