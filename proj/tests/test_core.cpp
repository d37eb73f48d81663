#include "support.hpp"

using namespace qbaf;

TEST_SUITE("core") {

TEST_CASE("minimal qbaf is valid") {
  QbafDraft<double> d;
  d.add_argument(0.5);
  CHECK(validate(d).empty());
  const Qbaf q(d);
  CHECK(q.size() == 1);
  CHECK(q.label(0) == "1");
  CHECK(q.edges().empty());
}

TEST_CASE("validate reports each broken invariant") {
  QbafDraft<double> d;
  d.add_argument(0.5, "a");
  d.add_argument(1.2, "b");
  d.add_edge(0, 1, 0.0);
  d.add_edge(0, 7, 1.0);
  d.add_edge(1, 0, -1.0);
  d.add_edge(1, 0, 0.5);
  const auto issues = validate(d);
  std::vector<ErrorKind> kinds;
  for (const auto& i : issues) kinds.push_back(i.kind);
  CHECK(std::count(kinds.begin(), kinds.end(), ErrorKind::BaseScoreOutOfRange) == 1);
  CHECK(std::count(kinds.begin(), kinds.end(), ErrorKind::ZeroWeightEdge) == 1);
  CHECK(std::count(kinds.begin(), kinds.end(), ErrorKind::DanglingEndpoint) == 1);
  CHECK(std::count(kinds.begin(), kinds.end(), ErrorKind::DuplicateEdge) == 1);
  for (const auto& i : issues) {
    if (i.kind == ErrorKind::BaseScoreOutOfRange) CHECK(i.argument == Index(1));
    if (i.kind == ErrorKind::ZeroWeightEdge) CHECK(i.edge == std::size_t(0));
    if (i.kind == ErrorKind::DuplicateEdge) CHECK(i.edge == std::size_t(3));
  }
}

TEST_CASE("constructor is the validation gate") {
  CHECK(error_kind_of([] { make_qbaf({1.2}, {}); }) == ErrorKind::BaseScoreOutOfRange);
  CHECK(error_kind_of([] { make_qbaf({0.5, 0.5}, {{0, 1, 0.0}}); }) == ErrorKind::ZeroWeightEdge);
  CHECK(error_kind_of([] { make_qbaf({0.5}, {{0, 3, 1.0}}); }) == ErrorKind::DanglingEndpoint);
  CHECK(error_kind_of([] { make_qbaf({0.5, 0.5}, {{0, 1, 1.0}, {0, 1, 2.0}}); }) == ErrorKind::DuplicateEdge);
  CHECK(error_kind_of([] { make_qbaf({std::nan("")}, {}); }) == ErrorKind::BaseScoreOutOfRange);
  CHECK(error_kind_of([] { make_qbaf({0.5, 0.5}, {{0, 1, INFINITY}}); }) == ErrorKind::NonFiniteWeight);
  QbafDraft<double> d;
  d.add_argument(0.5, "x");
  d.add_argument(0.5, "x");
  CHECK(error_kind_of([&] { Qbaf q(d); }) == ErrorKind::DuplicateArgument);
}

TEST_CASE("base scores 0 and 1 are stored exactly") {
  const auto q = make_qbaf({0.0, 1.0}, {});
  CHECK(q.base_score(0) == 0.0);
  CHECK(q.base_score(1) == 1.0);
}

TEST_CASE("attackers and supporters split parents by sign") {
  const auto q = make_qbaf({0.5, 0.5, 0.5}, {{1, 0, -1.0}, {2, 0, 1.0}});
  CHECK(attackers(q, 0) == std::vector<ArgumentId>{1});
  CHECK(supporters(q, 0) == std::vector<ArgumentId>{2});
  CHECK(attackers(q, 1).empty());
  CHECK(supporters(q, 1).empty());
  CHECK(error_kind_of([&] { attackers(q, 9); }) == ErrorKind::UnknownArgument);
}

TEST_CASE("divergence family blue argument has 3 blue attackers and 3 green supporters") {
  const auto q = divergence_family(3, 3, 0.5, 0.4, 0.7);
  CHECK(attackers(q, 0) == std::vector<ArgumentId>{0, 1, 2});
  CHECK(supporters(q, 0) == std::vector<ArgumentId>{3, 4, 5});
  CHECK_FALSE(is_acyclic(q));
}

TEST_CASE("attackers and supporters partition the parents on random graphs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomQbafParams p;
    p.n_args = 12;
    p.edge_density = 0.4;
    p.acyclic = false;
    p.weight_mode = WeightMode::bounded(2.0);
    p.seed = seed;
    const auto q = random_qbaf(p);
    for (ArgumentId a = 0; a < q.size(); ++a) {
      auto att = attackers(q, a), sup = supporters(q, a);
      std::vector<ArgumentId> both;
      std::set_intersection(att.begin(), att.end(), sup.begin(), sup.end(), std::back_inserter(both));
      CHECK(both.empty());
      CHECK(static_cast<Index>(att.size() + sup.size()) == q.in_degree(a));
    }
  }
}

TEST_CASE("topological order") {
  const auto chain = make_qbaf({0.5, 0.5, 0.5}, {{0, 1, 1.0}, {1, 2, -1.0}});
  CHECK(is_acyclic(chain));
  CHECK(topological_order(chain) == std::vector<ArgumentId>{0, 1, 2});

  const auto mutual = make_qbaf({0.5, 0.5}, {{0, 1, -1.0}, {1, 0, -1.0}});
  CHECK_FALSE(is_acyclic(mutual));
  CHECK(error_kind_of([&] { topological_order(mutual); }) == ErrorKind::CyclicGraph);

  const auto loop = make_qbaf({0.5}, {{0, 0, -1.0}});
  CHECK_FALSE(is_acyclic(loop));

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomQbafParams p;
    p.n_args = 15;
    p.edge_density = 0.3;
    p.seed = seed;
    const auto q = random_qbaf(p);
    const auto order = topological_order(q);
    std::vector<Index> pos(q.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<Index>(i);
    for (const auto& e : q.edges()) CHECK(pos[e.source] < pos[e.target]);
  }
}

TEST_CASE("weight matrix rows are targets") {
  const auto q = make_qbaf({0.5, 0.5}, {{0, 1, -0.7}});
  CHECK(q.weights().coeff(1, 0) == -0.7);
  CHECK(q.weights().coeff(0, 1) == 0.0);
  CHECK(q.weight(0, 1) == -0.7);
  CHECK_FALSE(q.weight(1, 0).has_value());
}

TEST_CASE("interpretation") {
  auto i = Interpretation<double>::undefined(2);
  CHECK_FALSE(i.is_fully_defined());
  CHECK_FALSE(i[0].has_value());
  CHECK(error_kind_of([&] { i.values(); }) == ErrorKind::PartialInterpretation);
  i.set(0, 0.3);
  i.set(1, 0.6);
  CHECK(i.is_fully_defined());
  CHECK(i.values()[1] == 0.6);
  i.set_undefined(1);
  CHECK_FALSE(i.is_fully_defined());
}

TEST_CASE("draft round trip and equality") {
  const auto q = stock_example(1.0);
  CHECK(Qbaf(q.draft()) == q);
  CHECK_FALSE(stock_example(2.0) == q);
  CHECK(q.find("sell") == ArgumentId(3));
  CHECK_FALSE(q.find("hold").has_value());
}

}  // TEST_SUITE
