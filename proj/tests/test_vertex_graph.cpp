#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "lpuniq/errors.hpp"
#include "lpuniq/graph.hpp"
#include "lpuniq/numerics.hpp"
#include "support.hpp"

using namespace lpuniq;
using testing::z;
using testing::z2;

TEST_CASE("vertex text form round-trips for every shape") {
  const std::vector<VertexId> samples{z(0),           z(-17),         z2(1, -2),
                                      VertexId::root(), VertexId::word({0, 1, 1}),
                                      VertexId::token("node_a")};
  for (const auto& v : samples) {
    CHECK(VertexId::parse(v.to_string(), v.shape()) == v);
    CHECK(v.hash() == VertexId::parse(v.to_string(), v.shape()).hash());
  }
  CHECK(z2(1, -2).to_string() == "1:-2");
  CHECK(VertexId::root().to_string() == "r");
  CHECK(VertexId::word({0, 2}).to_string() == "r.0.2");
  CHECK_THROWS(VertexId::parse("1:x", VertexId::Shape::Lattice));
}

TEST_CASE("canonical order is lexicographic") {
  CHECK(z(-1) < z(0));
  CHECK(z2(0, 5) < z2(1, -5));
  CHECK(VertexId::root() < VertexId::word({0}));
  CHECK(VertexId::word({0, 2}) < VertexId::word({1}));
}

TEST_CASE("built-in family neighbors") {
  const auto g1 = testing::lattice(1);
  const auto n = g1->neighbors(z(0));
  REQUIRE(n.size() == 2);
  CHECK(n[0].vertex == z(-1));
  CHECK(n[0].weight == 1.0);
  CHECK(n[1].vertex == z(1));
  CHECK(n[1].weight == 1.0);

  CHECK(degree(*testing::lattice(2), z2(0, 0)).deg == 4.0);

  const auto t = testing::tree(3);
  CHECK(t->neighbors(VertexId::root()).size() == 3);
  const auto child = t->neighbors(VertexId::word({1}));
  CHECK(child.size() == 3);
  CHECK(std::count_if(child.begin(), child.end(), [](const Neighbor& x) { return x.vertex == VertexId::root(); }) == 1);
  CHECK_THROWS_AS(t->neighbors(VertexId::word({3})), DomainError);
  CHECK_THROWS_AS(g1->neighbors(z2(0, 0)), DomainError);
}

TEST_CASE("degree examples") {
  const auto d = degree(*testing::lattice(1), z(0));
  CHECK(d.deg == 2.0);
  CHECK(d.Deg == 2.0);
  CHECK(degree(*testing::lattice(3), VertexId::lattice({4, -1, 7})).deg == 6.0);

  std::istringstream edges("a b 1\nb c 1\n");
  std::istringstream measures("b 0.5\n");
  const auto g = EdgeListGraph::parse(edges, &measures);
  const auto db = degree(*g, VertexId::token("b"));
  CHECK(db.deg == 2.0);
  CHECK(db.Deg == 4.0);
  CHECK(g->measure(VertexId::token("a")) == 1.0);
}

TEST_CASE("edge list rejects malformed input with the line number") {
  auto parse_error_line = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      EdgeListGraph::parse(in, nullptr);
    } catch (const FormatError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(parse_error_line("a a 1.0\n") == 1);                 // loop
  CHECK(parse_error_line("a b 1\n# note\nb c -2\n") == 3);   // negative weight
  CHECK(parse_error_line("a b 1\nb a 2\n") == 2);            // asymmetric duplicate
  CHECK(parse_error_line("a b\n") == 1);                     // missing weight
  CHECK(parse_error_line("a b one\n") == 1);
  CHECK(parse_error_line("a b 1\nb c 0.5\n") == 0);

  std::istringstream edges("a b 1\n");
  std::istringstream measures("a 0\n");
  CHECK_THROWS_AS(EdgeListGraph::parse(edges, &measures), FormatError);
}

TEST_CASE("family descriptors parse and print") {
  CHECK(FamilyDescriptor::parse("lattice:2").dimension == 2);
  CHECK(FamilyDescriptor::parse("tree:3").branching == 3);
  CHECK(FamilyDescriptor::parse("regular_tree:4").branching == 4);
  CHECK(FamilyDescriptor::parse("lattice:3").to_string() == "lattice:3");
  CHECK_THROWS(FamilyDescriptor::parse("torus:2"));
  CHECK_THROWS(FamilyDescriptor::parse("lattice:0"));
}

TEST_CASE("materialize counts internal and halo edges") {
  const auto g1 = testing::lattice(1);
  const auto path = testing::interval(-1, 1);
  const auto r1 = materialize(*g1, path);
  CHECK(r1.internal_edge_count() == 2);
  CHECK(r1.halo_edge_count() == 2);

  const VertexId origin = z2(0, 0);
  const auto r2 = materialize(*testing::lattice(2), std::span<const VertexId>(&origin, 1));
  CHECK(r2.internal_edge_count() == 0);
  CHECK(r2.halo_edge_count() == 4);

  const std::vector<VertexId> star{VertexId::root(), VertexId::word({0}), VertexId::word({1}),
                                   VertexId::word({2})};
  const auto r3 = materialize(*testing::tree(3), star);
  CHECK(r3.internal_edge_count() == 3);
  CHECK(r3.halo_edge_count() == 6);

  const std::vector<VertexId> dup{z(0), z(0)};
  CHECK_THROWS_AS(materialize(*g1, dup), PreconditionError);
}

TEST_CASE("validate_region reports injected defects") {
  const VertexId a = VertexId::token("a"), b = VertexId::token("b");
  using Arc = GraphRegion::Arc;

  const auto asym = GraphRegion::from_parts({a, b}, {{Arc{1, 1.0}}, {Arc{0, 2.0}}}, {{}, {}}, {1.0, 1.0});
  const auto r1 = validate_region(asym);
  CHECK_FALSE(r1.passed());
  CHECK(std::any_of(r1.messages().begin(), r1.messages().end(),
                    [](const std::string& m) { return m.find("symmetr") != std::string::npos; }));

  const auto zero_mu = GraphRegion::from_parts({a, b}, {{Arc{1, 1.0}}, {Arc{0, 1.0}}}, {{}, {}}, {1.0, 0.0});
  const auto r2 = validate_region(zero_mu);
  CHECK_FALSE(r2.passed());
  CHECK(std::any_of(r2.messages().begin(), r2.messages().end(),
                    [](const std::string& m) { return m.find("measure") != std::string::npos; }));

  // the same defect injected through an oracle graph
  FunctionGraph bad(
      [](const VertexId& x) {
        const auto n = x.coords()[0];
        return std::vector<Neighbor>{{z(n - 1), n == 1 ? 3.0 : 1.0}, {z(n + 1), 1.0}};
      },
      [](const VertexId&) { return 1.0; }, z(0), VertexId::Shape::Lattice);
  const auto vs = testing::interval(-3, 3);
  CHECK_FALSE(validate_region(materialize(bad, vs)).passed());
}

TEST_CASE("connectivity is checked inside the region when asked") {
  const auto g = testing::lattice(1);
  const std::vector<VertexId> gap{z(0), z(1), z(5)};
  RegionValidation opts;
  opts.require_connected = true;
  CHECK_FALSE(validate_region(materialize(*g, gap), opts).passed());
  CHECK(validate_region(materialize(*g, gap)).passed());
}

// --- properties --------------------------------------------------------------

TEST_CASE("property: built-in regions validate and degrees match the family") {
  Rng rng(11);
  struct Case {
    GraphPtr g;
    double deg;
  };
  const std::vector<Case> cases{{testing::lattice(1), 2.0}, {testing::lattice(2), 4.0},
                                {testing::lattice(3), 6.0}, {testing::tree(3), 3.0},
                                {testing::tree(4), 4.0}};
  for (const auto& c : cases) {
    for (int trial = 0; trial < 10; ++trial) {
      const VertexId base = c.g->base_vertex();
      auto vs = neighborhood(*c.g, std::span<const VertexId>(&base, 1), 1 + static_cast<int>(rng.index(4)));
      // random subset keeps the region irregular
      std::vector<VertexId> subset;
      for (const auto& v : vs)
        if (rng.uniform() < 0.7) subset.push_back(v);
      if (subset.empty()) subset.push_back(base);
      const auto region = materialize(*c.g, subset);
      CHECK(validate_region(region).passed());
      for (const auto& v : subset) CHECK(degree(*c.g, v).deg == c.deg);

      // halo arcs are exactly the arcs leaving the set
      const std::set<VertexId> inside(subset.begin(), subset.end());
      for (std::size_t i = 0; i < region.size(); ++i) {
        for (const auto& h : region.halo(i)) CHECK_FALSE(inside.count(h.target));
        CHECK(region.internal(i).size() + region.halo(i).size() == c.g->neighbors(region.vertex(i)).size());
      }

      // determinism: same set, same region
      auto shuffled = subset;
      std::reverse(shuffled.begin(), shuffled.end());
      const auto again = materialize(*c.g, shuffled);
      REQUIRE(again.size() == region.size());
      for (std::size_t i = 0; i < region.size(); ++i) CHECK(again.vertex(i) == region.vertex(i));
    }
  }
}

TEST_CASE("property: oracles are pure") {
  const auto g = testing::tree(3);
  const VertexId v = VertexId::word({2, 0, 1});
  const auto first = g->neighbors(v);
  for (int k = 0; k < 5; ++k) {
    const auto again = g->neighbors(v);
    REQUIRE(again.size() == first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      CHECK(again[i].vertex == first[i].vertex);
      CHECK(again[i].weight == first[i].weight);
    }
  }
}
