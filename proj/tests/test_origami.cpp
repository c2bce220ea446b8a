#include <cmath>
#include <random>

#include "doctest.h"
#include "teich/error.hpp"
#include "teich/origami.hpp"

using namespace teich;

TEST_CASE("torus") {
  const auto t = origamis::torus();
  CHECK(t.n() == 1);
  CHECK(t.genus() == 1);
  CHECK(t.vertex_classes().size() == 1);
  CHECK(t.kappa() == std::vector<int>{1});
  CHECK(t.num_marked() == 1);
  CHECK(t.relative_dimension() == 2);
}

TEST_CASE("L-shaped origami lies in H(2)") {
  const auto x = origamis::l_shape();
  CHECK(x.genus() == 2);
  CHECK(x.vertex_classes().size() == 1);
  CHECK(x.kappa() == std::vector<int>{3});
  CHECK(x.relative_dimension() == 4);
  int excess = 0;
  for (int k : x.kappa()) excess += k - 1;
  CHECK(excess == 2 * x.genus() - 2);
}

TEST_CASE("stratum data of larger origamis") {
  // Four squares in a row with a twisted top: sigma_h = (1 2 3 4), sigma_v = (1 2).
  const auto x = Origami::build({1, 2, 3, 0}, {1, 0, 2, 3});
  int excess = 0;
  int total = 0;
  for (const auto& vc : x.vertex_classes()) {
    excess += vc.kappa - 1;
    total += vc.kappa;
  }
  CHECK(total == x.n());
  CHECK(excess == 2 * x.genus() - 2);
  // Two-square torus cover: genus 1, two regular vertices, both marked.
  const auto c = Origami::build({1, 0}, {0, 1});
  CHECK(c.genus() == 1);
  CHECK(c.vertex_classes().size() == 2);
  CHECK(c.num_marked() == 2);
  // H(1,1): sigma_h = (1 2 3 4), sigma_v = (1 3).
  const auto s = Origami::build({1, 2, 3, 0}, {2, 1, 0, 3});
  CHECK(s.genus() == 2);
  CHECK(s.kappa() == std::vector<int>{2, 2});
}

TEST_CASE("random origamis satisfy Euler and stratum invariants") {
  std::mt19937_64 rng(21);
  int built = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    Perm h(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) h[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] = i;
    std::shuffle(h.begin(), h.end(), rng);
    std::shuffle(v.begin(), v.end(), rng);
    try {
      const auto x = Origami::build(h, v);
      ++built;
      const int V = static_cast<int>(x.vertex_classes().size());
      CHECK(V - n == 2 - 2 * x.genus());
      int excess = 0;
      for (const auto& vc : x.vertex_classes()) excess += vc.kappa - 1;
      CHECK(excess == 2 * x.genus() - 2);
      for (int i = 0; i < n; ++i) {
        const int c = x.class_of(i);
        const auto& sq = x.vertex_classes()[static_cast<std::size_t>(c)].squares;
        CHECK(std::find(sq.begin(), sq.end(), i) != sq.end());
      }
    } catch (const InvalidInput&) {
      // Non-transitive draws are rejected.
    }
  }
  CHECK(built > 50);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Origami::build({1, 0, 2}, {0, 1, 2}), InvalidInput);  // square 3 unreachable
  CHECK_THROWS_AS(Origami::build({0, 0}, {0, 1}), InvalidInput);
  CHECK_THROWS_AS(Origami::build({0}, {0, 1}), InvalidInput);
  CHECK_THROWS_AS(Origami::build({}, {}), InvalidInput);
  CHECK_THROWS_AS(Origami::build({0}, {0}, GroupElement{1, 0, 0, -1}), InvalidInput);
}

TEST_CASE("apply_element") {
  const auto x = origamis::l_shape();
  const auto same = apply_element(x, GroupElement::identity());
  CHECK(same.deformation() == x.deformation());
  CHECK(same.combinatorial_id() == x.combinatorial_id());
  const GroupElement m1 = geodesic(0.3) * horocycle(0.2), m2 = rotation(1.1) * geodesic(-0.4);
  const auto a = apply_element(apply_element(x, m1), m2);
  const auto b = apply_element(x, m2 * m1);
  CHECK(a.deformation().max_abs_diff(b.deformation()) < 1e-15);
  CHECK_THROWS_AS(apply_element(x, GroupElement{0, 1, 1, 0}), InvalidInput);
  CHECK(a.sigma_h() == x.sigma_h());
  CHECK(a.sigma_v() == x.sigma_v());
}

TEST_CASE("origami text format") {
  const auto x = parse_origami("3; (1 2); (1 3); 1 0 0 1");
  CHECK(x.sigma_h() == Perm{1, 0, 2});
  CHECK(x.sigma_v() == Perm{2, 1, 0});
  CHECK(x.genus() == 2);
  const auto y = parse_origami("1; ; ");
  CHECK(y.genus() == 1);
  const auto z = parse_origami(" 3 ; (1,2)(3) ; (1 3) ; 2 0 0 0.5 ");
  CHECK(z.deformation() == GroupElement{2, 0, 0, 0.5});
  CHECK(format_cycles(x.sigma_h()) == "(1 2)(3)");
  CHECK(parse_cycles(format_cycles(Perm{2, 0, 1, 3}), 4) == Perm{2, 0, 1, 3});
  CHECK_THROWS_AS(parse_origami("3; (1 2); ()"), InvalidInput);
  CHECK_THROWS_AS(parse_origami("3; (1 2; (1 3)"), InvalidInput);
  CHECK_THROWS_AS(parse_origami("3; (1 4); (1 3)"), InvalidInput);
  CHECK_THROWS_AS(parse_origami("3; (1 1); (1 3)"), InvalidInput);
  CHECK_THROWS_AS(parse_origami("x; (1 2); (1 3)"), InvalidInput);
  CHECK_THROWS_AS(parse_origami("3; (1 2); (1 3); 1 0 0"), InvalidInput);
  CHECK_THROWS_AS(parse_origami("3; (1 2); (1 3); 0 1 1 0"), InvalidInput);
}
