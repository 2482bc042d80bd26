#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fanlab/cone.hpp"
#include "fanlab/errors.hpp"

using namespace fanlab;

namespace {

IntVec ivec(const std::vector<int>& v) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

RatVec rvec(const std::vector<int>& v) { return to_rat(ivec(v)); }

RatCone cone2(const std::vector<std::vector<int>>& gens) {
  std::vector<IntVec> g;
  for (const auto& v : gens) g.push_back(ivec(v));
  return RatCone::from_generators(gens.empty() ? 2 : gens[0].size(), g);
}

}  // namespace

TEST_CASE("canonical form drops redundant generators") {
  RatCone c = cone2({{1, 0}, {1, 1}, {0, 1}, {2, 0}});
  CHECK(c.extreme_rays() == std::vector<IntVec>{ivec({0, 1}), ivec({1, 0})});
  CHECK(c.is_strictly_convex());
  CHECK(c.dim() == 2);
  CHECK(c == cone2({{0, 1}, {1, 0}}));
}

TEST_CASE("dual cone: pinned examples") {
  RatCone orthant = cone2({{1, 0}, {0, 1}});
  CHECK(dual_cone(orthant) == orthant);

  RatCone zero = RatCone::zero(2);
  CHECK(dual_cone(zero) == RatCone::full_space(2));

  RatCone halfplane = cone2({{1, 0}, {0, 1}, {0, -1}});
  RatCone ray = cone2({{1, 0}});
  CHECK(dual_cone(halfplane) == ray);
  CHECK(dual_cone(ray) == halfplane);
}

TEST_CASE("faces: pinned examples") {
  RatCone orthant = cone2({{1, 0}, {0, 1}});
  std::vector<RatCone> edges = orthant.faces(1);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == cone2({{0, 1}}));
  CHECK(edges[1] == cone2({{1, 0}}));

  RatCone simplicial = cone2({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(simplicial.faces(0).size() == 1);
  CHECK(simplicial.faces(1).size() == 3);
  CHECK(simplicial.faces(2).size() == 3);
  CHECK(simplicial.faces(3).size() == 1);
  CHECK(simplicial.all_faces().size() == 8);

  RatCone square = cone2({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  CHECK(square.dim() == 3);
  CHECK(square.extreme_rays().size() == 4);
  CHECK(square.faces(2).size() == 4);
}

TEST_CASE("membership: pinned examples") {
  RatCone orthant = cone2({{1, 0}, {0, 1}});
  CHECK(membership(orthant, rvec({1, 1}), Membership::RelativeInterior));
  CHECK_FALSE(membership(orthant, rvec({1, 0}), Membership::RelativeInterior));
  CHECK(membership(orthant, rvec({1, 0}), Membership::Closed));
  CHECK_FALSE(membership(orthant, rvec({-1, 0}), Membership::Closed));

  // relative interior is taken within the span
  RatCone edge = cone2({{1, 0}});
  CHECK(membership(edge, rvec({2, 0}), Membership::RelativeInterior));
  CHECK_FALSE(membership(edge, rvec({0, 0}), Membership::RelativeInterior));
  CHECK(membership(edge, rvec({0, 0}), Membership::Closed));
  CHECK_FALSE(membership(edge, rvec({1, 1}), Membership::Closed));

  // the relative interior of {0} and of a subspace contains 0
  CHECK(RatCone::zero(2).contains(rvec({0, 0}), Membership::RelativeInterior));
  CHECK(RatCone::full_space(2).contains(rvec({0, 0}), Membership::RelativeInterior));
}

TEST_CASE("strict convexity: pinned examples") {
  CHECK_FALSE(cone2({{1, 0}, {-1, 0}}).is_strictly_convex());
  CHECK(cone2({{1, 0}, {0, 1}}).is_strictly_convex());
  CHECK(RatCone::zero(2).is_strictly_convex());
}

TEST_CASE("from_inequalities round trip") {
  RatCone c = cone2({{1, 0}, {1, 2}});
  RatCone back = RatCone::from_inequalities(2, c.facet_normals(), c.span_equations());
  CHECK(back == c);

  RatCone wedge = RatCone::from_inequalities(2, {ivec({0, 1}), ivec({1, -1})});
  CHECK(wedge == cone2({{1, 0}, {1, 1}}));

  // inconsistent-looking strict data still yields the apex
  RatCone apex = RatCone::from_inequalities(2, {ivec({1, 0}), ivec({-1, 0}), ivec({0, 1}), ivec({0, -1})});
  CHECK(apex == RatCone::zero(2));
}

TEST_CASE("lineality handling") {
  RatCone halfplane = cone2({{1, 0}, {0, 1}, {0, -1}});
  CHECK_FALSE(halfplane.is_strictly_convex());
  CHECK(halfplane.lineality_basis() == std::vector<IntVec>{ivec({0, 1})});
  CHECK(halfplane.extreme_rays() == std::vector<IntVec>{ivec({1, 0})});
  CHECK(halfplane.dim() == 2);

  // generators of a skewed half-plane are canonicalized mod lineality
  RatCone skew = cone2({{1, 1}, {0, 1}, {0, -1}});
  CHECK(skew == halfplane);

  RatCone line = cone2({{1, 2}, {-1, -2}});
  CHECK(line.dim() == 1);
  CHECK(line.extreme_rays().empty());
  CHECK(line.contains(rvec({2, 4}), Membership::RelativeInterior));
  CHECK_FALSE(line.contains(rvec({1, 0}), Membership::Closed));
}

TEST_CASE("is_face_of") {
  RatCone orthant = cone2({{1, 0}, {0, 1}});
  CHECK(is_face_of(orthant, orthant));
  CHECK(is_face_of(cone2({{1, 0}}), orthant));
  CHECK(is_face_of(RatCone::zero(2), orthant));
  CHECK_FALSE(is_face_of(cone2({{1, 1}}), orthant));

  RatCone halfplane = cone2({{1, 0}, {0, 1}, {0, -1}});
  CHECK_FALSE(is_face_of(RatCone::zero(2), halfplane));  // minimal face is the line
  CHECK(is_face_of(cone2({{0, 1}, {0, -1}}), halfplane));
}

TEST_CASE("random cones: duality, faces, membership are mutually consistent") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> ent(-4, 4);
  std::uniform_int_distribution<int> count(1, 5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<IntVec> gens;
    int k = count(rng);
    for (int i = 0; i < k; ++i) {
      IntVec g = {ent(rng), ent(rng), ent(rng)};
      if (!is_zero(g)) gens.push_back(g);
    }
    RatCone c = RatCone::from_generators(3, gens);

    // input generators are members; extreme rays are among the inputs' hull
    for (const IntVec& g : gens) CHECK(c.contains(g, Membership::Closed));

    CHECK(dual_cone(dual_cone(c)) == c);

    RatVec p = c.relative_interior_point();
    CHECK(c.contains(p, Membership::RelativeInterior));

    std::vector<RatCone> fs = c.all_faces();
    for (const RatCone& f : fs) {
      CHECK(is_face_of(f, c));
      // every face of a face shows up in the face list
      for (const RatCone& g : f.all_faces())
        CHECK(std::find(fs.begin(), fs.end(), g) != fs.end());
      // interior membership implies closed membership
      RatVec q = f.relative_interior_point();
      CHECK(f.contains(q, Membership::RelativeInterior));
      CHECK(f.contains(q, Membership::Closed));
      CHECK(c.contains(q, Membership::Closed));
    }

    // canonical form is insensitive to generator order and scaling
    std::vector<IntVec> shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (IntVec& g : shuffled)
      for (Int& x : g) x *= 3;
    CHECK(RatCone::from_generators(3, shuffled) == c);
  }
}

TEST_CASE("intersection and sum") {
  RatCone a = cone2({{1, 0}, {1, 2}});
  RatCone b = cone2({{2, 1}, {-1, 1}});
  RatCone meet = intersect_cones(a, b);
  CHECK(meet == cone2({{2, 1}, {1, 2}}));
  RatCone join = sum_cones(a, b);
  CHECK(join == cone2({{1, 0}, {-1, 1}}));
  CHECK(join.contains_cone(a));
  CHECK(join.contains_cone(b));
  CHECK(a.contains_cone(meet));
  CHECK(b.contains_cone(meet));
}
