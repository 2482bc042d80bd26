#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fanlab/divisors.hpp"
#include "fanlab/errors.hpp"
#include "fanlab/toric_intersect.hpp"
#include "fixtures.hpp"

using namespace fanlab;
using namespace fixtures;

namespace {

Rat rat(long n, long d = 1) { return make_rat(Int(n), Int(d)); }

// Linear extension of divisor_dot_orbit to cycle classes, for the fold
// invariant below.
CycleClass apply_divisor(const ColoredFan& fan, std::size_t ray, const CycleClass& c) {
  CycleClass out;
  out.codim = c.codim + 1;
  for (const auto& [tau, coeff] : c.terms)
    for (const auto& [gamma, coeff2] : divisor_dot_orbit(fan, ray, tau).terms) {
      Rat& slot = out.terms[gamma];
      slot += coeff * coeff2;
      if (slot == 0) out.terms.erase(gamma);
    }
  return out;
}

// Every cone key of the fan, as subsets of maximal-cone ray lists.
std::vector<ConeKey> all_keys(const ColoredFan& fan) {
  std::set<ConeKey> keys;
  for (const auto& mc : fan.maximal_cones) {
    const auto& r = mc.ray_indices;
    for (std::size_t mask = 0; mask < (std::size_t{1} << r.size()); ++mask) {
      ConeKey key;
      for (std::size_t i = 0; i < r.size(); ++i)
        if (mask & (std::size_t{1} << i)) key.push_back(r[i]);
      keys.insert(std::move(key));
    }
  }
  return {keys.begin(), keys.end()};
}

}  // namespace

TEST_CASE("cone multiplicities") {
  ColoredFan fan = p2().fan;
  CHECK(cone_multiplicity(fan, {}) == 1);
  CHECK(cone_multiplicity(fan, {0, 1}) == 1);
  CHECK(cone_multiplicity(fan, {1, 2}) == 1);

  fan = p112().fan;
  CHECK(cone_multiplicity(fan, {0, 2}) == 2);  // (1,0),(-1,-2)
  CHECK(cone_multiplicity(fan, {1, 2}) == 1);
  CHECK(cone_multiplicity(fan, {2}) == 1);

  CHECK_THROWS_WITH_AS(cone_multiplicity(cube().fan, {0, 1, 2, 3}),
                       doctest::Contains("Q-factorial"), Error);
  CHECK_THROWS_WITH_AS(cone_multiplicity(incidence().fan, {0}), doctest::Contains("toric"),
                       Error);
  CHECK_THROWS_AS(cone_multiplicity(p2().fan, {0, 7}), Error);       // out of range
  CHECK_THROWS_AS(cone_multiplicity(p2().fan, {1, 0}), Error);       // not ascending
  CHECK_THROWS_AS(cone_multiplicity(p1xp1().fan, {0, 2}), Error);    // not a cone
}

TEST_CASE("transverse products") {
  ColoredFan fan = p112().fan;
  CycleClass c = transverse_product(fan, {0}, {1});
  CHECK(c.codim == 2);
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms.at({0, 1}) == 1);

  c = transverse_product(fan, {0}, {2});  // gamma has multiplicity 2
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms.at({0, 2}) == rat(1, 2));

  c = transverse_product(p2().fan, {0}, {1});
  CHECK(c.terms.at({0, 1}) == 1);

  c = transverse_product(p1xp1().fan, {0}, {2});  // opposite rays span no cone
  CHECK(c.codim == 2);
  CHECK(c.terms.empty());

  CHECK_THROWS_WITH_AS(transverse_product(p2().fan, {0, 1}, {1}), doctest::Contains("share"),
                       Error);
}

TEST_CASE("divisor times orbit closure") {
  // transverse case
  CycleClass c = divisor_dot_orbit(p2().fan, 0, {1});
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms.at({0, 1}) == 1);

  // the (-1)-section of f1 against its own divisor
  c = divisor_dot_orbit(f1().fan, 1, {1});
  CHECK(c.codim == 2);
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms.at({1, 2}) == -1);

  // fiber of p1xp1 against itself: both adjacent coefficients vanish
  c = divisor_dot_orbit(p1xp1().fan, 0, {0});
  CHECK(c.terms.empty());

  // singular surface: rational coefficient from the multiplicity-2 cone
  c = divisor_dot_orbit(p112().fan, 0, {0});
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms.at({0, 2}) == rat(1, 2));

  ColoredFan orthant = toric(2, {vec({1, 0}), vec({0, 1})}, {{0, 1}}).fan;
  CHECK_THROWS_WITH_AS(divisor_dot_orbit(orthant, 0, {1}), doctest::Contains("complete"),
                       Error);
}

TEST_CASE("intersection numbers") {
  ColoredFan fan = p2().fan;
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(intersection_number(fan, {i, i}) == 1);
  CHECK(intersection_number(fan, {0, 1}) == 1);
  CHECK(intersection_number(fan, {0}, {1}) == 1);

  fan = p1xp1().fan;
  CHECK(intersection_number(fan, {0, 1}) == 1);
  CHECK(intersection_number(fan, {0, 0}) == 0);
  CHECK(intersection_number(fan, {0, 2}) == 0);

  fan = f1().fan;
  CHECK(intersection_number(fan, {1, 1}) == -1);  // the (-1)-section
  CHECK(intersection_number(fan, {3, 3}) == 1);   // the (+1)-section
  CHECK(intersection_number(fan, {0, 1}) == 1);   // fiber . section

  fan = hirzebruch(2).fan;
  CHECK(intersection_number(fan, {1, 1}) == -2);

  fan = p112().fan;
  CHECK(intersection_number(fan, {0, 0}) == rat(1, 2));
  CHECK(intersection_number(fan, {1, 1}) == 2);
  CHECK(intersection_number(fan, {2, 2}) == rat(1, 2));

  fan = p1p1p1().fan;
  CHECK(intersection_number(fan, {0, 1, 4}) == 1);
  CHECK(intersection_number(fan, {0, 0, 4}) == 0);

  CHECK_THROWS_AS(intersection_number(p2().fan, {0}), Error);        // codim short
  CHECK_THROWS_AS(intersection_number(p2().fan, {0, 1, 2}), Error);  // codim exceeded
  CHECK_THROWS_AS(intersection_number(p2().fan, {9, 0}), Error);
}

TEST_CASE("intersection numbers are symmetric") {
  auto check_perms = [](const ColoredFan& fan, std::vector<std::size_t> rays) {
    std::sort(rays.begin(), rays.end());
    Rat first = intersection_number(fan, rays);
    do
      CHECK(intersection_number(fan, rays) == first);
    while (std::next_permutation(rays.begin(), rays.end()));
  };
  check_perms(f1().fan, {0, 1});
  check_perms(f1().fan, {1, 2});
  check_perms(p112().fan, {0, 2});
  check_perms(p1p1p1().fan, {0, 1, 4});
  check_perms(p1p1p1().fan, {0, 0, 4});
  check_perms(f1xp1().fan, {1, 1, 4});
}

TEST_CASE("folding the rays of a cone recovers its class over the multiplicity") {
  for (const auto& emb : {p2(), p1xp1(), f1(), hirzebruch(2), p112(), quadrant_diagonal(),
                          p1p1p1(), f1xp1()}) {
    const ColoredFan& fan = emb.fan;
    for (const ConeKey& tau : all_keys(fan)) {
      CycleClass cur;
      cur.codim = 0;
      cur.terms.emplace(ConeKey{}, Rat(1));
      for (std::size_t v : tau) cur = apply_divisor(fan, v, cur);
      REQUIRE(cur.terms.size() == 1);
      CHECK(cur.terms.at(tau) == Rat(1) / Rat(cone_multiplicity(fan, tau)));
    }
  }
}

TEST_CASE("nef-k equals psef-k on products of projective lines") {
  NefkResult r = nefk_eq_psefk(p2().fan, 1);
  CHECK(r.equal);
  CHECK_FALSE(r.certificate.has_value());

  CHECK(nefk_eq_psefk(p1xp1().fan, 1).equal);
  CHECK(nefk_eq_psefk(p112().fan, 1).equal);
  CHECK(nefk_eq_psefk(p1p1p1().fan, 1).equal);
  CHECK(nefk_eq_psefk(p1p1p1().fan, 2).equal);
}

TEST_CASE("nef-k violations are certified") {
  NefkResult r = nefk_eq_psefk(f1().fan, 1);
  CHECK_FALSE(r.equal);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->tau == ConeKey{1});
  CHECK(r.certificate->sigma == ConeKey{1});
  CHECK(r.certificate->value == -1);

  // the (-1)-section times the second factor, paired against the section
  r = nefk_eq_psefk(f1xp1().fan, 2);
  CHECK_FALSE(r.equal);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->tau == ConeKey{1, 4});
  CHECK(r.certificate->sigma == ConeKey{1});
  CHECK(r.certificate->value == -1);

  CHECK_FALSE(nefk_eq_psefk(f1xp1().fan, 1).equal);
  CHECK_FALSE(nefk_eq_psefk(hirzebruch(2).fan, 1).equal);
}

TEST_CASE("nef-k matches in complementary codimension") {
  for (std::size_t k : {1u, 2u}) {
    CHECK(nefk_eq_psefk(p1p1p1().fan, k).equal == nefk_eq_psefk(p1p1p1().fan, 3 - k).equal);
    CHECK(nefk_eq_psefk(f1xp1().fan, k).equal == nefk_eq_psefk(f1xp1().fan, 3 - k).equal);
  }
}

TEST_CASE("serial reference agrees with the parallel kernel") {
  auto same = [](const NefkResult& a, const NefkResult& b) {
    if (a.equal != b.equal) return false;
    if (a.certificate.has_value() != b.certificate.has_value()) return false;
    if (!a.certificate) return true;
    return a.certificate->tau == b.certificate->tau &&
           a.certificate->sigma == b.certificate->sigma &&
           a.certificate->value == b.certificate->value;
  };
  CHECK(same(nefk_eq_psefk(p1p1p1().fan, 1), nefk_eq_psefk_serial(p1p1p1().fan, 1)));
  CHECK(same(nefk_eq_psefk(p1p1p1().fan, 2), nefk_eq_psefk_serial(p1p1p1().fan, 2)));
  CHECK(same(nefk_eq_psefk(f1xp1().fan, 2), nefk_eq_psefk_serial(f1xp1().fan, 2)));
  CHECK(same(nefk_eq_psefk(f1().fan, 1), nefk_eq_psefk_serial(f1().fan, 1)));
}

TEST_CASE("nef-k agrees with the divisor-level comparison") {
  struct Entry {
    HorosphericalEmbedding emb;
    std::vector<std::size_t> ks;
  };
  std::vector<Entry> entries = {{p2(), {1}},      {p1xp1(), {1}},  {f1(), {1}},
                                {hirzebruch(2), {1}}, {p1p1p1(), {1, 2}}, {f1xp1(), {1, 2}}};
  for (const Entry& e : entries) {
    bool divisor_level = nef1_eq_psef1(e.emb).equal;
    for (std::size_t k : e.ks) CHECK(nefk_eq_psefk(e.emb.fan, k).equal == divisor_level);
  }
}

TEST_CASE("products of nef divisors stay nef") {
  for (const auto& emb : {p1p1p1(), f1xp1()}) {
    const ColoredFan& fan = emb.fan;
    std::vector<std::size_t> nef_rays;
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
      if (positivity(emb, div({{B(i), Rat(1)}})).nef) nef_rays.push_back(i);
    REQUIRE(!nef_rays.empty());
    for (std::size_t i : nef_rays)
      for (std::size_t j : nef_rays)
        for (const auto& mc : fan.maximal_cones)
          for (std::size_t s : mc.ray_indices)
            CHECK(intersection_number(fan, {i, j}, {s}) >= 0);
  }
}

TEST_CASE("nef-k rejects unsuitable input") {
  CHECK_THROWS_AS(nefk_eq_psefk(p2().fan, 0), Error);
  CHECK_THROWS_AS(nefk_eq_psefk(p2().fan, 2), Error);
  CHECK_THROWS_WITH_AS(nefk_eq_psefk(cube().fan, 1), doctest::Contains("Q-factorial"), Error);
  CHECK_THROWS_WITH_AS(nefk_eq_psefk(incidence().fan, 1), doctest::Contains("toric"), Error);
  ColoredFan orthant = toric(2, {vec({1, 0}), vec({0, 1})}, {{0, 1}}).fan;
  CHECK_THROWS_WITH_AS(nefk_eq_psefk(orthant, 1), doctest::Contains("complete"), Error);
}
