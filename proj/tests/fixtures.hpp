#pragma once

// Embeddings used across the test suites; all values are small enough to
// verify by hand.

#include <initializer_list>
#include <vector>

#include "fanlab/horospherical.hpp"

namespace fixtures {

inline fanlab::IntVec vec(std::initializer_list<long> xs) {
  fanlab::IntVec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline fanlab::HorosphericalEmbedding toric(
    std::size_t rank, std::vector<fanlab::IntVec> rays,
    std::vector<std::vector<std::size_t>> cones) {
  fanlab::HorosphericalEmbedding emb;
  emb.datum = fanlab::toric_datum(rank);
  emb.fan.lattice_rank = rank;
  emb.fan.rays = std::move(rays);
  for (auto& c : cones) emb.fan.maximal_cones.push_back({std::move(c), {}});
  return emb;
}

inline fanlab::HorosphericalEmbedding p2() {
  return toric(2, {vec({1, 0}), vec({0, 1}), vec({-1, -1})}, {{0, 1}, {0, 2}, {1, 2}});
}

inline fanlab::HorosphericalEmbedding p112() {
  return toric(2, {vec({1, 0}), vec({0, 1}), vec({-1, -2})}, {{0, 1}, {0, 2}, {1, 2}});
}

inline fanlab::HorosphericalEmbedding p1xp1() {
  return toric(2, {vec({1, 0}), vec({0, 1}), vec({-1, 0}), vec({0, -1})},
               {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

// Hirzebruch surface of parameter a (a = 1 is the one-point blowup of p2).
inline fanlab::HorosphericalEmbedding hirzebruch(long a) {
  return toric(2, {vec({1, 0}), vec({0, 1}), vec({-1, a}), vec({0, -1})},
               {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

inline fanlab::HorosphericalEmbedding f1() { return hirzebruch(1); }

// Quotient lattice example: four diagonal rays, class group Z^2 + Z/2.
inline fanlab::HorosphericalEmbedding quadrant_diagonal() {
  return toric(2, {vec({1, 1}), vec({1, -1}), vec({-1, 1}), vec({-1, -1})},
               {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

// Complete but not Q-factorial: the fan over the faces of the cube.
inline fanlab::HorosphericalEmbedding cube() {
  fanlab::HorosphericalEmbedding emb;
  emb.datum = fanlab::toric_datum(3);
  emb.fan.lattice_rank = 3;
  for (long x : {-1, 1})
    for (long y : {-1, 1})
      for (long z : {-1, 1}) emb.fan.rays.push_back(vec({x, y, z}));
  emb.fan.maximal_cones = {{{0, 1, 2, 3}, {}}, {{4, 5, 6, 7}, {}}, {{0, 1, 4, 5}, {}},
                           {{2, 3, 6, 7}, {}}, {{0, 2, 4, 6}, {}}, {{1, 3, 5, 7}, {}}};
  return emb;
}

// Product of two toric embeddings: block-diagonal rays, one maximal cone per
// pair of factors.
inline fanlab::HorosphericalEmbedding product(const fanlab::HorosphericalEmbedding& a,
                                              const fanlab::HorosphericalEmbedding& b) {
  const std::size_t ra = a.fan.lattice_rank;
  const std::size_t rb = b.fan.lattice_rank;
  fanlab::HorosphericalEmbedding emb;
  emb.datum = fanlab::toric_datum(ra + rb);
  emb.fan.lattice_rank = ra + rb;
  for (const auto& v : a.fan.rays) {
    fanlab::IntVec w = v;
    w.resize(ra + rb, fanlab::Int(0));
    emb.fan.rays.push_back(std::move(w));
  }
  for (const auto& v : b.fan.rays) {
    fanlab::IntVec w(ra, fanlab::Int(0));
    w.insert(w.end(), v.begin(), v.end());
    emb.fan.rays.push_back(std::move(w));
  }
  for (const auto& ca : a.fan.maximal_cones)
    for (const auto& cb : b.fan.maximal_cones) {
      std::vector<std::size_t> idx = ca.ray_indices;
      for (std::size_t i : cb.ray_indices) idx.push_back(i + a.fan.rays.size());
      emb.fan.maximal_cones.push_back({std::move(idx), {}});
    }
  return emb;
}

inline fanlab::HorosphericalEmbedding p1() {
  return toric(1, {vec({1}), vec({-1})}, {{0}, {1}});
}

inline fanlab::HorosphericalEmbedding p1p1p1() { return product(p1xp1(), p1()); }

inline fanlab::HorosphericalEmbedding f1xp1() { return product(f1(), p1()); }

// The rank-one A4 example: I = {a4}, M = Z(omega_2 - omega_3), both rays
// colored.
inline fanlab::HorosphericalEmbedding incidence() {
  fanlab::HorosphericalEmbedding emb;
  emb.datum.diagram = fanlab::DynkinDiagram({{'A', 4}});
  emb.datum.parabolic = {"a4"};
  emb.datum.m_basis = {{{"a2", fanlab::Int(1)}, {"a3", fanlab::Int(-1)}}};
  emb.fan.lattice_rank = 1;
  emb.fan.rays = {vec({1}), vec({-1})};
  emb.fan.color_table = {{"a1", vec({0})}, {"a2", vec({1})}, {"a3", vec({-1})}};
  emb.fan.maximal_cones = {{{0}, {"a2"}}, {{1}, {"a3"}}};
  return emb;
}

// Same fan with the positive ray uncolored.
inline fanlab::HorosphericalEmbedding incidence_blowup() {
  fanlab::HorosphericalEmbedding emb = incidence();
  emb.fan.maximal_cones[0].colors.clear();
  return emb;
}

// P^1 x P^1 as a rank-two embedding under SL2 x SL2, each factor's color
// attached on one side of its axis.
inline fanlab::HorosphericalEmbedding p1xp1_colored() {
  fanlab::HorosphericalEmbedding emb;
  emb.datum.diagram = fanlab::DynkinDiagram({{'A', 1}, {'A', 1}});
  emb.datum.m_basis = {{{"a1", fanlab::Int(1)}}, {{"b1", fanlab::Int(1)}}};
  emb.fan.lattice_rank = 2;
  emb.fan.rays = {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})};
  emb.fan.color_table = {{"a1", vec({1, 0})}, {"b1", vec({0, 1})}};
  emb.fan.maximal_cones = {
      {{0, 2}, {"a1", "b1"}}, {{0, 3}, {"a1"}}, {{1, 2}, {"b1"}}, {{1, 3}, {}}};
  return emb;
}

// The same fan under A3 with the middle color mapping to zero: dropping a2
// leaves two A1 components, one per lattice axis.
inline fanlab::HorosphericalEmbedding reducible_product() {
  fanlab::HorosphericalEmbedding emb;
  emb.datum.diagram = fanlab::DynkinDiagram({{'A', 3}});
  emb.datum.m_basis = {{{"a1", fanlab::Int(1)}}, {{"a3", fanlab::Int(1)}}};
  emb.fan.lattice_rank = 2;
  emb.fan.rays = {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})};
  emb.fan.color_table = {
      {"a1", vec({1, 0})}, {"a2", vec({0, 0})}, {"a3", vec({0, 1})}};
  emb.fan.maximal_cones = {
      {{0, 2}, {"a1", "a3"}}, {{0, 3}, {"a1"}}, {{1, 2}, {"a3"}}, {{1, 3}, {}}};
  return emb;
}

// The full flag SL2/B = P^1: rank zero, one color with nowhere to go.
inline fanlab::HorosphericalEmbedding flag_p1() {
  fanlab::HorosphericalEmbedding emb;
  emb.datum.diagram = fanlab::DynkinDiagram({{'A', 1}});
  emb.fan.lattice_rank = 0;
  emb.fan.color_table = {{"a1", fanlab::IntVec{}}};
  emb.fan.maximal_cones = {{{}, {}}};
  return emb;
}

inline fanlab::BDivisor div(
    std::initializer_list<std::pair<fanlab::DivisorId, fanlab::Rat>> coeffs) {
  fanlab::BDivisor d;
  for (const auto& [id, c] : coeffs) d.coefficients[id] = c;
  return d;
}

inline fanlab::DivisorId B(std::size_t i) { return fanlab::DivisorId::boundary(i); }
inline fanlab::DivisorId C(const char* label) { return fanlab::DivisorId::color_divisor(label); }

}  // namespace fixtures
