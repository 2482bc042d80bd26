#include "fanlab/horospherical.hpp"

#include "fanlab/errors.hpp"

namespace fanlab {

HorosphericalDatum toric_datum(std::size_t r) {
  HorosphericalDatum d;  // default diagram is already empty
  d.m_basis.assign(r, Weight{});
  return d;
}

ValidationReport validate_datum(const HorosphericalDatum& datum) {
  ValidationReport report;
  for (const std::string& node : datum.parabolic)
    if (!datum.diagram.has_node(node))
      report.issues.push_back({"datum-node", "parabolic set names unknown node " + node});
  for (std::size_t j = 0; j < datum.m_basis.size(); ++j)
    for (const auto& [node, coeff] : datum.m_basis[j]) {
      if (!datum.diagram.has_node(node)) {
        report.issues.push_back(
            {"datum-node", "basis weight " + std::to_string(j) + " names unknown node " + node});
      } else if (datum.parabolic.count(node) && coeff != 0) {
        report.issues.push_back(
            {"datum-pairing", "basis weight " + std::to_string(j) +
                                  " pairs nonzero with parabolic node " + node});
      }
    }
  return report;
}

void require_valid_datum(const HorosphericalDatum& datum) {
  ValidationReport r = validate_datum(datum);
  if (!r.ok())
    fail(ErrorCode::InvalidDatum, r.issues.front().axiom + ": " + r.issues.front().detail);
}

ColorData color_rho(const HorosphericalDatum& datum) {
  require_valid_datum(datum);
  ColorData out;
  for (const std::string& node : datum.diagram.nodes()) {
    if (datum.parabolic.count(node)) continue;
    IntVec v;
    for (const Weight& chi : datum.m_basis) v.push_back(pairing(datum.diagram, chi, node));
    if (is_zero(v)) out.d0.insert(node);
    out.rho.emplace(node, std::move(v));
  }
  return out;
}

ValidationReport validate_embedding(const HorosphericalEmbedding& emb) {
  ValidationReport report = validate_datum(emb.datum);
  if (!report.ok()) return report;

  if (emb.fan.lattice_rank != emb.datum.rank())
    report.issues.push_back({"rank", "fan lattice rank differs from the datum rank"});
  if (emb.fan.valuation_mode != ValuationMode::FullSpace)
    report.issues.push_back({"valuation-mode", "embedding fans use the full-space valuation cone"});

  ColorData colors = color_rho(emb.datum);
  for (const auto& [label, rho] : emb.fan.color_table) {
    auto it = colors.rho.find(label);
    if (it == colors.rho.end())
      report.issues.push_back({"color-label", "color " + label + " is not a color of G/H"});
    else if (it->second != rho)
      report.issues.push_back({"color-rho", "color " + label + " has the wrong rho value"});
  }
  for (const auto& [label, rho] : colors.rho)
    if (!emb.fan.color_table.count(label))
      report.issues.push_back({"color-table", "color " + label + " missing from the fan"});
  if (!report.ok()) return report;

  ValidationReport fan_report = validate(emb.fan);
  report.issues.insert(report.issues.end(), fan_report.issues.begin(), fan_report.issues.end());
  return report;
}

void require_valid_embedding(const HorosphericalEmbedding& emb) {
  require_valid_datum(emb.datum);
  ValidationReport r = validate_embedding(emb);
  if (!r.ok())
    fail(ErrorCode::InvalidFan, r.issues.front().axiom + ": " + r.issues.front().detail);
}

std::size_t orbit_dimension(const HorosphericalEmbedding& emb, const RatCone& cone) {
  require_valid_embedding(emb);
  auto fc = find_cone(emb.fan, cone);
  if (!fc) fail(ErrorCode::ConeNotInFan, "cone does not belong to the fan");
  NodeSet isotropy = emb.datum.parabolic;
  isotropy.insert(fc->colors.begin(), fc->colors.end());
  return (emb.datum.rank() - cone.dim()) + dim_flag(emb.datum.diagram, isotropy);
}

std::size_t picard_number(const HorosphericalEmbedding& emb) {
  require_valid_embedding(emb);
  if (!support_and_walls(emb.fan).complete)
    fail(ErrorCode::NotComplete, "Picard number requires a complete fan");
  if (!factoriality_profile(emb.fan).q_factorial)
    fail(ErrorCode::NotQFactorial, "Picard number requires a Q-factorial fan");
  std::size_t unattached = emb.fan.color_table.size() - emb.fan.attached_colors().size();
  return emb.fan.rays.size() - emb.datum.rank() + unattached;
}

}  // namespace fanlab
