// fanlab: command-line frontend over the library. One verb per run; input is
// a fan document (--input) or a built-in example (--catalog). All numbers on
// the wire are exact: text prints GMP rationals, JSON carries them as
// {"num","den"} strings.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fanlab/classify.hpp"
#include "fanlab/colored_fan.hpp"
#include "fanlab/divisors.hpp"
#include "fanlab/errors.hpp"
#include "fanlab/horospherical.hpp"
#include "fanlab/io.hpp"
#include "fanlab/mori.hpp"
#include "fanlab/toric_intersect.hpp"

using json = nlohmann::json;
using namespace fanlab;

namespace {

json rat_json(const Rat& q) {
  return {{"den", q.get_den().get_str()}, {"num", q.get_num().get_str()}};
}

json intvec_json(const IntVec& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(x.get_str());
  return a;
}

std::string vec_str(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string ratvec_str(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string divisor_label(const DivisorId& d) {
  return d.kind == DivisorId::Kind::Boundary ? "B" + std::to_string(d.ray_index)
                                             : "D(" + d.color + ")";
}

BDivisor unit_divisor(const DivisorId& d) {
  BDivisor out;
  out.coefficients[d] = 1;
  return out;
}

std::pair<std::string, std::map<std::string, long>> split_catalog_spec(
    const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::map<std::string, long> params;
  if (colon == std::string::npos) return {name, params};
  std::istringstream rest(spec.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::BadParams, "expected key=value in catalog spec, got '" + item + "'");
    try {
      std::size_t used = 0;
      long value = std::stol(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      params[item.substr(0, eq)] = value;
    } catch (const std::exception&) {
      fail(ErrorCode::BadParams, "parameter '" + item + "' is not an integer assignment");
    }
  }
  return {name, params};
}

ParsedDocument load_input(const std::string& input_file, const std::string& catalog_spec) {
  if (!input_file.empty() && !catalog_spec.empty())
    fail(ErrorCode::BadParams, "pass --input or --catalog, not both");
  if (!input_file.empty()) {
    std::ifstream in(input_file);
    if (!in) fail(ErrorCode::BadParams, "cannot read '" + input_file + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_document(text.str());
  }
  if (!catalog_spec.empty()) {
    auto [name, params] = split_catalog_spec(catalog_spec);
    return catalog_document(name, params);
  }
  fail(ErrorCode::BadParams, "no input: pass --input FILE or --catalog NAME[:k=v,...]");
}

void require_embedding(const ParsedDocument& doc, const char* verb) {
  if (doc.mode == DocMode::SphericalValidateOnly)
    fail(ErrorCode::BadParams,
         std::string(verb) + " needs a toric or horospherical document");
}

const char* mode_name(DocMode m) {
  switch (m) {
    case DocMode::Toric: return "toric";
    case DocMode::Horospherical: return "horospherical";
    default: return "spherical-validate-only";
  }
}

void emit(bool as_json, const json& report, const std::string& text) {
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
}

int run_validate(const ParsedDocument& doc, bool as_json) {
  ValidationReport rep = doc.mode == DocMode::SphericalValidateOnly
                             ? validate(doc.embedding.fan)
                             : validate_embedding(doc.embedding);
  json issues = json::array();
  std::ostringstream text;
  text << "mode: " << mode_name(doc.mode) << "\n";
  for (const ValidationIssue& issue : rep.issues) {
    issues.push_back({{"axiom", issue.axiom}, {"detail", issue.detail}});
    text << issue.axiom << ": " << issue.detail << "\n";
  }
  if (rep.ok()) text << "OK\n";
  emit(as_json, {{"mode", mode_name(doc.mode)}, {"ok", rep.ok()}, {"issues", issues}},
       text.str());
  return rep.ok() ? 0 : 1;
}

int run_invariants(const ParsedDocument& doc, bool as_json) {
  require_embedding(doc, "invariants");
  const HorosphericalEmbedding& emb = doc.embedding;
  require_valid_embedding(emb);
  const ColoredFan& fan = emb.fan;

  bool complete = support_and_walls(fan).complete;
  FactorialityProfile prof = factoriality_profile(fan);
  std::size_t dimension = orbit_dimension(emb, RatCone::zero(fan.lattice_rank));

  json report{{"lattice_rank", fan.lattice_rank},
              {"dimension", dimension},
              {"rays", fan.rays.size()},
              {"colors", fan.color_table.size()},
              {"attached_colors", fan.attached_colors().size()},
              {"complete", complete},
              {"q_factorial", prof.q_factorial},
              {"locally_factorial", prof.locally_factorial}};
  std::ostringstream text;
  text << "lattice rank: " << fan.lattice_rank << "\n"
       << "dimension: " << dimension << "\n"
       << "rays: " << fan.rays.size() << "\n"
       << "colors: " << fan.color_table.size() << " (attached "
       << fan.attached_colors().size() << ")\n"
       << "complete: " << (complete ? "yes" : "no") << "\n"
       << "q-factorial: " << (prof.q_factorial ? "yes" : "no") << "\n"
       << "locally factorial: " << (prof.locally_factorial ? "yes" : "no") << "\n";

  if (complete) {
    ClassGroup cg = class_group(emb);
    json torsion = json::array();
    std::string torsion_text;
    for (const Int& t : cg.torsion) {
      torsion.push_back(t.get_str());
      torsion_text += (torsion_text.empty() ? "" : ", ") + ("Z/" + t.get_str());
    }
    report["class_group_free_rank"] = cg.free_rank;
    report["class_group_torsion"] = torsion;
    text << "class group: Z^" << cg.free_rank
         << (torsion_text.empty() ? "" : " + " + torsion_text) << "\n";
    if (prof.q_factorial) {
      std::size_t picard = picard_number(emb);
      report["picard_number"] = picard;
      text << "picard number: " << picard << "\n";
    }
  }
  emit(as_json, report, text.str());
  return 0;
}

int run_divisors(const ParsedDocument& doc, bool as_json) {
  require_embedding(doc, "divisors");
  const HorosphericalEmbedding& emb = doc.embedding;
  require_valid_embedding(emb);

  ClassGroup cg = class_group(emb);
  std::vector<DivisorId> basis = picard_basis(emb);
  json divisors = json::array();
  std::ostringstream text;
  text << "class group: Z^" << cg.free_rank;
  for (const Int& t : cg.torsion) text << " + Z/" << t.get_str();
  text << "\npicard basis:";
  json basis_json = json::array();
  for (const DivisorId& d : basis) {
    text << " " << divisor_label(d);
    basis_json.push_back(divisor_label(d));
  }
  text << "\n";
  for (const DivisorId& d : b_divisors(emb)) {
    PLResult pl = pl_function(emb, unit_divisor(d));
    divisors.push_back({{"label", divisor_label(d)},
                        {"image", intvec_json(divisor_image(emb, d))},
                        {"cartier", pl.cartier},
                        {"q_cartier", pl.q_cartier}});
    text << divisor_label(d) << ": image " << vec_str(divisor_image(emb, d))
         << (pl.cartier ? ", Cartier" : pl.q_cartier ? ", Q-Cartier" : ", not Q-Cartier")
         << "\n";
  }
  emit(as_json,
       {{"class_group_free_rank", cg.free_rank},
        {"picard_basis", basis_json},
        {"divisors", divisors}},
       text.str());
  return 0;
}

int run_intersect(const ParsedDocument& doc, bool as_json, const std::string& rays_arg) {
  require_embedding(doc, "intersect");
  const HorosphericalEmbedding& emb = doc.embedding;
  require_valid_embedding(emb);

  if (!rays_arg.empty()) {
    if (doc.mode != DocMode::Toric)
      fail(ErrorCode::BadParams, "--rays computes toric cycles; input is not toric");
    std::vector<std::size_t> rays;
    std::istringstream list(rays_arg);
    std::string item;
    while (std::getline(list, item, ',')) {
      try {
        rays.push_back(std::stoul(item));
      } catch (const std::exception&) {
        fail(ErrorCode::BadParams, "--rays expects comma-separated ray indices");
      }
    }
    Rat value = intersection_number(emb.fan, rays);
    emit(as_json, {{"rays", rays}, {"value", rat_json(value)}},
         "degree: " + value.get_str() + "\n");
    return 0;
  }

  std::vector<DivisorId> basis = picard_basis(emb);
  json basis_json = json::array();
  std::ostringstream text;
  text << "picard basis:";
  for (const DivisorId& d : basis) {
    basis_json.push_back(divisor_label(d));
    text << " " << divisor_label(d);
  }
  text << "\n";
  json curves = json::array();
  for (const auto& [curve, numclass] : curve_numclasses(emb)) {
    json cls = json::array();
    for (const Rat& q : numclass) cls.push_back(rat_json(q));
    curves.push_back({{"curve", curve.label()}, {"class", cls}});
    text << curve.label() << ": " << ratvec_str(numclass) << "\n";
  }
  emit(as_json, {{"picard_basis", basis_json}, {"curves", curves}}, text.str());
  return 0;
}

int run_cones(const ParsedDocument& doc, bool as_json, int k) {
  require_embedding(doc, "cones");
  const HorosphericalEmbedding& emb = doc.embedding;
  require_valid_embedding(emb);

  if (k >= 0) {
    if (doc.mode != DocMode::Toric)
      fail(ErrorCode::BadParams, "--k compares toric cycle cones; input is not toric");
    NefkResult r = nefk_eq_psefk(emb.fan, static_cast<std::size_t>(k));
    json report{{"k", k}, {"equal", r.equal}};
    std::ostringstream text;
    text << "nef^" << k << " == psef^" << k << ": " << (r.equal ? "yes" : "no") << "\n";
    if (r.certificate) {
      report["certificate"] = {{"tau", r.certificate->tau},
                               {"sigma", r.certificate->sigma},
                               {"value", rat_json(r.certificate->value)}};
      text << "violation: V(tau) . V(sigma) = " << r.certificate->value.get_str()
           << " for tau rays {";
      for (std::size_t i : r.certificate->tau) text << " " << i;
      text << " }, sigma rays {";
      for (std::size_t i : r.certificate->sigma) text << " " << i;
      text << " }\n";
    }
    emit(as_json, report, text.str());
    return r.equal ? 0 : 1;
  }

  Nef1Result r = nef1_eq_psef1(emb);
  json report{{"k", 1}, {"equal", r.equal}};
  std::ostringstream text;
  text << "nef^1 == psef^1: " << (r.equal ? "yes" : "no") << "\n";
  if (r.certificate) {
    Rat pairing = intersect_curve(emb, unit_divisor(r.certificate->first),
                                  r.certificate->second);
    report["certificate"] = {{"divisor", divisor_label(r.certificate->first)},
                             {"curve", r.certificate->second.label()},
                             {"value", rat_json(pairing)}};
    text << "violation: " << divisor_label(r.certificate->first) << " . "
         << r.certificate->second.label() << " = " << pairing.get_str() << "\n";
  }
  emit(as_json, report, text.str());
  return r.equal ? 0 : 1;
}

json cone_rays_json(const RatCone& cone) {
  json a = json::array();
  for (const IntVec& v : cone.extreme_rays()) a.push_back(intvec_json(v));
  return a;
}

std::string cone_rays_str(const RatCone& cone) {
  std::string s = "{";
  for (const IntVec& v : cone.extreme_rays()) s += " " + vec_str(v);
  return s + " }";
}

int run_mori(const ParsedDocument& doc, bool as_json, int ray_index) {
  require_embedding(doc, "mori");
  const HorosphericalEmbedding& emb = doc.embedding;
  require_valid_embedding(emb);

  std::vector<ExtremalRay> rays = extremal_rays(emb);
  if (ray_index < 0) {
    json report = json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      json curves = json::array();
      for (const CurveClass& c : rays[i].curves) curves.push_back(c.label());
      report.push_back({{"index", i},
                        {"class", intvec_json(rays[i].numclass)},
                        {"curves", curves}});
      text << "[" << i << "] class " << vec_str(rays[i].numclass) << ":";
      for (const CurveClass& c : rays[i].curves) text << " " << c.label();
      text << "\n";
    }
    emit(as_json, {{"extremal_rays", report}}, text.str());
    return 0;
  }

  if (static_cast<std::size_t>(ray_index) >= rays.size())
    fail(ErrorCode::BadParams,
         "--ray " + std::to_string(ray_index) + " out of range; " +
             std::to_string(rays.size()) + " extremal rays");
  ContractionResult res = contract(emb, rays[ray_index].numclass);

  const char* kind = res.kind == ContractionKind::Fiber        ? "fiber"
                     : res.kind == ContractionKind::Divisorial ? "divisorial"
                     : res.kind == ContractionKind::Small      ? "small"
                                                               : "unsupported";
  json report{{"kind", kind}};
  std::ostringstream text;
  text << "contraction: " << kind << "\n";
  if (!res.note.empty()) {
    report["note"] = res.note;
    text << "note: " << res.note << "\n";
  }
  if (res.exceptional_cone) {
    report["exceptional_cone"] = cone_rays_json(*res.exceptional_cone);
    text << "exceptional cone rays: " << cone_rays_str(*res.exceptional_cone) << "\n";
  }
  if (res.image_cone) {
    report["image_cone"] = cone_rays_json(*res.image_cone);
    text << "image cone rays: " << cone_rays_str(*res.image_cone) << "\n";
  }
  if (!res.dominant_colors.empty()) {
    report["dominant_colors"] = res.dominant_colors;
    text << "colors dominating the base:";
    for (const ColorId& c : res.dominant_colors) text << " " << c;
    text << "\n";
  }
  if (res.fan) {
    ParsedDocument out;
    // A fiber contraction lands in a quotient lattice, where the original
    // datum no longer applies; report the bare fan in that case.
    if (res.kind == ContractionKind::Fiber) {
      out.mode = doc.mode == DocMode::Toric ? DocMode::Toric
                                            : DocMode::SphericalValidateOnly;
      if (out.mode == DocMode::Toric) out.embedding.datum = toric_datum(res.fan->lattice_rank);
    } else {
      out.mode = doc.mode;
      out.embedding.datum = emb.datum;
    }
    out.embedding.fan = *res.fan;
    std::string body = serialize_document(out);
    report["result"] = json::parse(body);
    report["result_ok"] = res.report.ok();
    text << "result fan " << (res.report.ok() ? "(valid):" : "(INVALID):") << "\n" << body;
  }
  emit(as_json, report, text.str());
  return res.kind == ContractionKind::Unsupported ? 1 : 0;
}

int run_classify(const ParsedDocument& doc, bool as_json) {
  require_embedding(doc, "classify");
  ClassifyReport r = classify_pipeline(doc.embedding);

  json report{{"profile", r.profile}, {"nef1_eq_psef1", r.nef1.equal}};
  std::ostringstream text;
  text << "profile: " << r.profile << "\n"
       << "nef^1 == psef^1: " << (r.nef1.equal ? "yes" : "no") << "\n";
  if (r.nef1.certificate) {
    report["certificate"] = {{"divisor", divisor_label(r.nef1.certificate->first)},
                             {"curve", r.nef1.certificate->second.label()}};
    text << "violation: " << divisor_label(r.nef1.certificate->first) << " . "
         << r.nef1.certificate->second.label() << "\n";
  }
  if (r.toric_product) {
    json tp{{"found", r.toric_product->found}};
    if (r.toric_product->found) {
      tp["dims"] = r.toric_product->dims;
      tp["exact"] = r.toric_product->exact;
      text << "product of projective spaces: P^(";
      for (std::size_t i = 0; i < r.toric_product->dims.size(); ++i)
        text << (i ? "," : "") << r.toric_product->dims[i];
      text << ") " << (r.toric_product->exact ? "exactly" : "up to finite cover") << "\n";
    } else {
      text << "product of projective spaces: none\n";
    }
    report["toric_product"] = tp;
  }
  if (r.unattached_equals_d0) {
    report["unattached_equals_d0"] = *r.unattached_equals_d0;
    text << "unattached colors are the zero-image colors: "
         << (*r.unattached_equals_d0 ? "yes" : "no") << "\n";
  }
  report["toroidal"] = r.toroidal;
  if (r.toroidal)
    text << "toroidal: yes"
         << (r.rational_homogeneous ? " (rational homogeneous)" : "") << "\n";
  report["rational_homogeneous"] = r.rational_homogeneous;
  if (r.reduction) {
    json red{{"target_parabolic", r.reduction->target_parabolic},
             {"target_dimension", r.reduction->target_dimension},
             {"fiber_ok", r.reduction->report.ok()}};
    report["reduction"] = red;
    text << "reduction target: parabolic {";
    for (const std::string& n : r.reduction->target_parabolic) text << " " << n;
    text << " }, dimension " << r.reduction->target_dimension << "\n";
  }
  if (r.fiber_decomposition) {
    report["fiber_factors"] = r.fiber_decomposition->factors.size();
    report["factor_picard_numbers"] = r.factor_picard_numbers;
    text << "fiber factors: " << r.fiber_decomposition->factors.size() << ", picard (";
    for (std::size_t i = 0; i < r.factor_picard_numbers.size(); ++i)
      text << (i ? "," : "") << r.factor_picard_numbers[i];
    text << ")\n";
  }
  if (r.factors_all_picard_one) {
    report["factors_all_picard_one"] = *r.factors_all_picard_one;
    text << "all factors have picard number one: "
         << (*r.factors_all_picard_one ? "yes" : "no") << "\n";
  }
  json notes = json::array();
  for (const std::string& n : r.notes) {
    notes.push_back(n);
    text << "note: " << n << "\n";
  }
  report["notes"] = notes;
  emit(as_json, report, text.str());
  return r.nef1.equal ? 0 : 1;
}

int run_catalog(const std::string& action, const std::string& spec) {
  if (action == "list") {
    for (const std::string& name : catalog_names()) std::cout << name << "\n";
    return 0;
  }
  if (action == "show") {
    if (spec.empty()) fail(ErrorCode::BadParams, "catalog show needs NAME[:k=v,...]");
    auto [name, params] = split_catalog_spec(spec);
    std::cout << serialize_document(catalog_document(name, params));
    return 0;
  }
  fail(ErrorCode::BadParams, "catalog action must be 'list' or 'show'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact colored-fan computations for toric and horospherical varieties"};
  app.require_subcommand(1);

  std::string input_file, catalog_spec, format = "text", rays_arg;
  int k = -1, ray_index = -1;
  app.add_option("--input", input_file, "fan document file");
  app.add_option("--catalog", catalog_spec, "built-in example NAME[:k=v,...]");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* validate_cmd = app.add_subcommand("validate", "check the fan axioms");
  CLI::App* invariants_cmd =
      app.add_subcommand("invariants", "rank, dimension, completeness, factoriality");
  CLI::App* divisors_cmd =
      app.add_subcommand("divisors", "class group and Cartier tests");
  CLI::App* intersect_cmd =
      app.add_subcommand("intersect", "curve pairings, or --rays for toric cycles");
  intersect_cmd->add_option("--rays", rays_arg, "comma-separated divisor ray indices");
  CLI::App* cones_cmd = app.add_subcommand("cones", "nef vs pseudo-effective");
  cones_cmd->add_option("--k", k, "codimension (toric only; default 1)");
  CLI::App* mori_cmd = app.add_subcommand("mori", "extremal rays, or --ray to contract");
  mori_cmd->add_option("--ray", ray_index, "extremal ray index to contract");
  CLI::App* classify_cmd = app.add_subcommand("classify", "run the structure pipeline");
  CLI::App* catalog_cmd = app.add_subcommand("catalog", "list or show built-in examples");
  std::string catalog_action, catalog_show_spec;
  catalog_cmd->add_option("action", catalog_action, "list | show")->required();
  catalog_cmd->add_option("name", catalog_show_spec, "NAME[:k=v,...] for show");

  // --input/--catalog/--format read naturally after the verb too.
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    bool as_json = format == "json";
    if (catalog_cmd->parsed()) return run_catalog(catalog_action, catalog_show_spec);
    ParsedDocument doc = load_input(input_file, catalog_spec);
    if (validate_cmd->parsed()) return run_validate(doc, as_json);
    if (invariants_cmd->parsed()) return run_invariants(doc, as_json);
    if (divisors_cmd->parsed()) return run_divisors(doc, as_json);
    if (intersect_cmd->parsed()) return run_intersect(doc, as_json, rays_arg);
    if (cones_cmd->parsed()) return run_cones(doc, as_json, k);
    if (mori_cmd->parsed()) return run_mori(doc, as_json, ray_index);
    if (classify_cmd->parsed()) return run_classify(doc, as_json);
    fail(ErrorCode::Internal, "no verb dispatched");
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::SchemaError:
      case ErrorCode::UnknownName:
      case ErrorCode::BadParams:
        return 2;
      case ErrorCode::Internal:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
