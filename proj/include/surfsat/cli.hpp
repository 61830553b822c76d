#pragma once

#include "surfsat/io.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace surfsat::cli {

using io::json;
using io::LoadedSurface;
using surfsat::to_string;

enum class Command { Analyze, Saturate, Affdim, Fibre, Mumford, Hironaka, Validate };
enum class Format { Human, Json };

inline const std::vector<std::pair<std::string, Command>>& command_table() {
  static const std::vector<std::pair<std::string, Command>> table{
      {"analyze", Command::Analyze}, {"saturate", Command::Saturate}, {"affdim", Command::Affdim},
      {"fibre", Command::Fibre},     {"mumford", Command::Mumford},   {"hironaka", Command::Hironaka},
      {"validate", Command::Validate}};
  return table;
}

inline std::string to_string(Command c) {
  for (const auto& [name, cmd] : command_table())
    if (cmd == c) return name;
  return "?";
}

struct Request {
  Command command = Command::Analyze;
  std::string input;
  Format format = Format::Human;
  bool verbose = false;
  std::vector<std::string> subject;      // fibre: curves to analyse instead of boundary components
  std::vector<std::string> exceptional;  // mumford: curves to contract instead of the saturation plan
};

enum ExitCode : int { kDefinite = 0, kInputError = 1, kUndecided = 2 };

/// Report under construction: a JSON object plus the matching human lines.
class Report {
 public:
  void put(const std::string& key, const json& value, const std::string& human) {
    json_[key] = value;
    line(key + ": " + human);
  }
  void line(const std::string& s) { lines_.push_back(s); }
  json& json_value() { return json_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  json json_ = json::object();
  std::vector<std::string> lines_;
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string set_text(const Configuration& c, const NodeSet& s) { return describe(c, s); }

inline std::string sets_text(const Configuration& c, const std::vector<NodeSet>& sets) {
  if (sets.empty()) return "-";
  std::string out;
  for (std::size_t k = 0; k < sets.size(); ++k) out += (k ? " " : "") + describe(c, sets[k]);
  return out;
}

inline json sets_json(const Configuration& c, const std::vector<NodeSet>& sets) {
  json a = json::array();
  for (const auto& s : sets) a.push_back(io::names_json(c, s));
  return a;
}

inline std::string divisor_text(const Configuration& c, const Divisor& d) {
  if (d.is_zero()) return "0";
  std::string out;
  for (const auto& [id, coeff] : d.terms()) {
    if (!out.empty()) out += " + ";
    out += (coeff == 1 ? "" : to_string(coeff) + "*") + c.node(id).name;
  }
  return out;
}

inline json reasons_json(const std::vector<Reason>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back({{"criterion", r.criterion}, {"evidence", r.evidence}});
  return a;
}

inline void put_reasons(Report& rep, const std::string& key, const std::vector<Reason>& rs) {
  rep.json_value()[key] = reasons_json(rs);
  for (const auto& r : rs) rep.line(key + ": [" + r.criterion + "] " + r.evidence);
}

class Logger {
 public:
  Logger(std::ostream& err, bool on) : err_(err), on_(on) {}
  void operator()(const std::string& msg) const {
    if (on_) err_ << "[surfsat] " << msg << "\n";
  }

 private:
  std::ostream& err_;
  bool on_;
};

inline NodeSet lookup(const Configuration& config, const std::vector<std::string>& names, const char* option) {
  NodeSet s;
  for (const auto& n : names) {
    auto id = config.find(n);
    if (!id) throw std::invalid_argument(std::string(option) + ": unknown curve '" + n + "'");
    s.push_back(*id);
  }
  return make_node_set(std::move(s));
}

// --- sections shared by several commands ---------------------------------

inline SaturationPlan saturation_section(Report& rep, const CompactifiedSurface& s) {
  const auto& c = s.ambient;
  SaturationVerdict v = is_saturated(s);
  rep.put("saturated", v.saturated, yes_no(v.saturated));
  rep.put("criterion", criterion::kNoNegativeDefiniteComponent, criterion::kNoNegativeDefiniteComponent);
  rep.put("offending_components", sets_json(c, v.offending), sets_text(c, v.offending));
  rep.put("isolated_boundary_points", v.isolated_points, std::to_string(v.isolated_points));
  SaturationPlan plan = saturation_plan(s);
  json pj{{"d_minus", sets_json(c, plan.d_minus)},
          {"d_plus", sets_json(c, plan.d_plus)},
          {"points_to_remove", plan.points_to_remove},
          {"resulting_boundary_ok", plan.resulting_boundary_ok},
          {"criterion", criterion::kSaturationRecipe}};
  rep.json_value()["plan"] = pj;
  rep.line("plan.contract: " + sets_text(c, plan.d_minus));
  rep.line("plan.keep: " + sets_text(c, plan.d_plus));
  rep.line("plan.points_to_remove: " + std::to_string(plan.points_to_remove));
  rep.line("plan.resulting_boundary_ok: " + yes_no(plan.resulting_boundary_ok));
  rep.line("plan.criterion: " + std::string(criterion::kSaturationRecipe));
  return plan;
}

inline int affdim_section(Report& rep, const CompactifiedSurface& s, const Logger& log) {
  std::vector<Reason> pre;
  CompactifiedSurface model = s;
  if (!is_saturated(s).saturated) {
    log("surface is not saturated; classifying its saturation");
    SaturatedModel m = apply_plan(s, saturation_plan(s));
    model = std::move(m.surface);
    pre.push_back({"applied-saturation-plan", "affinisation is unchanged by big open embeddings"});
  }
  AffDimReport r = affinisation_dimension(model);
  const auto& c = model.ambient;
  rep.put("affdim", to_string(r.verdict), to_string(r.verdict));
  std::vector<Reason> all = pre;
  all.insert(all.end(), r.reasons.begin(), r.reasons.end());
  put_reasons(rep, "affdim_reasons", all);
  json comps = json::array();
  for (const auto& ft : r.components) {
    comps.push_back({{"subject", io::names_json(c, ft.subject)},
                     {"verdict", to_string(ft.verdict)},
                     {"kernel", io::divisor_json(c, *ft.kernel)},
                     {"criterion", "fibre-type-definition"}});
    rep.line("affdim_component: " + set_text(c, ft.subject) + " " + to_string(ft.verdict) + " F = " + divisor_text(c, *ft.kernel));
  }
  rep.json_value()["affdim_components"] = comps;
  rep.put("missing_certificates", sets_json(c, r.missing_certificates), sets_text(c, r.missing_certificates));
  return r.verdict == AffDim::OneOrZero ? kUndecided : kDefinite;
}

inline int scheme_section(Report& rep, const CompactifiedSurface& s, const std::vector<OracleEntry>& oracle) {
  SaturationVerdict v = is_saturated(s);
  for (const auto& comp : v.offending) {
    bool covered = false;
    for (const auto& e : oracle) covered = covered || make_node_set(e.component) == comp;
    if (!covered) {
      rep.put("scheme_saturation", "NotEvaluated", "NotEvaluated (no contractibility oracle for " + describe(s.ambient, comp) + ")");
      return kDefinite;
    }
  }
  SchemeSaturationReport r = scheme_saturation_check(s, oracle);
  rep.put("scheme_saturation", to_string(r.verdict), to_string(r.verdict));
  put_reasons(rep, "scheme_saturation_reasons", r.reasons);
  return r.verdict == SchemeSaturation::Unknown ? kUndecided : kDefinite;
}

inline json fibre_json(const Configuration& c, const FibreTypeReport& ft) {
  json o{{"subject", io::names_json(c, ft.subject)},
         {"verdict", to_string(ft.verdict)},
         {"inertia", json::array({ft.inertia.positive, ft.inertia.negative, ft.inertia.zero})},
         {"criterion", "fibre-type-definition"}};
  if (ft.kernel) o["kernel"] = io::divisor_json(c, *ft.kernel);
  return o;
}

inline int fibre_section(Report& rep, const LoadedSurface& in, const std::vector<NodeSet>& subjects) {
  const auto& c = in.surface.ambient;
  int code = kDefinite;
  json items = json::array();
  std::vector<FibreTypeReport> fibre_type;
  for (const auto& subj : subjects) {
    FibreTypeReport ft = classify_fibre_type(c, subj);
    json o = fibre_json(c, ft);
    std::string line = "fibre: " + set_text(c, ft.subject) + " " + to_string(ft.verdict) + " inertia " + to_string(ft.inertia);
    if (ft.kernel) line += " F = " + divisor_text(c, *ft.kernel);
    rep.line(line);
    if (ft.verdict == FibreVerdict::FibreType) {
      ZariskiReport z = validate_zariski(c, ft.subject);
      o["zariski"] = {{"status", to_string(z.status)},
                      {"subsets_checked", z.subsets_checked},
                      {"criterion", "proper-sub-support-negative-definite"}};
      rep.line("fibre.zariski: " + set_text(c, ft.subject) + " " + to_string(z.status) + " (" +
               std::to_string(z.subsets_checked) + " proper subsets)");
      if (z.status == ZariskiStatus::Violations) {
        o["zariski"]["witness"] = io::names_json(c, z.violations.front().witness);
        code = kInputError;
      } else if (z.status == ZariskiStatus::Skipped && code == kDefinite) {
        code = kUndecided;
      }
      if (ft.subject.size() == 1) {
        const Rational& deg = c.gram()(ft.subject[0], ft.subject[0]);
        bool claimed = false;
        for (const auto& cl : in.surface.false_fibre_claims)
          claimed = claimed || (cl.subject == ft.subject && cl.certificate == CertificateKind::NormalBundleNonTorsion);
        NormalBundleResult nb = normal_bundle_certificate(deg, claimed);
        o["normal_bundle"] = {{"degree", io::detail::rational(deg)},
                              {"outcome", nb.outcome == NormalBundleOutcome::Certified      ? "certified"
                                          : nb.outcome == NormalBundleOutcome::Inconclusive ? "inconclusive"
                                                                                            : "rejected"},
                              {"criterion", "normal-bundle-non-torsion"}};
        rep.line("fibre.normal_bundle: " + set_text(c, ft.subject) + " " + o["normal_bundle"]["outcome"].get<std::string>() + " (" +
                 nb.message + ")");
      }
      fibre_type.push_back(ft);
    }
    items.push_back(std::move(o));
  }
  rep.json_value()["fibre"] = items;

  // Numerical proportionality of disjoint fibre-type kernels, probed by every curve.
  json props = json::array();
  std::vector<Divisor> probes;
  for (NodeId i = 0; i < c.size(); ++i) probes.push_back(Divisor::prime(i));
  for (std::size_t a = 0; a < fibre_type.size(); ++a)
    for (std::size_t b = a + 1; b < fibre_type.size(); ++b) {
      if (!are_disjoint(c, fibre_type[a].subject, fibre_type[b].subject)) continue;
      ProportionalityResult pr = proportionality(c, *fibre_type[a].kernel, *fibre_type[b].kernel, probes);
      std::string status = pr.status == ProportionalityStatus::Proportional      ? "proportional"
                           : pr.status == ProportionalityStatus::NotProportional ? "not-proportional"
                                                                                 : "undetermined";
      json o{{"pair", json::array({io::names_json(c, fibre_type[a].subject), io::names_json(c, fibre_type[b].subject)})},
             {"status", status},
             {"criterion", "disjoint-fibre-type-numerically-proportional"}};
      std::string line = "fibre.proportionality: " + set_text(c, fibre_type[a].subject) + " " + set_text(c, fibre_type[b].subject) + " " + status;
      if (pr.factor) {
        o["factor"] = io::detail::rational(*pr.factor);
        line += " c = " + to_string(*pr.factor);
      }
      if (pr.witness) {
        o["witness"] = c.node(*pr.witness).name;
        line += " witness " + c.node(*pr.witness).name;
        if (in.complete_surface) code = kInputError;
      }
      props.push_back(o);
      rep.line(line);
    }
  rep.json_value()["proportionality"] = props;
  return code;
}

// --- commands ---------------------------------------------------------------

inline int cmd_saturate(Report& rep, const LoadedSurface& in) {
  saturation_section(rep, in.surface);
  return kDefinite;
}

inline int cmd_affdim(Report& rep, const LoadedSurface& in, const Logger& log) {
  return affdim_section(rep, in.surface, log);
}

inline int cmd_fibre(Report& rep, const LoadedSurface& in, const Request& req) {
  const auto& c = in.surface.ambient;
  std::vector<NodeSet> subjects;
  if (!req.subject.empty()) {
    subjects.push_back(lookup(c, req.subject, "--subject"));
  } else {
    subjects = connected_components(c, in.surface.boundary);
  }
  if (subjects.empty()) {
    rep.put("fibre", json::array(), "- (empty boundary)");
    return kDefinite;
  }
  return fibre_section(rep, in, subjects);
}

inline int cmd_mumford(Report& rep, const LoadedSurface& in, const Request& req) {
  const auto& c = in.surface.ambient;
  std::vector<NodeSet> parts;
  if (!req.exceptional.empty()) {
    parts = connected_components(c, lookup(c, req.exceptional, "--exceptional"));
  } else {
    parts = saturation_plan(in.surface).d_minus;
  }
  NodeSet all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  all = make_node_set(std::move(all));
  rep.put("exceptional", io::names_json(c, all), set_text(c, all));

  ContractionContext ctx(c, all);
  json pulls = json::object();
  for (NodeId i = 0; i < c.size(); ++i) {
    if (ctx.is_exceptional(i)) continue;
    Divisor pb = pullback(ctx, Divisor::prime(i));
    for (auto e : all) {
      if (intersection_number(c, pb, Divisor::prime(e)) != 0) throw std::logic_error("pullback not orthogonal to exceptional curves");
    }
    pulls[c.node(i).name] = io::divisor_json(c, pb);
    rep.line("pullback: " + c.node(i).name + " -> " + divisor_text(c, pb));
  }
  rep.json_value()["pullbacks"] = pulls;
  rep.json_value()["pullback_criterion"] = "pullback-orthogonal-to-exceptional";

  Contraction k = contract(c, parts);
  json gram = json::array();
  for (NodeId i = 0; i < k.config.size(); ++i) {
    json row = json::array();
    std::string text;
    for (NodeId j = 0; j < k.config.size(); ++j) {
      row.push_back(io::detail::rational(k.config.gram()(i, j)));
      text += (j ? " " : "") + to_string(k.config.gram()(i, j));
    }
    gram.push_back(row);
    rep.line("induced: " + k.config.node(i).name + " | " + text);
  }
  json names = json::array();
  for (const auto& n : k.config.nodes()) names.push_back(n.name);
  rep.json_value()["induced_curves"] = names;
  rep.json_value()["induced_gram"] = gram;
  json pts = json::array();
  for (const auto& sp : k.singular_points) {
    pts.push_back(io::names_json(c, sp.part));
    rep.line("singular_point: " + set_text(c, sp.part));
  }
  rep.json_value()["singular_points"] = pts;
  rep.json_value()["criterion"] = "negative-definite-parts-contract";
  return kDefinite;
}

inline int cmd_hironaka(Report& rep, const LoadedSurface& in, const Logger& log) {
  if (!in.hironaka) {
    throw io::schema_error("curves", "the hironaka command builds the surface from the elliptic block; omit curves");
  }
  const HironakaBuild& h = *in.hironaka;
  const std::size_t n = h.exceptionals.size();
  log("blew up P^2 at " + std::to_string(n) + " points");
  rep.put("points", n, std::to_string(n));
  rep.put("lattice_rank", h.lattice.rank(), std::to_string(h.lattice.rank()));
  Inertia li = inertia(h.lattice.gram());
  rep.put("lattice_inertia", json::array({li.positive, li.negative, li.zero}), to_string(li));
  std::string cls;
  json cls_j = json::array();
  for (std::size_t k = 0; k < h.cubic.cls.size(); ++k) {
    cls += (k ? " " : "") + std::to_string(h.cubic.cls[k]);
    cls_j.push_back(h.cubic.cls[k]);
  }
  rep.put("boundary_class", cls_j, "(" + cls + ") in basis L,E1..E" + std::to_string(n));
  rep.put("boundary_self_intersection", io::detail::rational(h.boundary_self_intersection), to_string(h.boundary_self_intersection));
  rep.json_value()["boundary_self_intersection_criterion"] = "cubic-transform-self-intersection-9-minus-n";
  Rational g = adjunction_genus(h.lattice, h.cubic.cls);
  rep.put("boundary_genus", io::detail::rational(g), to_string(g));
  rep.put("obstruction", to_string(h.obstruction.verdict), to_string(h.obstruction.verdict));
  rep.put("weighted_sum", to_string(h.obstruction.sum), to_string(h.obstruction.sum));
  rep.put("weighted_sum_torsion", h.obstruction.sum_torsion.torsion ? "Torsion(" + std::to_string(h.obstruction.sum_torsion.order) + ")" : "NonTorsion",
          h.obstruction.sum_torsion.torsion ? "Torsion(" + std::to_string(h.obstruction.sum_torsion.order) + ")" : "NonTorsion");
  rep.json_value()["obstruction_criterion"] = "group-law-sum-non-torsion";
  rep.line("obstruction.criterion: group-law-sum-non-torsion");

  saturation_section(rep, in.surface);
  int code = affdim_section(rep, in.surface, log);
  int sc = scheme_section(rep, in.surface, in.oracle);
  if (sc == kUndecided) code = kUndecided;
  if (h.obstruction.verdict == Obstruction::Inconclusive) code = kUndecided;
  return code;
}

inline int cmd_validate(Report& rep, const LoadedSurface& in) {
  const auto& s = in.surface;
  const auto& c = s.ambient;
  std::vector<std::string> violations;
  json checks = json::array();
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    checks.push_back({{"check", name}, {"ok", ok}, {"detail", detail}});
    rep.line("check: " + name + " " + (ok ? "ok" : "VIOLATION") + (detail.empty() ? "" : " (" + detail + ")"));
    if (!ok) violations.push_back(name + ": " + detail);
  };

  ClaimsCheck cc = validate_false_fibre_claims(s.false_fibre_claims, c);
  record("at-most-two-disjoint-false-fibres", cc.ok, cc.message);

  auto comps = connected_components(c, s.boundary);
  std::vector<NodeSet> ft;
  for (const auto& comp : comps) {
    FibreTypeReport r = classify_fibre_type(c, comp);
    if (r.verdict != FibreVerdict::FibreType) continue;
    ft.push_back(comp);
    ZariskiReport z = validate_zariski(c, comp);
    record("zariski " + describe(c, comp), z.status != ZariskiStatus::Violations,
           z.status == ZariskiStatus::Violations ? z.violations.front().what + " " + describe(c, z.violations.front().witness)
                                                 : to_string(z.status) + ", " + std::to_string(z.subsets_checked) + " proper subsets");
  }
  if (in.complete_surface) {
    for (const auto& d1 : ft)
      for (const auto& d2 : comps) {
        if (d1 == d2 || !are_disjoint(c, d1, d2)) continue;
        if (is_negative_definite(c.gram().principal(d2))) continue;
        PairCheck pc = check_disjoint_pair(c, d1, d2, true);
        record("disjoint-fibre-type-pair " + describe(c, d1) + " " + describe(c, d2), pc.ok, pc.violation);
      }
  }
  if (in.hironaka) {
    Inertia li = inertia(in.hironaka->lattice.gram());
    record("hodge-index-signature", li == Inertia{1, in.hironaka->lattice.rank() - 1, 0}, to_string(li));
  }
  rep.json_value()["checks"] = checks;
  rep.put("valid", violations.empty(), yes_no(violations.empty()));
  return violations.empty() ? kDefinite : kInputError;
}

inline int cmd_analyze(Report& rep, const LoadedSurface& in, const Logger& log) {
  saturation_section(rep, in.surface);
  int code = affdim_section(rep, in.surface, log);
  if (scheme_section(rep, in.surface, in.oracle) == kUndecided) code = kUndecided;
  auto comps = connected_components(in.surface.ambient, in.surface.boundary);
  if (!comps.empty()) {
    int fc = fibre_section(rep, in, comps);
    if (fc == kInputError) return kInputError;
    if (fc == kUndecided) code = kUndecided;
  }
  return code;
}

inline void emit(std::ostream& out, Format format, Report& rep) {
  if (format == Format::Json) {
    out << rep.json_value().dump(2) << "\n";
  } else {
    for (const auto& l : rep.lines()) out << l << "\n";
  }
}

}  // namespace detail

/// Runs one command. Exit codes: 0 definite verdict, 2 undecided verdict
/// (OneOrZero, Unknown, Inconclusive), 1 malformed or inconsistent input.
inline int run(const Request& req, std::ostream& out, std::ostream& err) {
  detail::Logger log(err, req.verbose);
  Report rep;
  rep.put("command", to_string(req.command), to_string(req.command));
  auto fail = [&](const std::string& kind, const std::string& msg) {
    if (req.format == Format::Json) {
      rep.json_value()["error"] = {{"kind", kind}, {"message", msg}};
      out << rep.json_value().dump(2) << "\n";
    }
    err << kind << " error: " << msg << "\n";
    return int(kInputError);
  };
  try {
    log("reading " + req.input);
    io::SurfaceDocument doc = io::load_document(req.input);
    LoadedSurface in = io::resolve(doc);
    log("resolved " + std::to_string(in.surface.ambient.size()) + " curves, boundary of " +
        std::to_string(in.surface.boundary.size()));
    int code = kDefinite;
    switch (req.command) {
      case Command::Saturate: code = detail::cmd_saturate(rep, in); break;
      case Command::Affdim: code = detail::cmd_affdim(rep, in, log); break;
      case Command::Fibre: code = detail::cmd_fibre(rep, in, req); break;
      case Command::Mumford: code = detail::cmd_mumford(rep, in, req); break;
      case Command::Hironaka: code = detail::cmd_hironaka(rep, in, log); break;
      case Command::Validate: code = detail::cmd_validate(rep, in); break;
      case Command::Analyze: code = detail::cmd_analyze(rep, in, log); break;
    }
    rep.json_value()["exit_code"] = code;
    detail::emit(out, req.format, rep);
    return code;
  } catch (const io::schema_error& e) {
    return fail("schema", e.what());
  } catch (const inconsistent_data& e) {
    return fail("inconsistent", e.what());
  } catch (const std::invalid_argument& e) {
    return fail("input", e.what());
  } catch (const std::out_of_range& e) {
    return fail("input", e.what());
  }
}

}  // namespace surfsat::cli
