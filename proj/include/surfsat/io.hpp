#pragma once

// JSON input documents (schema_version 1). Rationals are JSON integers or
// strings "p/q".

#include "surfsat/elliptic.hpp"
#include "surfsat/errors.hpp"
#include "surfsat/fibre.hpp"
#include "surfsat/hironaka.hpp"
#include "surfsat/saturation.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfsat::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed document; `path` locates the offending field, e.g. "curves[2].genus".
class schema_error : public std::invalid_argument {
 public:
  schema_error(std::string path, const std::string& msg)
      : std::invalid_argument(path + ": " + msg), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct CurveSpec {
  std::string name;
  int genus = 0;
  Rational self;
  bool proper = true;
  friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

struct IntersectionSpec {
  std::size_t i = 0;
  std::size_t j = 0;
  Rational value;
  friend bool operator==(const IntersectionSpec&, const IntersectionSpec&) = default;
};

struct ClaimSpec {
  std::vector<std::string> subject;
  std::string certificate;
  std::string reference;
  friend bool operator==(const ClaimSpec&, const ClaimSpec&) = default;
};

struct PointSpec {
  Rational x, y;
  std::int64_t m = 1;
  friend bool operator==(const PointSpec&, const PointSpec&) = default;
};

struct EllipticSpec {
  std::array<Rational, 5> a;  // a1, a2, a3, a4, a6
  std::vector<PointSpec> points;
  friend bool operator==(const EllipticSpec&, const EllipticSpec&) = default;
};

struct OracleSpec {
  std::vector<std::string> component;
  std::string verdict;
  friend bool operator==(const OracleSpec&, const OracleSpec&) = default;
};

struct SurfaceDocument {
  int schema_version = kSchemaVersion;
  std::vector<CurveSpec> curves;
  std::vector<IntersectionSpec> intersections;
  std::vector<std::string> boundary;
  std::size_t isolated_boundary_points = 0;
  std::vector<ClaimSpec> false_fibre_claims;
  bool fibration_asserted = false;
  bool complete_surface = true;
  std::optional<EllipticSpec> elliptic;
  std::vector<OracleSpec> scheme_contractibility;
  friend bool operator==(const SurfaceDocument&, const SurfaceDocument&) = default;
};

inline const std::array<const char*, 5> kCoefficientNames{"a1", "a2", "a3", "a4", "a6"};

namespace detail {

inline std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string at(const std::string& path, std::size_t idx) { return path + "[" + std::to_string(idx) + "]"; }

inline Rational rational(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw schema_error(path, e.what());
  }
  throw schema_error(path, "expected an integer or a string \"p/q\"");
}

inline json rational(const Rational& r) {
  if (fits_int64(r)) return numerator_of(r).convert_to<std::int64_t>();
  return to_string(r);
}

inline const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw schema_error(at(path, key), "missing required field");
  return obj.at(key);
}

inline std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) throw schema_error(path, "expected a string");
  return j.get<std::string>();
}

inline bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw schema_error(path, "expected a boolean");
  return j.get<bool>();
}

inline std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw schema_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw schema_error(path, "expected an array");
  return j;
}

inline std::vector<std::string> names(const json& j, const std::string& path) {
  std::vector<std::string> out;
  const json& a = array(j, path);
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(string(a[k], at(path, k)));
  return out;
}

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  if (!obj.is_object()) throw schema_error(path.empty() ? "$" : path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || k == a;
    if (!ok) throw schema_error(at(path, k), "unknown field");
  }
}

}  // namespace detail

inline SurfaceDocument parse_document(const json& root) {
  using namespace detail;
  check_keys(root, {"schema_version", "curves", "intersections", "boundary", "isolated_boundary_points",
                    "false_fibre_claims", "fibration_asserted", "complete_surface", "elliptic", "scheme_contractibility"},
             "");
  SurfaceDocument doc;
  doc.schema_version = static_cast<int>(integer(require(root, "schema_version", ""), "schema_version"));
  if (doc.schema_version != kSchemaVersion) {
    throw schema_error("schema_version", "unsupported version " + std::to_string(doc.schema_version));
  }

  if (root.contains("curves")) {
    const json& cs = array(root["curves"], "curves");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const std::string p = at("curves", k);
      check_keys(cs[k], {"name", "genus", "self", "proper"}, p);
      CurveSpec c;
      c.name = string(require(cs[k], "name", p), at(p, "name"));
      if (c.name.empty()) throw schema_error(at(p, "name"), "empty name");
      for (const auto& prev : doc.curves)
        if (prev.name == c.name) throw schema_error(at(p, "name"), "duplicate curve name '" + c.name + "'");
      if (cs[k].contains("genus")) {
        auto g = integer(cs[k]["genus"], at(p, "genus"));
        if (g < 0) throw schema_error(at(p, "genus"), "genus must be nonnegative");
        c.genus = static_cast<int>(g);
      }
      c.self = rational(require(cs[k], "self", p), at(p, "self"));
      if (cs[k].contains("proper")) c.proper = boolean(cs[k]["proper"], at(p, "proper"));
      doc.curves.push_back(std::move(c));
    }
  }

  auto index_of = [&](const json& j, const std::string& path) -> std::size_t {
    if (j.is_number_integer()) {
      auto v = j.get<std::int64_t>();
      if (v < 0 || static_cast<std::size_t>(v) >= doc.curves.size()) throw schema_error(path, "curve index out of range");
      return static_cast<std::size_t>(v);
    }
    if (j.is_string()) {
      for (std::size_t k = 0; k < doc.curves.size(); ++k)
        if (doc.curves[k].name == j.get<std::string>()) return k;
      throw schema_error(path, "unknown curve '" + j.get<std::string>() + "'");
    }
    throw schema_error(path, "expected a curve index or name");
  };

  if (root.contains("intersections")) {
    const json& is = array(root["intersections"], "intersections");
    for (std::size_t k = 0; k < is.size(); ++k) {
      const std::string p = at("intersections", k);
      if (!is[k].is_array() || is[k].size() != 3) throw schema_error(p, "expected [i, j, value]");
      IntersectionSpec s{index_of(is[k][0], at(p, 0)), index_of(is[k][1], at(p, 1)), rational(is[k][2], at(p, 2))};
      if (s.i == s.j) throw schema_error(p, "self-intersections go in curves[].self");
      if (s.value < 0) throw schema_error(at(p, 2), "distinct curves meet non-negatively");
      for (const auto& prev : doc.intersections)
        if ((prev.i == s.i && prev.j == s.j) || (prev.i == s.j && prev.j == s.i)) throw schema_error(p, "duplicate pair");
      doc.intersections.push_back(std::move(s));
    }
  }

  if (root.contains("boundary")) doc.boundary = names(root["boundary"], "boundary");
  if (root.contains("isolated_boundary_points")) {
    auto v = integer(root["isolated_boundary_points"], "isolated_boundary_points");
    if (v < 0) throw schema_error("isolated_boundary_points", "must be nonnegative");
    doc.isolated_boundary_points = static_cast<std::size_t>(v);
  }
  if (root.contains("false_fibre_claims")) {
    const json& cl = array(root["false_fibre_claims"], "false_fibre_claims");
    for (std::size_t k = 0; k < cl.size(); ++k) {
      const std::string p = at("false_fibre_claims", k);
      check_keys(cl[k], {"subject", "certificate", "reference"}, p);
      ClaimSpec c;
      c.subject = names(require(cl[k], "subject", p), at(p, "subject"));
      c.certificate = string(require(cl[k], "certificate", p), at(p, "certificate"));
      try {
        certificate_from_string(c.certificate);
      } catch (const std::exception& e) {
        throw schema_error(at(p, "certificate"), e.what());
      }
      if (cl[k].contains("reference")) c.reference = string(cl[k]["reference"], at(p, "reference"));
      doc.false_fibre_claims.push_back(std::move(c));
    }
  }
  if (root.contains("fibration_asserted")) doc.fibration_asserted = boolean(root["fibration_asserted"], "fibration_asserted");
  if (root.contains("complete_surface")) doc.complete_surface = boolean(root["complete_surface"], "complete_surface");

  if (root.contains("elliptic")) {
    const json& e = root["elliptic"];
    check_keys(e, {"curve", "points"}, "elliptic");
    const json& c = require(e, "curve", "elliptic");
    check_keys(c, {"a1", "a2", "a3", "a4", "a6"}, "elliptic.curve");
    EllipticSpec spec;
    for (std::size_t k = 0; k < 5; ++k) {
      spec.a[k] = c.contains(kCoefficientNames[k]) ? rational(c[kCoefficientNames[k]], at("elliptic.curve", kCoefficientNames[k]))
                                                   : Rational(0);
    }
    if (e.contains("points")) {
      const json& ps = array(e["points"], "elliptic.points");
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const std::string p = at("elliptic.points", k);
        check_keys(ps[k], {"x", "y", "m"}, p);
        PointSpec pt{rational(require(ps[k], "x", p), at(p, "x")), rational(require(ps[k], "y", p), at(p, "y")), 1};
        if (ps[k].contains("m")) {
          pt.m = integer(ps[k]["m"], at(p, "m"));
          if (pt.m < 1) throw schema_error(at(p, "m"), "multiplicity must be >= 1");
        }
        spec.points.push_back(std::move(pt));
      }
    }
    doc.elliptic = std::move(spec);
  }

  if (root.contains("scheme_contractibility")) {
    const json& os = array(root["scheme_contractibility"], "scheme_contractibility");
    for (std::size_t k = 0; k < os.size(); ++k) {
      const std::string p = at("scheme_contractibility", k);
      check_keys(os[k], {"component", "verdict"}, p);
      OracleSpec o{names(require(os[k], "component", p), at(p, "component")),
                   string(require(os[k], "verdict", p), at(p, "verdict"))};
      try {
        contractibility_from_string(o.verdict);
      } catch (const std::exception& e) {
        throw schema_error(at(p, "verdict"), e.what());
      }
      doc.scheme_contractibility.push_back(std::move(o));
    }
  }

  if (doc.curves.empty() && !doc.elliptic) throw schema_error("curves", "a document needs curves or an elliptic block");
  return doc;
}

inline json to_json(const SurfaceDocument& doc) {
  using detail::rational;
  json j;
  j["schema_version"] = doc.schema_version;
  if (!doc.curves.empty()) {
    json cs = json::array();
    for (const auto& c : doc.curves) cs.push_back({{"name", c.name}, {"genus", c.genus}, {"self", rational(c.self)}, {"proper", c.proper}});
    j["curves"] = cs;
    json is = json::array();
    for (const auto& s : doc.intersections) is.push_back(json::array({s.i, s.j, rational(s.value)}));
    j["intersections"] = is;
  }
  j["boundary"] = doc.boundary;
  j["isolated_boundary_points"] = doc.isolated_boundary_points;
  json cl = json::array();
  for (const auto& c : doc.false_fibre_claims) {
    json o{{"subject", c.subject}, {"certificate", c.certificate}};
    if (!c.reference.empty()) o["reference"] = c.reference;
    cl.push_back(o);
  }
  j["false_fibre_claims"] = cl;
  j["fibration_asserted"] = doc.fibration_asserted;
  j["complete_surface"] = doc.complete_surface;
  if (doc.elliptic) {
    json c;
    for (std::size_t k = 0; k < 5; ++k) c[kCoefficientNames[k]] = rational(doc.elliptic->a[k]);
    json ps = json::array();
    for (const auto& p : doc.elliptic->points) ps.push_back({{"x", rational(p.x)}, {"y", rational(p.y)}, {"m", p.m}});
    j["elliptic"] = {{"curve", c}, {"points", ps}};
  }
  json os = json::array();
  for (const auto& o : doc.scheme_contractibility) os.push_back({{"component", o.component}, {"verdict", o.verdict}});
  j["scheme_contractibility"] = os;
  return j;
}

inline SurfaceDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw schema_error("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_document(root);
}

/// A document resolved into library objects.
struct LoadedSurface {
  CompactifiedSurface surface;
  std::vector<OracleEntry> oracle;
  std::optional<WeierstrassCurve> curve;
  std::vector<WeightedPoint> points;
  std::optional<HironakaBuild> hironaka;  // set when the surface was generated from the elliptic block
  bool complete_surface = true;
};

inline WeierstrassCurve curve_of(const EllipticSpec& e) {
  try {
    return WeierstrassCurve(e.a[0], e.a[1], e.a[2], e.a[3], e.a[4]);
  } catch (const std::exception& ex) {
    throw schema_error("elliptic.curve", ex.what());
  }
}

inline std::vector<WeightedPoint> points_of(const EllipticSpec& e, const WeierstrassCurve& curve) {
  std::vector<WeightedPoint> out;
  for (std::size_t k = 0; k < e.points.size(); ++k) {
    const auto& p = e.points[k];
    if (!curve.contains(p.x, p.y)) throw schema_error(detail::at("elliptic.points", k), "point is not on the curve");
    out.push_back({ECPoint::affine(p.x, p.y), p.m});
  }
  return out;
}

/// Resolves names, builds the configuration (or the Hironaka surface when no
/// curves are listed), and verifies every false-fibre certificate.
inline LoadedSurface resolve(const SurfaceDocument& doc) {
  LoadedSurface out;
  out.complete_surface = doc.complete_surface;
  if (doc.elliptic) {
    out.curve = curve_of(*doc.elliptic);
    out.points = points_of(*doc.elliptic, *out.curve);
  }

  if (doc.curves.empty()) {
    if (out.points.empty()) throw schema_error("elliptic.points", "a generated surface needs at least one point");
    try {
      out.hironaka = hironaka_build(*out.curve, out.points, doc.fibration_asserted);
    } catch (const inconsistent_data&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw schema_error("elliptic.points", e.what());
    }
    out.surface = out.hironaka->surface;
    out.surface.isolated_boundary_points = doc.isolated_boundary_points;
    out.oracle = out.hironaka->scheme_oracle;
    if (!doc.boundary.empty()) throw schema_error("boundary", "the boundary of a generated surface is the cubic C");
  } else {
    std::vector<CurveNode> nodes;
    SymmetricMatrix gram(doc.curves.size());
    for (std::size_t k = 0; k < doc.curves.size(); ++k) {
      nodes.push_back({k, doc.curves[k].name, doc.curves[k].genus, doc.curves[k].proper});
      gram.set(k, k, doc.curves[k].self);
    }
    for (const auto& s : doc.intersections) gram.set(s.i, s.j, s.value);
    NodeSet boundary;
    Configuration config(std::move(nodes), std::move(gram));
    for (std::size_t k = 0; k < doc.boundary.size(); ++k) {
      auto id = config.find(doc.boundary[k]);
      if (!id) throw schema_error(detail::at("boundary", k), "unknown curve '" + doc.boundary[k] + "'");
      boundary.push_back(*id);
    }
    try {
      out.surface = make_surface(std::move(config), std::move(boundary), doc.isolated_boundary_points);
    } catch (const std::invalid_argument& e) {
      throw schema_error("curves", e.what());
    }
    out.surface.fibration_asserted = doc.fibration_asserted;
  }

  const Configuration& config = out.surface.ambient;
  auto node_set = [&](const std::vector<std::string>& ns, const std::string& path) {
    NodeSet s;
    for (std::size_t k = 0; k < ns.size(); ++k) {
      auto id = config.find(ns[k]);
      if (!id) throw schema_error(detail::at(path, k), "unknown curve '" + ns[k] + "'");
      s.push_back(*id);
    }
    if (s.empty()) throw schema_error(path, "empty curve list");
    return make_node_set(std::move(s));
  };

  for (std::size_t k = 0; k < doc.false_fibre_claims.size(); ++k) {
    const auto& c = doc.false_fibre_claims[k];
    const std::string p = detail::at("false_fibre_claims", k);
    FalseFibreClaim claim{node_set(c.subject, detail::at(p, "subject")), certificate_from_string(c.certificate), c.reference};
    FibreTypeReport ft = classify_fibre_type(config, claim.subject);
    if (ft.verdict != FibreVerdict::FibreType) {
      throw schema_error(detail::at(p, "subject"), "subject is " + to_string(ft.verdict) + ", a false fibre must be of fibre type");
    }
    if (claim.certificate == CertificateKind::NormalBundleNonTorsion) {
      if (claim.subject.size() != 1) throw schema_error(detail::at(p, "subject"), "normal-bundle certificate needs a single curve");
      NormalBundleResult nb = normal_bundle_certificate(config, claim.subject.front(), true);
      if (nb.outcome != NormalBundleOutcome::Certified) throw schema_error(detail::at(p, "certificate"), nb.message);
    } else if (claim.certificate == CertificateKind::GroupLawObstruction) {
      if (!out.curve) throw schema_error(detail::at(p, "certificate"), "group-law certificate needs an elliptic block");
      ObstructionResult ob = sum_obstruction(*out.curve, out.points);
      if (ob.verdict != Obstruction::Found) {
        throw inconsistent_data("false_fibre_claims[" + std::to_string(k) + "]: group-law certificate does not verify, the weighted sum " +
                                to_string(ob.sum) + " is torsion");
      }
    }
    bool dup = false;
    for (const auto& prev : out.surface.false_fibre_claims) dup = dup || prev.subject == claim.subject;
    if (!dup) out.surface.false_fibre_claims.push_back(std::move(claim));
  }

  for (std::size_t k = 0; k < doc.scheme_contractibility.size(); ++k) {
    const auto& o = doc.scheme_contractibility[k];
    const std::string p = detail::at("scheme_contractibility", k);
    NodeSet comp = node_set(o.component, detail::at(p, "component"));
    auto it = std::find_if(out.oracle.begin(), out.oracle.end(), [&](const OracleEntry& e) { return e.component == comp; });
    if (it != out.oracle.end()) {
      it->value = contractibility_from_string(o.verdict);
    } else {
      out.oracle.push_back({comp, contractibility_from_string(o.verdict)});
    }
  }
  return out;
}

inline json names_json(const Configuration& config, const NodeSet& set) {
  json a = json::array();
  for (auto id : set) a.push_back(config.node(id).name);
  return a;
}

inline json divisor_json(const Configuration& config, const Divisor& d) {
  json o = json::object();
  for (const auto& [id, c] : d.terms()) o[config.node(id).name] = detail::rational(c);
  return o;
}

}  // namespace surfsat::io
