#pragma once

#include "surfsat/config.hpp"
#include "surfsat/errors.hpp"
#include "surfsat/linalg.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace surfsat {

enum class FibreVerdict { FibreType, NegativeDefinite, NotSemidefinite, Disconnected };

inline std::string to_string(FibreVerdict v) {
  switch (v) {
    case FibreVerdict::FibreType: return "FibreType";
    case FibreVerdict::NegativeDefinite: return "NegativeDefinite";
    case FibreVerdict::NotSemidefinite: return "NotSemidefinite";
    case FibreVerdict::Disconnected: return "Disconnected";
  }
  return "?";
}

struct FibreTypeReport {
  NodeSet subject;
  FibreVerdict verdict = FibreVerdict::NegativeDefinite;
  Inertia inertia;
  std::optional<Divisor> kernel;  // present iff verdict == FibreType
};

/// Fibre type: connected, negative semidefinite, not negative definite. For a
/// fibre-type subject the kernel divisor F is the primitive effective integral
/// divisor with F.C = 0 for every C in the subject.
inline FibreTypeReport classify_fibre_type(const Configuration& config, const NodeSet& raw_subject) {
  NodeSet subject = make_node_set(raw_subject);
  if (subject.empty()) throw std::invalid_argument("classify_fibre_type: empty subject");
  check_subset(config, subject);
  for (auto id : subject)
    if (!config.node(id).proper) throw std::invalid_argument("classify_fibre_type: curve '" + config.node(id).name + "' is not proper");

  FibreTypeReport r;
  r.subject = subject;
  const SymmetricMatrix g = config.gram().principal(subject);
  r.inertia = inertia(g);
  if (r.inertia.positive > 0) {
    r.verdict = FibreVerdict::NotSemidefinite;
    return r;
  }
  if (r.inertia.zero == 0) {
    r.verdict = FibreVerdict::NegativeDefinite;
    return r;
  }
  if (!is_connected(config, subject)) {
    r.verdict = FibreVerdict::Disconnected;
    return r;
  }
  auto ker = kernel_basis(g);
  if (ker.size() != 1) {
    throw inconsistent_data("connected semidefinite divisor " + describe(config, subject) + " has a " +
                            std::to_string(ker.size()) + "-dimensional kernel; a fibre-type kernel divisor is unique up to multiples");
  }
  Divisor f;
  for (std::size_t k = 0; k < subject.size(); ++k) {
    if (ker[0][k] <= 0) {
      throw inconsistent_data("kernel divisor of " + describe(config, subject) + " is not effective with full support");
    }
    f.set(subject[k], ker[0][k]);
  }
  r.verdict = FibreVerdict::FibreType;
  r.kernel = std::move(f);
  return r;
}

enum class ZariskiStatus { Ok, Violations, Skipped };

inline std::string to_string(ZariskiStatus s) {
  switch (s) {
    case ZariskiStatus::Ok: return "ok";
    case ZariskiStatus::Violations: return "violations";
    case ZariskiStatus::Skipped: return "skipped, n > 16";
  }
  return "?";
}

struct ZariskiViolation {
  std::string what;
  NodeSet witness;
};

struct ZariskiReport {
  ZariskiStatus status = ZariskiStatus::Ok;
  std::size_t subsets_checked = 0;
  std::vector<ZariskiViolation> violations;  // ordered, least witness first
};

inline constexpr std::size_t kZariskiMaxNodes = 16;

/// Exhaustive check that every proper nonempty sub-support of a fibre-type
/// subject is negative definite and that its kernel is one-dimensional.
inline ZariskiReport validate_zariski(const Configuration& config, const NodeSet& raw_subject) {
  NodeSet subject = make_node_set(raw_subject);
  ZariskiReport rep;
  if (subject.size() > kZariskiMaxNodes) {
    rep.status = ZariskiStatus::Skipped;
    return rep;
  }
  FibreTypeReport ft = classify_fibre_type(config, subject);
  if (ft.verdict != FibreVerdict::FibreType) {
    rep.status = ZariskiStatus::Violations;
    rep.violations.push_back({"subject is " + to_string(ft.verdict) + ", not of fibre type", subject});
    return rep;
  }

  const SymmetricMatrix g = config.gram().principal(subject);
  if (kernel_basis(g).size() != 1) {
    rep.violations.push_back({"kernel is not one-dimensional", subject});
  }

  const std::size_t n = subject.size();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  auto subset_of = [&](std::uint32_t mask) {
    NodeSet s;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::uint32_t{1} << k)) s.push_back(k);
    return s;
  };

  // Masks are split across workers; results are merged and re-sorted so the
  // reported witness does not depend on scheduling.
  const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::vector<NodeSet>> bad(workers);
  auto work = [&](unsigned w) {
    for (std::uint32_t mask = 1 + w; mask < full; mask += workers) {
      NodeSet local = subset_of(mask);
      if (!is_negative_definite(g.principal(local))) bad[w].push_back(std::move(local));
    }
  };
  if (workers == 1 || n < 8) {
    for (unsigned w = 0; w < workers; ++w) work(w);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  rep.subsets_checked = full - 1;

  std::vector<NodeSet> witnesses;
  for (auto& b : bad)
    for (auto& local : b) {
      NodeSet s;
      for (auto k : local) s.push_back(subject[k]);
      witnesses.push_back(std::move(s));
    }
  std::sort(witnesses.begin(), witnesses.end());
  for (auto& s : witnesses) rep.violations.push_back({"proper sub-support is not negative definite", std::move(s)});
  rep.status = rep.violations.empty() ? ZariskiStatus::Ok : ZariskiStatus::Violations;
  return rep;
}

enum class ProportionalityStatus { Proportional, NotProportional, Undetermined };

struct ProportionalityResult {
  ProportionalityStatus status = ProportionalityStatus::Undetermined;
  std::optional<Rational> factor;         // c with F1.P = c (F2.P)
  std::optional<std::size_t> witness;     // index of the refuting probe
};

namespace detail {

// F must be a positive multiple of the kernel divisor of its support, and
// that support must be of fibre type.
inline void require_kernel_divisor(const Configuration& config, const Divisor& f, const char* label) {
  if (f.is_zero()) throw std::invalid_argument(std::string("proportionality: ") + label + " is zero");
  FibreTypeReport r = classify_fibre_type(config, f.support());
  if (r.verdict != FibreVerdict::FibreType) {
    throw std::invalid_argument(std::string("proportionality: support of ") + label + " is " + to_string(r.verdict) +
                                ", not of fibre type");
  }
  const NodeId first = r.subject.front();
  Rational scale = f.coefficient(first) / r.kernel->coefficient(first);
  if (scale <= 0 || !(scale * *r.kernel == f)) {
    throw std::invalid_argument(std::string("proportionality: ") + label + " is not a positive multiple of its kernel divisor");
  }
}

}  // namespace detail

/// Numerical proportionality of the kernel divisors of two disjoint
/// fibre-type subjects, tested against the supplied probe divisors.
inline ProportionalityResult proportionality(const Configuration& config, const Divisor& f1, const Divisor& f2,
                                             const std::vector<Divisor>& probes) {
  detail::require_kernel_divisor(config, f1, "F1");
  detail::require_kernel_divisor(config, f2, "F2");
  if (!are_disjoint(config, f1.support(), f2.support())) {
    throw std::invalid_argument("proportionality: supports of F1 and F2 are not disjoint");
  }
  ProportionalityResult res;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    Rational a = intersection_number(config, f1, probes[p]);
    Rational b = intersection_number(config, f2, probes[p]);
    if (b == 0) {
      if (a != 0) return {ProportionalityStatus::NotProportional, std::nullopt, p};
      continue;
    }
    Rational c = a / b;
    if (c == 0 || (res.factor && *res.factor != c)) return {ProportionalityStatus::NotProportional, std::nullopt, p};
    res.factor = c;
  }
  res.status = res.factor ? ProportionalityStatus::Proportional : ProportionalityStatus::Undetermined;
  return res;
}

struct PairCheck {
  bool ok = true;
  std::string violation;
};

/// For a fibre-type D1 on a complete surface, any disjoint connected D2 that
/// is not negative definite must be of fibre type too (Hodge index).
inline PairCheck check_disjoint_pair(const Configuration& config, const NodeSet& d1, const NodeSet& d2,
                                     bool complete_surface) {
  if (!complete_surface) throw std::invalid_argument("check_disjoint_pair: configuration is not flagged complete-surface");
  if (classify_fibre_type(config, d1).verdict != FibreVerdict::FibreType) {
    throw std::invalid_argument("check_disjoint_pair: D1 " + describe(config, d1) + " is not of fibre type");
  }
  if (!are_disjoint(config, make_node_set(d1), make_node_set(d2))) {
    throw std::invalid_argument("check_disjoint_pair: D1 and D2 are not disjoint");
  }
  if (!is_connected(config, make_node_set(d2))) throw std::invalid_argument("check_disjoint_pair: D2 is not connected");
  FibreTypeReport r2 = classify_fibre_type(config, d2);
  if (r2.verdict == FibreVerdict::NegativeDefinite) {
    throw std::invalid_argument("check_disjoint_pair: D2 is negative definite");
  }
  if (r2.verdict != FibreVerdict::FibreType) {
    return {false, "D2 " + describe(config, r2.subject) + " is " + to_string(r2.verdict) + " although disjoint from fibre-type D1 " +
                       describe(config, make_node_set(d1)) + "; by the Hodge index theorem it must be of fibre type"};
  }
  return {};
}

enum class CertificateKind { NormalBundleNonTorsion, GroupLawObstruction, UserAsserted };

inline std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::NormalBundleNonTorsion: return "normal_bundle_non_torsion";
    case CertificateKind::GroupLawObstruction: return "group_law_obstruction";
    case CertificateKind::UserAsserted: return "user_asserted";
  }
  return "?";
}

inline CertificateKind certificate_from_string(const std::string& s) {
  if (s == "normal_bundle_non_torsion") return CertificateKind::NormalBundleNonTorsion;
  if (s == "group_law_obstruction") return CertificateKind::GroupLawObstruction;
  if (s == "user_asserted") return CertificateKind::UserAsserted;
  throw std::invalid_argument("unknown certificate '" + s + "'");
}

struct FalseFibreClaim {
  NodeSet subject;
  CertificateKind certificate = CertificateKind::UserAsserted;
  std::string reference;

  friend bool operator==(const FalseFibreClaim&, const FalseFibreClaim&) = default;
};

struct ClaimsCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> triple;  // indices of pairwise disjoint claims
  std::string message;
};

/// At most two false fibres can be pairwise disjoint. Reports the least
/// offending triple of claim indices.
inline ClaimsCheck validate_false_fibre_claims(const std::vector<FalseFibreClaim>& claims, const Configuration& config) {
  for (const auto& c : claims) {
    if (c.subject.empty() || classify_fibre_type(config, c.subject).verdict != FibreVerdict::FibreType) {
      throw std::invalid_argument("false-fibre claim on " + describe(config, make_node_set(c.subject)) +
                                  " whose subject is not of fibre type");
    }
  }
  const std::size_t n = claims.size();
  auto disjoint = [&](std::size_t a, std::size_t b) {
    return are_disjoint(config, make_node_set(claims[a].subject), make_node_set(claims[b].subject));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!disjoint(i, j)) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (disjoint(i, k) && disjoint(j, k)) {
          return {false, std::array<std::size_t, 3>{i, j, k},
                  "false fibres " + describe(config, make_node_set(claims[i].subject)) + ", " +
                      describe(config, make_node_set(claims[j].subject)) + ", " +
                      describe(config, make_node_set(claims[k].subject)) +
                      " are pairwise disjoint; at most two false fibres can be"};
        }
      }
    }
  return {};
}

enum class NormalBundleOutcome { Certified, Inconclusive, Rejected };

struct NormalBundleResult {
  NormalBundleOutcome outcome = NormalBundleOutcome::Inconclusive;
  std::string message;
};

/// A smooth curve C with C^2 = deg N = 0 and non-torsion normal bundle is a
/// false fibre. A torsion normal bundle decides nothing.
inline NormalBundleResult normal_bundle_certificate(const Rational& degree, bool nontorsion) {
  if (degree != 0) {
    return {NormalBundleOutcome::Rejected, "deg N = C^2 = " + to_string(degree) + " must vanish for fibre type"};
  }
  if (!nontorsion) {
    return {NormalBundleOutcome::Inconclusive, "normal bundle not known to be non-torsion; a torsion or trivial normal bundle does not decide"};
  }
  return {NormalBundleOutcome::Certified, "degree-0 non-torsion normal bundle"};
}

inline NormalBundleResult normal_bundle_certificate(const Configuration& config, NodeId node, bool nontorsion) {
  check_subset(config, {node});
  return normal_bundle_certificate(config.gram()(node, node), nontorsion);
}

}  // namespace surfsat
