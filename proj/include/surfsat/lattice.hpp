#pragma once

#include "surfsat/config.hpp"
#include "surfsat/linalg.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfsat {

/// Integer coordinates of a class in the lattice basis.
using ClassVector = std::vector<std::int64_t>;

struct ClassRecord {
  ClassVector cls;
  int genus = 0;
  std::string name;
  // When set, `genus` must equal the adjunction genus.
  bool smooth = false;

  friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

/// Neron-Severi lattice of a blowup of P^2: basis L, E_1, ..., E_k with
/// integral Gram matrix of signature (1, rho-1) and canonical class K.
class NSLattice {
 public:
  NSLattice(std::vector<std::string> basis_names, SymmetricMatrix gram, ClassVector canonical)
      : names_(std::move(basis_names)), gram_(std::move(gram)), canonical_(std::move(canonical)) {
    const std::size_t rho = names_.size();
    if (rho == 0) throw std::invalid_argument("lattice rank must be positive");
    if (gram_.size() != rho || canonical_.size() != rho) throw std::invalid_argument("lattice dimension mismatch");
    for (std::size_t i = 0; i < rho; ++i)
      for (std::size_t j = 0; j < rho; ++j)
        if (!is_integral(gram_(i, j))) throw std::invalid_argument("lattice gram must be integral");
    if (inertia(gram_) != Inertia{1, rho - 1, 0}) {
      throw std::invalid_argument("lattice violates Hodge index: inertia " + to_string(inertia(gram_)));
    }
  }

  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const SymmetricMatrix& gram() const { return gram_; }
  const ClassVector& canonical() const { return canonical_; }

  Rational pair(const ClassVector& a, const ClassVector& b) const {
    check(a);
    check(b);
    return gram_.bilinear(to_vector(a), to_vector(b));
  }

  ClassVector basis_vector(std::size_t i) const {
    ClassVector v(rank(), 0);
    v.at(i) = 1;
    return v;
  }

 private:
  void check(const ClassVector& c) const {
    if (c.size() != rank()) throw std::invalid_argument("class vector has wrong dimension");
  }
  static Vector to_vector(const ClassVector& c) {
    Vector v;
    v.reserve(c.size());
    for (auto x : c) v.emplace_back(x);
    return v;
  }

  std::vector<std::string> names_;
  SymmetricMatrix gram_;
  ClassVector canonical_;
};

/// P^2 with basis {L}, L^2 = 1, K = -3L.
inline NSLattice projective_plane() { return NSLattice({"L"}, SymmetricMatrix{{1}}, {-3}); }

inline Rational adjunction_genus(const NSLattice& lat, const ClassVector& c) {
  ClassVector ck(c);
  for (std::size_t i = 0; i < ck.size() && i < lat.canonical().size(); ++i) ck[i] += lat.canonical()[i];
  return lat.pair(c, ck) / 2 + 1;
}

struct BlowupResult {
  NSLattice lattice;
  std::vector<ClassRecord> classes;  // strict transforms, in input order
  ClassRecord exceptional;
};

/// Blows up one point. `multiplicity[i]` is the multiplicity of tracked class
/// i at the point (0 when the curve misses it); the strict transform of a
/// class C is C - mE.
inline BlowupResult blowup(const NSLattice& lat, std::span<const ClassRecord> tracked,
                           std::span<const int> multiplicity, std::string exceptional_name = {}) {
  if (tracked.size() != multiplicity.size()) throw std::invalid_argument("blowup: one multiplicity per tracked class");
  for (int m : multiplicity)
    if (m < 0) throw std::invalid_argument("blowup: negative multiplicity " + std::to_string(m));

  const std::size_t rho = lat.rank();
  if (exceptional_name.empty()) exceptional_name = "E" + std::to_string(rho);

  SymmetricMatrix gram(rho + 1);
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = 0; j < rho; ++j) gram.set(i, j, lat.gram()(i, j));
  gram.set(rho, rho, -1);

  ClassVector canonical = lat.canonical();
  canonical.push_back(1);  // K' = K + E

  auto names = lat.basis_names();
  names.push_back(exceptional_name);

  std::vector<ClassRecord> classes;
  classes.reserve(tracked.size());
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    ClassRecord r = tracked[i];
    if (r.cls.size() != rho) throw std::invalid_argument("blowup: tracked class '" + r.name + "' has wrong dimension");
    r.cls.push_back(-multiplicity[i]);
    classes.push_back(std::move(r));
  }

  ClassRecord e;
  e.cls.assign(rho + 1, 0);
  e.cls[rho] = 1;
  e.genus = 0;
  e.name = exceptional_name;
  e.smooth = true;

  return {NSLattice(std::move(names), std::move(gram), std::move(canonical)), std::move(classes), std::move(e)};
}

/// Configuration whose Gram matrix is the lattice pairing of the listed
/// classes. Rejects pairs of distinct records with negative intersection and
/// smooth records whose stored genus disagrees with adjunction.
inline Configuration configuration_from_classes(const NSLattice& lat, std::span<const ClassRecord> records) {
  const std::size_t n = records.size();
  std::vector<CurveNode> nodes;
  SymmetricMatrix gram(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = records[i];
    if (r.smooth && adjunction_genus(lat, r.cls) != r.genus) {
      throw std::invalid_argument("class '" + r.name + "' is marked smooth with genus " + std::to_string(r.genus) +
                                  " but adjunction gives " + to_string(adjunction_genus(lat, r.cls)));
    }
    nodes.push_back({i, r.name, r.genus, true});
    for (std::size_t j = i; j < n; ++j) {
      Rational p = lat.pair(r.cls, records[j].cls);
      if (j != i && p < 0) {
        throw std::invalid_argument("classes '" + r.name + "' and '" + records[j].name +
                                    "' have negative intersection " + to_string(p));
      }
      gram.set(i, j, p);
    }
  }
  return Configuration(std::move(nodes), std::move(gram));
}

}  // namespace surfsat
