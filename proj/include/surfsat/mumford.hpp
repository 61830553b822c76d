#pragma once

#include "surfsat/config.hpp"
#include "surfsat/linalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace surfsat {

/// An ambient configuration together with a negative definite set of
/// exceptional curves to be contracted.
class ContractionContext {
 public:
  ContractionContext(Configuration ambient, NodeSet exceptional)
      : ambient_(std::move(ambient)), exceptional_(make_node_set(std::move(exceptional))) {
    check_subset(ambient_, exceptional_);
    if (!is_negative_definite(ambient_.gram().principal(exceptional_))) {
      throw std::invalid_argument("exceptional set " + describe(ambient_, exceptional_) +
                                  " is not negative definite and cannot be contracted");
    }
    components_ = connected_components(ambient_, exceptional_);
  }

  const Configuration& ambient() const { return ambient_; }
  const NodeSet& exceptional() const { return exceptional_; }
  const std::vector<NodeSet>& exceptional_components() const { return components_; }

  bool is_exceptional(NodeId id) const { return std::binary_search(exceptional_.begin(), exceptional_.end(), id); }

 private:
  Configuration ambient_;
  NodeSet exceptional_;
  std::vector<NodeSet> components_;
};

/// Mumford pullback: strict + sum a_i E_i with (pullback . E_j) = 0 for every
/// exceptional E_j. One exact solve per connected component of the
/// exceptional set; components the strict transform does not meet get 0.
inline Divisor pullback(const ContractionContext& ctx, const Divisor& strict) {
  for (auto id : strict.support()) {
    if (id >= ctx.ambient().size()) throw std::out_of_range("divisor references unknown node " + std::to_string(id));
    if (ctx.is_exceptional(id)) {
      throw std::invalid_argument("pullback: strict transform contains exceptional curve '" +
                                  ctx.ambient().node(id).name + "'");
    }
  }
  Divisor out = strict;
  const auto& gram = ctx.ambient().gram();
  for (const auto& comp : ctx.exceptional_components()) {
    Vector rhs(comp.size());
    bool meets = false;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      rhs[k] = -intersection_number(ctx.ambient(), strict, Divisor::prime(comp[k]));
      if (rhs[k] != 0) meets = true;
    }
    if (!meets) continue;
    auto a = solve(gram.principal(comp), rhs);
    if (!a) throw std::logic_error("pullback: singular exceptional block");  // excluded by definiteness
    for (std::size_t k = 0; k < comp.size(); ++k) out.set(comp[k], (*a)[k]);
  }
  return out;
}

inline Rational induced_product(const ContractionContext& ctx, const Divisor& a, const Divisor& b) {
  return intersection_number(ctx.ambient(), pullback(ctx, a), pullback(ctx, b));
}

/// Image point of a contracted part.
struct SingularPoint {
  std::string name;
  NodeSet part;  // ids in the configuration that was contracted

  friend bool operator==(const SingularPoint&, const SingularPoint&) = default;
};

struct Contraction {
  Configuration config;                   // surviving curves, induced Gram
  std::vector<NodeId> kept;               // kept[i] = input id of node i
  std::vector<SingularPoint> singular_points;
};

/// Contracts each part to a point. Parts must be nonempty, connected, pairwise
/// disjoint as node sets, and their union must be negative definite.
inline Contraction contract(const Configuration& config, const std::vector<NodeSet>& parts) {
  NodeSet all;
  for (const auto& raw : parts) {
    NodeSet part = make_node_set(raw);
    check_subset(config, part);
    if (part.empty()) throw std::invalid_argument("contract: empty part");
    if (!is_connected(config, part)) throw std::invalid_argument("contract: part " + describe(config, part) + " is not connected");
    if (!is_negative_definite(config.gram().principal(part))) {
      throw std::invalid_argument("contract: part " + describe(config, part) +
                                  " is not negative definite; only negative definite components are contractible "
                                  "(no-negative-definite-component)");
    }
    for (auto id : part) {
      if (std::binary_search(all.begin(), all.end(), id)) throw std::invalid_argument("contract: parts overlap");
    }
    all = make_node_set([&] {
      auto v = all;
      v.insert(v.end(), part.begin(), part.end());
      return v;
    }());
  }

  ContractionContext ctx(config, all);
  Contraction out;
  for (NodeId i = 0; i < config.size(); ++i)
    if (!ctx.is_exceptional(i)) out.kept.push_back(i);

  std::vector<Divisor> pulled;
  pulled.reserve(out.kept.size());
  for (auto id : out.kept) pulled.push_back(pullback(ctx, Divisor::prime(id)));

  std::vector<CurveNode> nodes;
  SymmetricMatrix gram(out.kept.size());
  for (std::size_t a = 0; a < out.kept.size(); ++a) {
    CurveNode n = config.node(out.kept[a]);
    n.id = a;
    nodes.push_back(std::move(n));
    for (std::size_t b = a; b < out.kept.size(); ++b) {
      // projection formula: pi^*C_a . pi^*C_b = pi^*C_a . C_b
      gram.set(a, b, intersection_number(config, pulled[a], Divisor::prime(out.kept[b])));
    }
  }
  out.config = Configuration(std::move(nodes), std::move(gram));
  for (const auto& raw : parts) {
    NodeSet part = make_node_set(raw);
    out.singular_points.push_back({"q" + describe(config, part), part});
  }
  return out;
}

}  // namespace surfsat
