#pragma once

#include "surfsat/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfsat {

using NodeId = std::size_t;
/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

inline NodeSet make_node_set(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

struct CurveNode {
  NodeId id = 0;
  std::string name;
  int genus = 0;  // geometric genus of the normalization
  bool proper = true;

  friend bool operator==(const CurveNode&, const CurveNode&) = default;
};

/// Weighted dual graph of prime divisors: nodes plus the Gram matrix of
/// pairwise intersection numbers. Distinct curves meet non-negatively.
class Configuration {
 public:
  Configuration() = default;

  Configuration(std::vector<CurveNode> nodes, SymmetricMatrix gram)
      : nodes_(std::move(nodes)), gram_(std::move(gram)) {
    if (gram_.size() != nodes_.size()) {
      throw std::invalid_argument("configuration: gram has dimension " + std::to_string(gram_.size()) + " but " +
                                  std::to_string(nodes_.size()) + " curves are listed");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].id != i) throw std::invalid_argument("configuration: node ids must be 0..n-1 in order");
      if (nodes_[i].genus < 0) throw std::invalid_argument("configuration: negative genus on '" + nodes_[i].name + "'");
      for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
        if (gram_(i, j) < 0) {
          throw std::invalid_argument("configuration: distinct curves '" + nodes_[i].name + "' and '" +
                                      nodes_[j].name + "' have negative intersection " + to_string(gram_(i, j)));
        }
      }
    }
    origin_.resize(nodes_.size());
    for (std::size_t i = 0; i < origin_.size(); ++i) origin_[i] = i;
  }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<CurveNode>& nodes() const { return nodes_; }
  const CurveNode& node(NodeId i) const { return nodes_.at(i); }
  const SymmetricMatrix& gram() const { return gram_; }

  /// For a restricted configuration: the id each node had in the configuration
  /// it was restricted from. Identity otherwise.
  const std::vector<NodeId>& origin() const { return origin_; }

  NodeSet all_nodes() const {
    NodeSet s(nodes_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
    return s;
  }

  std::optional<NodeId> find(const std::string& name) const {
    for (const auto& n : nodes_)
      if (n.name == name) return n.id;
    return std::nullopt;
  }

  bool adjacent(NodeId i, NodeId j) const { return i != j && gram_(i, j) > 0; }

  friend Configuration restrict_to(const Configuration& config, const NodeSet& subset);

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<CurveNode> nodes_;
  SymmetricMatrix gram_;
  std::vector<NodeId> origin_;
};

inline void check_subset(const Configuration& config, const NodeSet& subset) {
  for (auto id : subset)
    if (id >= config.size()) throw std::out_of_range("node id " + std::to_string(id) + " not in configuration");
}

/// Induced sub-configuration. Ids are renumbered 0..k-1 in subset order;
/// origin() maps them back to the ids of `config`.
inline Configuration restrict_to(const Configuration& config, const NodeSet& subset) {
  check_subset(config, subset);
  std::vector<CurveNode> nodes;
  nodes.reserve(subset.size());
  for (std::size_t k = 0; k < subset.size(); ++k) {
    CurveNode n = config.node(subset[k]);
    n.id = k;
    nodes.push_back(std::move(n));
  }
  Configuration out(std::move(nodes), config.gram().principal(subset));
  for (std::size_t k = 0; k < subset.size(); ++k) out.origin_[k] = config.origin_[subset[k]];
  return out;
}

/// Partition of `subset` into connected components of the graph with edges
/// where the intersection number is positive. Components are sorted, and
/// ordered by their least node id.
inline std::vector<NodeSet> connected_components(const Configuration& config, const NodeSet& subset) {
  check_subset(config, subset);
  std::vector<NodeSet> out;
  std::vector<bool> seen(config.size(), false);
  std::vector<bool> in_subset(config.size(), false);
  for (auto id : subset) in_subset[id] = true;
  for (auto start : make_node_set(subset)) {
    if (seen[start]) continue;
    NodeSet comp;
    std::vector<NodeId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeId w = 0; w < config.size(); ++w) {
        if (in_subset[w] && !seen[w] && config.adjacent(v, w)) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    out.push_back(make_node_set(std::move(comp)));
  }
  return out;
}

inline bool is_connected(const Configuration& config, const NodeSet& subset) {
  return !subset.empty() && connected_components(config, subset).size() == 1;
}

/// True when no node of `a` shares an id with or meets a node of `b`.
inline bool are_disjoint(const Configuration& config, const NodeSet& a, const NodeSet& b) {
  for (auto i : a)
    for (auto j : b)
      if (i == j || config.adjacent(i, j)) return false;
  return true;
}

/// Formal Q-linear combination of configuration curves.
class Divisor {
 public:
  Divisor() = default;

  static Divisor prime(NodeId id, const Rational& c = 1) {
    Divisor d;
    d.set(id, c);
    return d;
  }

  Rational coefficient(NodeId id) const {
    auto it = coeff_.find(id);
    return it == coeff_.end() ? Rational(0) : it->second;
  }

  void set(NodeId id, const Rational& c) {
    if (c == 0)
      coeff_.erase(id);
    else
      coeff_[id] = c;
  }

  const std::map<NodeId, Rational>& terms() const { return coeff_; }

  bool is_zero() const { return coeff_.empty(); }

  NodeSet support() const {
    NodeSet s;
    for (const auto& [id, c] : coeff_) s.push_back(id);
    return s;
  }

  bool is_effective() const {
    return std::all_of(coeff_.begin(), coeff_.end(), [](const auto& kv) { return kv.second > 0; });
  }

  Divisor& operator+=(const Divisor& o) {
    for (const auto& [id, c] : o.coeff_) set(id, coefficient(id) + c);
    return *this;
  }
  Divisor& operator-=(const Divisor& o) {
    for (const auto& [id, c] : o.coeff_) set(id, coefficient(id) - c);
    return *this;
  }
  Divisor& operator*=(const Rational& s) {
    if (s == 0) {
      coeff_.clear();
      return *this;
    }
    for (auto& [id, c] : coeff_) c *= s;
    return *this;
  }

  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(const Rational& s, Divisor d) { return d *= s; }

  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  std::map<NodeId, Rational> coeff_;
};

inline NodeSet support(const Divisor& d) { return d.support(); }
inline bool is_effective(const Divisor& d) { return d.is_effective(); }

/// Sum of the curves in `subset`, each with coefficient one.
inline Divisor reduced(const NodeSet& subset) {
  Divisor d;
  for (auto id : subset) d.set(id, 1);
  return d;
}

inline Rational intersection_number(const Configuration& config, const Divisor& a, const Divisor& b) {
  Rational s = 0;
  for (const auto& [i, ci] : a.terms()) {
    if (i >= config.size()) throw std::out_of_range("divisor references unknown node " + std::to_string(i));
    for (const auto& [j, cj] : b.terms()) {
      if (j >= config.size()) throw std::out_of_range("divisor references unknown node " + std::to_string(j));
      const Rational& g = config.gram()(i, j);
      if (g != 0) s += ci * cj * g;
    }
  }
  return s;
}

inline std::string describe(const Configuration& config, const NodeSet& set) {
  std::string s = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) s += ",";
    s += config.node(set[k]).name;
  }
  return s + "}";
}

}  // namespace surfsat
