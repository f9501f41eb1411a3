#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sng/errors.hpp"
#include "sng/rational.hpp"

namespace sng {

/// One node's choice: abstain (the reserved token "t0") or one product from
/// the universe, identified by its index in the universe order.
class Strategy {
 public:
  constexpr Strategy() : value_(-1) {}

  static constexpr Strategy abstain() { return Strategy(); }
  static Strategy product(int index) {
    Strategy s;
    s.value_ = static_cast<std::int16_t>(index);
    return s;
  }

  bool is_abstain() const { return value_ < 0; }
  int product_index() const { return value_; }

  friend bool operator==(Strategy a, Strategy b) { return a.value_ == b.value_; }
  friend bool operator!=(Strategy a, Strategy b) { return a.value_ != b.value_; }
  // Ordering: t0 first, then products in universe order. All enumerations
  // in the library are lexicographic under this order.
  friend bool operator<(Strategy a, Strategy b) { return a.value_ < b.value_; }

 private:
  std::int16_t value_;
};

using JointStrategy = std::vector<Strategy>;
using PayoffVector = std::vector<Rational>;

inline const std::string kAbstainToken = "t0";

/// Raw, not-yet-checked network description. Numeric fields are strings so
/// that exactness is preserved end to end ("0.3" means 3/10, never a float).
struct NodeDescription {
  std::string id;
  std::vector<std::string> products;
  std::map<std::string, std::string> thresholds;  // product -> threshold
};

struct EdgeDescription {
  std::string from;
  std::string to;
  std::string weight;
};

struct NetworkDescription {
  std::string c0 = "1";
  std::vector<std::string> products;
  std::vector<NodeDescription> nodes;
  std::vector<EdgeDescription> edges;
  std::string name;
  std::string notes;
};

/// Validated immutable social network: weighted directed graph, product
/// universe, per-node product sets and thresholds, and the source-node payoff
/// constant c0. Safe to share across threads; every operation on it is a pure
/// function.
class SocialNetwork {
 public:
  struct InEdge {
    int from;
    Rational weight;
  };

  int node_count() const { return static_cast<int>(node_names_.size()); }
  int product_count() const { return static_cast<int>(product_names_.size()); }

  const std::string& node_name(int i) const { return node_names_[i]; }
  const std::string& product_name(int t) const { return product_names_[t]; }
  const std::vector<std::string>& node_names() const { return node_names_; }
  const std::vector<std::string>& product_names() const { return product_names_; }

  std::optional<int> node_index(const std::string& id) const {
    auto it = node_lookup_.find(id);
    if (it == node_lookup_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> product_index(const std::string& id) const {
    auto it = product_lookup_.find(id);
    if (it == product_lookup_.end()) return std::nullopt;
    return it->second;
  }

  /// In-neighbourhood N(i) with weights w_ji, sorted by source node.
  const std::vector<InEdge>& in_edges(int i) const { return in_edges_[i]; }
  bool is_source(int i) const { return in_edges_[i].empty(); }

  /// P(i), sorted by universe index.
  const std::vector<int>& product_set(int i) const { return product_sets_[i]; }
  bool owns(int i, int product) const {
    const auto& set = product_sets_[i];
    return std::binary_search(set.begin(), set.end(), product);
  }

  /// theta(i, t); defined exactly for t in P(i).
  const Rational& threshold(int i, int product) const {
    const auto& set = product_sets_[i];
    auto it = std::lower_bound(set.begin(), set.end(), product);
    if (it == set.end() || *it != product)
      throw PreconditionError("no threshold for node " + node_names_[i] +
                              " and product " + product_names_[product]);
    return thresholds_[i][it - set.begin()];
  }

  const Rational& c0() const { return c0_; }

  /// Strategy choices of node i in enumeration order: t0, then products.
  std::vector<Strategy> strategy_options(int i) const {
    std::vector<Strategy> options;
    options.reserve(product_sets_[i].size() + 1);
    options.push_back(Strategy::abstain());
    for (int t : product_sets_[i]) options.push_back(Strategy::product(t));
    return options;
  }

  bool legal(int i, Strategy s) const {
    return s.is_abstain() || owns(i, s.product_index());
  }

  /// All edges in canonical (from, to) order; used for export and round trips.
  const std::vector<std::tuple<int, int, Rational>>& edges() const { return edges_; }

  const std::string& name() const { return name_; }
  const std::string& notes() const { return notes_; }

  std::string strategy_label(Strategy s) const {
    return s.is_abstain() ? kAbstainToken : product_names_[s.product_index()];
  }

  friend SocialNetwork validate_network(const NetworkDescription& description);

 private:
  SocialNetwork() = default;

  std::vector<std::string> node_names_;
  std::vector<std::string> product_names_;
  std::unordered_map<std::string, int> node_lookup_;
  std::unordered_map<std::string, int> product_lookup_;
  std::vector<std::vector<InEdge>> in_edges_;
  std::vector<std::vector<int>> product_sets_;
  std::vector<std::vector<Rational>> thresholds_;  // aligned with product_sets_
  std::vector<std::tuple<int, int, Rational>> edges_;
  Rational c0_;
  std::string name_;
  std::string notes_;
};

/// Checks every network invariant and builds the immutable representation.
/// The first violated invariant wins, checked in the order: edge structure
/// and weights, in-weight sums, product sets, thresholds, c0.
inline SocialNetwork validate_network(const NetworkDescription& description) {
  SocialNetwork net;
  net.name_ = description.name;
  net.notes_ = description.notes;

  for (const auto& node : description.nodes) {
    if (net.node_lookup_.count(node.id))
      throw ValidationError(ValidationCode::DuplicateNode, "node '" + node.id + "'");
    net.node_lookup_.emplace(node.id, static_cast<int>(net.node_names_.size()));
    net.node_names_.push_back(node.id);
  }
  for (const auto& product : description.products) {
    if (product == kAbstainToken)
      throw ValidationError(ValidationCode::DuplicateProduct,
                            "'" + kAbstainToken + "' is reserved and not a product");
    if (net.product_lookup_.count(product))
      throw ValidationError(ValidationCode::DuplicateProduct, "product '" + product + "'");
    net.product_lookup_.emplace(product, static_cast<int>(net.product_names_.size()));
    net.product_names_.push_back(product);
  }

  auto parse_number = [](const std::string& text, const std::string& where) {
    try {
      return Rational::parse(text);
    } catch (const std::exception& e) {
      throw ValidationError(ValidationCode::NumberFormat, where + ": " + e.what());
    }
  };

  const int n = net.node_count();
  net.in_edges_.resize(n);
  net.product_sets_.resize(n);
  net.thresholds_.resize(n);

  // Edges: structure and weight ranges, in declaration order.
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (const auto& edge : description.edges) {
    auto from = net.node_index(edge.from);
    auto to = net.node_index(edge.to);
    if (!from)
      throw ValidationError(ValidationCode::UnknownNode, "edge from '" + edge.from + "'");
    if (!to) throw ValidationError(ValidationCode::UnknownNode, "edge to '" + edge.to + "'");
    if (*from == *to)
      throw ValidationError(ValidationCode::SelfLoopEdge, "edge on '" + edge.from + "'");
    if (seen[*from][*to])
      throw ValidationError(ValidationCode::DuplicateEdge,
                            "edge " + edge.from + " -> " + edge.to);
    seen[*from][*to] = true;
    Rational w = parse_number(edge.weight, "weight of " + edge.from + " -> " + edge.to);
    if (w.is_negative() || w > Rational(1))
      throw ValidationError(ValidationCode::WeightOutOfRange,
                            "edge " + edge.from + " -> " + edge.to + " has weight " +
                                w.to_string());
    net.in_edges_[*to].push_back({*from, w});
    net.edges_.emplace_back(*from, *to, w);
  }
  for (auto& edges : net.in_edges_)
    std::sort(edges.begin(), edges.end(),
              [](const auto& a, const auto& b) { return a.from < b.from; });
  std::sort(net.edges_.begin(), net.edges_.end(), [](const auto& a, const auto& b) {
    return std::pair(std::get<0>(a), std::get<1>(a)) <
           std::pair(std::get<0>(b), std::get<1>(b));
  });

  // In-weight sums.
  for (int i = 0; i < n; ++i) {
    Rational sum;
    for (const auto& edge : net.in_edges_[i]) sum += edge.weight;
    if (sum > Rational(1))
      throw ValidationError(ValidationCode::InWeightSumExceedsOne,
                            "node " + net.node_names_[i] + " has in-weight sum " +
                                sum.to_string());
  }

  // Product sets.
  for (int i = 0; i < n; ++i) {
    const auto& node = description.nodes[i];
    if (node.products.empty())
      throw ValidationError(ValidationCode::EmptyProductSet, "node " + node.id);
    for (const auto& product : node.products) {
      auto t = net.product_index(product);
      if (!t)
        throw ValidationError(ValidationCode::UnknownProduct,
                              "node " + node.id + " lists '" + product + "'");
      if (std::find(net.product_sets_[i].begin(), net.product_sets_[i].end(), *t) !=
          net.product_sets_[i].end())
        throw ValidationError(ValidationCode::DuplicateProduct,
                              "node " + node.id + " lists '" + product + "' twice");
      net.product_sets_[i].push_back(*t);
    }
    std::sort(net.product_sets_[i].begin(), net.product_sets_[i].end());
  }

  // Thresholds: defined exactly on P(i), each in (0, 1].
  for (int i = 0; i < n; ++i) {
    const auto& node = description.nodes[i];
    for (const auto& [product, _] : node.thresholds) {
      auto t = net.product_index(product);
      if (!t || !net.owns(i, *t))
        throw ValidationError(ValidationCode::ExtraneousThreshold,
                              "node " + node.id + " sets a threshold for '" + product +
                                  "' outside its product set");
    }
    net.thresholds_[i].reserve(net.product_sets_[i].size());
    for (int t : net.product_sets_[i]) {
      auto it = node.thresholds.find(net.product_names_[t]);
      if (it == node.thresholds.end())
        throw ValidationError(ValidationCode::MissingThreshold,
                              "node " + node.id + ", product " + net.product_names_[t]);
      Rational theta = parse_number(it->second, "threshold of node " + node.id);
      if (!theta.is_positive() || theta > Rational(1))
        throw ValidationError(ValidationCode::ThresholdOutOfRange,
                              "node " + node.id + ", product " + net.product_names_[t] +
                                  ": " + theta.to_string() + " not in (0,1]");
      net.thresholds_[i].push_back(theta);
    }
  }

  net.c0_ = parse_number(description.c0, "c0");
  if (!net.c0_.is_positive())
    throw ValidationError(ValidationCode::NonPositiveC0, net.c0_.to_string());

  return net;
}

/// Rebuilds the raw description of a validated network (canonical edge
/// order, exact numeric strings). validate_network(describe(net)) is `net`.
inline NetworkDescription describe(const SocialNetwork& net) {
  NetworkDescription d;
  d.name = net.name();
  d.notes = net.notes();
  d.c0 = net.c0().to_string();
  d.products = net.product_names();
  for (int i = 0; i < net.node_count(); ++i) {
    NodeDescription node;
    node.id = net.node_name(i);
    for (int t : net.product_set(i)) {
      node.products.push_back(net.product_name(t));
      node.thresholds[net.product_name(t)] = net.threshold(i, t).to_string();
    }
    d.nodes.push_back(std::move(node));
  }
  for (const auto& [from, to, w] : net.edges())
    d.edges.push_back({net.node_name(from), net.node_name(to), w.to_string()});
  return d;
}

/// Checks that s assigns every node either t0 or a product it owns.
inline void require_valid_profile(const SocialNetwork& net, const JointStrategy& s) {
  if (static_cast<int>(s.size()) != net.node_count())
    throw PreconditionError("profile has " + std::to_string(s.size()) + " entries for " +
                            std::to_string(net.node_count()) + " nodes");
  for (int i = 0; i < net.node_count(); ++i)
    if (!net.legal(i, s[i]))
      throw PreconditionError("node " + net.node_name(i) + " cannot play " +
                              net.strategy_label(s[i]));
}

inline std::string profile_to_string(const SocialNetwork& net, const JointStrategy& s) {
  std::string out = "(";
  for (int i = 0; i < net.node_count(); ++i) {
    if (i) out += ", ";
    out += net.node_name(i) + "=" + net.strategy_label(s[i]);
  }
  out += ")";
  return out;
}

}  // namespace sng
