#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sng/detail/scc.hpp"
#include "sng/errors.hpp"
#include "sng/game.hpp"
#include "sng/network.hpp"

namespace sng {

/// Nodes with an empty in-neighbourhood.
inline std::vector<int> source_nodes(const SocialNetwork& net) {
  std::vector<int> sources;
  for (int i = 0; i < net.node_count(); ++i)
    if (net.is_source(i)) sources.push_back(i);
  return sources;
}

namespace detail {

inline bool strongly_connected_subset(const SocialNetwork& net,
                                      const std::vector<int>& nodes) {
  if (nodes.empty()) return false;
  if (nodes.size() == 1) return true;
  std::vector<int> local(net.node_count(), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = static_cast<int>(k);
  // Forward reachability uses in-edges backwards, so build both directions.
  std::vector<std::vector<int>> fwd(nodes.size()), bwd(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k)
    for (const auto& edge : net.in_edges(nodes[k]))
      if (local[edge.from] != -1) {
        fwd[local[edge.from]].push_back(static_cast<int>(k));
        bwd[k].push_back(local[edge.from]);
      }
  auto reaches_all = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(nodes.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
    }
    return count == nodes.size();
  };
  return reaches_all(fwd) && reaches_all(bwd);
}

}  // namespace detail

/// C is self-sustaining for t when the induced subgraph is strongly
/// connected, every member owns t, and each member's in-C weight covers its
/// threshold: putting t everywhere on C gives everyone a non-negative payoff.
inline bool is_self_sustaining(const SocialNetwork& net, const std::vector<int>& nodes,
                               int product) {
  if (nodes.empty()) return false;
  for (int i : nodes)
    if (!net.owns(i, product)) return false;
  if (!detail::strongly_connected_subset(net, nodes)) return false;
  for (int i : nodes) {
    Rational support;
    for (const auto& edge : net.in_edges(i))
      if (std::find(nodes.begin(), nodes.end(), edge.from) != nodes.end())
        support += edge.weight;
    if (support < net.threshold(i, product)) return false;
  }
  return true;
}

struct SustainingSCS {
  int product;
  std::vector<int> nodes;  // sorted
  bool minimal;
};

inline constexpr int kDefaultSubsetCap = 20;

/// All inclusion-minimal self-sustaining SCSs for `product` (the family
/// C_t). Exact subset enumeration over the t-owning nodes, sizes ascending,
/// lexicographic within a size; a hard cap guards the exponential blowup.
inline std::vector<SustainingSCS> minimal_sustaining_collection(
    const SocialNetwork& net, int product, int node_cap = kDefaultSubsetCap) {
  std::vector<int> candidates;
  for (int i = 0; i < net.node_count(); ++i)
    if (net.owns(i, product)) candidates.push_back(i);
  if (static_cast<int>(candidates.size()) > node_cap)
    throw CapExceeded("minimal-SCS enumeration over " +
                      std::to_string(candidates.size()) + " nodes exceeds the cap of " +
                      std::to_string(node_cap));

  std::vector<SustainingSCS> found;
  const int m = static_cast<int>(candidates.size());
  std::vector<int> pick;
  auto is_superset_of_found = [&](const std::vector<int>& nodes) {
    for (const auto& scs : found)
      if (std::includes(nodes.begin(), nodes.end(), scs.nodes.begin(), scs.nodes.end()))
        return true;
    return false;
  };
  for (int size = 1; size <= m; ++size) {
    // Lexicographic combinations of `size` candidates.
    pick.assign(size, 0);
    for (int k = 0; k < size; ++k) pick[k] = k;
    while (true) {
      std::vector<int> nodes(size);
      for (int k = 0; k < size; ++k) nodes[k] = candidates[pick[k]];
      // Any self-sustaining strict subset was found at a smaller size.
      if (!is_superset_of_found(nodes) && is_self_sustaining(net, nodes, product))
        found.push_back({product, nodes, true});
      int pos = size - 1;
      while (pos >= 0 && pick[pos] == m - size + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (int k = pos + 1; k < size; ++k) pick[k] = pick[k - 1] + 1;
    }
  }
  return found;
}

/// X_t = intersection of C_t's members (when C_t is non-empty), and
/// Y = intersection of the non-empty X_t's.
struct SustainingIntersections {
  std::vector<std::optional<std::vector<int>>> x;  // per product; nullopt iff C_t empty
  std::vector<int> y;
  bool y_defined = false;  // some X_t is non-empty
};

inline SustainingIntersections sustaining_intersections(const SocialNetwork& net,
                                                        int node_cap = kDefaultSubsetCap) {
  SustainingIntersections out;
  out.x.resize(net.product_count());
  bool y_started = false;
  for (int t = 0; t < net.product_count(); ++t) {
    auto family = minimal_sustaining_collection(net, t, node_cap);
    if (family.empty()) continue;
    std::vector<int> inter = family.front().nodes;
    for (const auto& scs : family) {
      std::vector<int> next;
      std::set_intersection(inter.begin(), inter.end(), scs.nodes.begin(), scs.nodes.end(),
                            std::back_inserter(next));
      inter = std::move(next);
    }
    out.x[t] = inter;
    if (inter.empty()) continue;
    out.y_defined = true;
    if (!y_started) {
      out.y = inter;
      y_started = true;
    } else {
      std::vector<int> next;
      std::set_intersection(out.y.begin(), out.y.end(), inter.begin(), inter.end(),
                            std::back_inserter(next));
      out.y = std::move(next);
    }
  }
  if (!out.y_defined) out.y.clear();
  return out;
}

enum class Theorem2Condition { AllEmpty, CommonCore, None };

inline const char* to_string(Theorem2Condition c) {
  switch (c) {
    case Theorem2Condition::AllEmpty: return "AllEmpty";
    case Theorem2Condition::CommonCore: return "CommonCore";
    case Theorem2Condition::None: return "None";
  }
  return "Unknown";
}

/// Source-free sufficient conditions for immunity to weak vulnerability.
///
/// AllEmpty: no product has any self-sustaining SCS, so all-abstain is the
/// only equilibrium and no expansion wakes it. CommonCore: every product
/// that has minimal self-sustaining SCSs has them all sharing a node, and
/// one node is shared across all such products; equilibria are then single
/// product and an expansion can only be joined, never regretted.
///
/// CommonCore deliberately requires X_t != {} for every product with a
/// non-empty family; dropping that (intersecting only the non-empty X_t)
/// admits networks with multiple-product equilibria, where the argument no
/// longer applies.
struct Theorem2Certificate {
  bool applicable = false;  // no source nodes
  Theorem2Condition condition = Theorem2Condition::None;
  std::vector<int> y_set;  // the common core when condition == CommonCore
  std::vector<std::size_t> family_sizes;          // |C_t| per product
  std::vector<std::optional<std::vector<int>>> x;  // X_t per product
};

inline Theorem2Certificate theorem2_certificate(const SocialNetwork& net,
                                                int node_cap = kDefaultSubsetCap) {
  Theorem2Certificate cert;
  cert.applicable = source_nodes(net).empty();
  cert.family_sizes.resize(net.product_count(), 0);
  cert.x.resize(net.product_count());
  bool all_empty = true;
  bool core_ok = true;
  std::vector<int> core;
  bool core_started = false;
  for (int t = 0; t < net.product_count(); ++t) {
    auto family = minimal_sustaining_collection(net, t, node_cap);
    cert.family_sizes[t] = family.size();
    if (family.empty()) continue;
    all_empty = false;
    std::vector<int> inter = family.front().nodes;
    for (const auto& scs : family) {
      std::vector<int> next;
      std::set_intersection(inter.begin(), inter.end(), scs.nodes.begin(), scs.nodes.end(),
                            std::back_inserter(next));
      inter = std::move(next);
    }
    cert.x[t] = inter;
    if (inter.empty()) {
      core_ok = false;
      continue;
    }
    if (!core_started) {
      core = inter;
      core_started = true;
    } else {
      std::vector<int> next;
      std::set_intersection(core.begin(), core.end(), inter.begin(), inter.end(),
                            std::back_inserter(next));
      core = std::move(next);
    }
  }
  if (!cert.applicable) return cert;
  if (all_empty) {
    cert.condition = Theorem2Condition::AllEmpty;
  } else if (core_ok && core_started && !core.empty()) {
    cert.condition = Theorem2Condition::CommonCore;
    cert.y_set = core;
  }
  return cert;
}

/// Lemma-1 witness: a minimal self-sustaining SCS for t inside the adopter
/// set of the given equilibrium, grown from node i by closing under
/// same-product supporters and descending to a source component.
inline SustainingSCS ne_structure_witness(const SocialNetwork& net, const JointStrategy& s,
                                          int product, int node_i) {
  if (!source_nodes(net).empty())
    throw PreconditionError("the structural witness needs a source-free network");
  if (!is_nash_equilibrium(net, s))
    throw PreconditionError("the profile is not an equilibrium");
  if (node_i < 0 || node_i >= net.node_count())
    throw PreconditionError("unknown start node");
  if (s[node_i].is_abstain() || s[node_i].product_index() != product)
    throw PreconditionError("the start node does not play the requested product");

  // Pred closure: all chains of t-adopting supporters behind node_i.
  std::vector<bool> in_pred(net.node_count(), false);
  std::vector<int> stack{node_i};
  in_pred[node_i] = true;
  std::vector<int> pred;
  while (!stack.empty()) {
    int j = stack.back();
    stack.pop_back();
    pred.push_back(j);
    for (const auto& edge : net.in_edges(j)) {
      if (in_pred[edge.from] || s[edge.from].is_abstain() ||
          s[edge.from].product_index() != product)
        continue;
      in_pred[edge.from] = true;
      stack.push_back(edge.from);
    }
  }
  std::sort(pred.begin(), pred.end());

  // Components of the subgraph induced by Pred; pick one with no incoming
  // edges from other components (deterministically: least smallest member).
  std::vector<int> local(net.node_count(), -1);
  for (std::size_t k = 0; k < pred.size(); ++k) local[pred[k]] = static_cast<int>(k);
  std::vector<std::vector<int>> adj(pred.size());
  for (std::size_t k = 0; k < pred.size(); ++k)
    for (const auto& edge : net.in_edges(pred[k]))
      if (local[edge.from] != -1) adj[local[edge.from]].push_back(static_cast<int>(k));
  std::vector<int> comp;
  int comp_count = detail::tarjan_scc(adj, comp);
  std::vector<bool> has_incoming(comp_count, false);
  for (std::size_t v = 0; v < pred.size(); ++v)
    for (int w : adj[v])
      if (comp[v] != comp[w]) has_incoming[comp[w]] = true;
  // pred is sorted, so the first node in a source component is the least.
  int chosen_comp = -1;
  for (std::size_t k = 0; k < pred.size(); ++k)
    if (!has_incoming[comp[k]]) {
      chosen_comp = comp[k];
      break;
    }
  std::vector<int> component;
  for (std::size_t k = 0; k < pred.size(); ++k)
    if (comp[k] == chosen_comp) component.push_back(pred[k]);

  // Minimise within the component: the first self-sustaining subset in
  // (size, lex) order is inclusion-minimal.
  std::vector<SustainingSCS> family;
  const int m = static_cast<int>(component.size());
  for (int size = 1; size <= m && family.empty(); ++size) {
    std::vector<int> pick(size);
    for (int k = 0; k < size; ++k) pick[k] = k;
    while (true) {
      std::vector<int> nodes(size);
      for (int k = 0; k < size; ++k) nodes[k] = component[pick[k]];
      if (is_self_sustaining(net, nodes, product)) {
        family.push_back({product, nodes, true});
        break;
      }
      int pos = size - 1;
      while (pos >= 0 && pick[pos] == m - size + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (int k = pos + 1; k < size; ++k) pick[k] = pick[k - 1] + 1;
    }
  }
  if (family.empty())
    throw std::logic_error("no self-sustaining subset found; the lemma premise failed");
  SustainingSCS witness = family.front();

  // Re-verify the contract before returning.
  if (!is_self_sustaining(net, witness.nodes, product))
    throw std::logic_error("witness is not self-sustaining");
  for (int j : witness.nodes)
    if (s[j].is_abstain() || s[j].product_index() != product)
      throw std::logic_error("witness leaves the adopter set");
  return witness;
}

/// Simple-cycle analysis: when the graph is one directed cycle through all
/// nodes, equilibria are exactly the uniform profiles (all-abstain, plus
/// t-bar for each commonly owned t whose cycle weights cover the
/// thresholds). The structural list is cross-checked against brute force.
struct SimpleCycleAnalysis {
  bool is_simple_cycle = false;
  std::vector<JointStrategy> equilibria;
};

inline SimpleCycleAnalysis simple_cycle_equilibria(
    const SocialNetwork& net, std::uint64_t crosscheck_cap = kDefaultStateCap) {
  SimpleCycleAnalysis out;
  const int n = net.node_count();
  if (n < 2) return out;
  std::vector<int> out_degree(n, 0);
  for (int i = 0; i < n; ++i) {
    if (net.in_edges(i).size() != 1) return out;
    ++out_degree[net.in_edges(i)[0].from];
  }
  for (int i = 0; i < n; ++i)
    if (out_degree[i] != 1) return out;
  // One in, one out everywhere: the graph is a disjoint union of cycles;
  // check it is a single one.
  std::vector<bool> seen(n, false);
  int cursor = 0, visited = 0;
  while (!seen[cursor]) {
    seen[cursor] = true;
    ++visited;
    cursor = net.in_edges(cursor)[0].from;
  }
  if (visited != n) return out;
  out.is_simple_cycle = true;

  out.equilibria.push_back(all_abstain(net));
  for (int t = 0; t < net.product_count(); ++t) {
    bool supported = true;
    for (int i = 0; i < n && supported; ++i) {
      if (!net.owns(i, t)) supported = false;
      else if (net.in_edges(i)[0].weight < net.threshold(i, t)) supported = false;
    }
    if (supported) out.equilibria.push_back(uniform_profile(net, t));
  }
  std::sort(out.equilibria.begin(), out.equilibria.end());

  detail::ProfileCodec codec(net);
  if (codec.space_size(crosscheck_cap) != 0) {
    auto reference = enumerate_nash_equilibria(net, crosscheck_cap);
    if (reference != out.equilibria)
      throw std::logic_error("structural cycle equilibria disagree with brute force");
  }
  return out;
}

}  // namespace sng
