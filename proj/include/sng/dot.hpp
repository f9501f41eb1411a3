#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>

#include "sng/dynamics.hpp"
#include "sng/network.hpp"

namespace sng {

/// Deterministic Graphviz rendering of a network: nodes carry their product
/// sets, edges their exact weights.
inline std::string export_dot(const SocialNetwork& net) {
  std::ostringstream out;
  out << "digraph network {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  for (int i = 0; i < net.node_count(); ++i) {
    out << "  \"" << net.node_name(i) << "\" [label=\"" << net.node_name(i) << "\\n{";
    const auto& set = net.product_set(i);
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (k) out << ",";
      out << net.product_name(set[k]);
    }
    out << "}\"";
    if (net.is_source(i)) out << " shape=box";
    out << "];\n";
  }
  for (const auto& [from, to, weight] : net.edges())
    out << "  \"" << net.node_name(from) << "\" -> \"" << net.node_name(to)
        << "\" [label=\"" << weight.to_string() << "\"];\n";
  out << "}\n";
  return out.str();
}

/// Renders the deviation graph reachable from the view's starts: profiles as
/// nodes, deviations as labelled edges, terminals double-circled, the cycle
/// witness highlighted.
inline std::string export_dot(const SocialNetwork& net, const ImprovementGraphView& view) {
  detail::ProfileCodec codec(net);
  detail::LocalGraph graph = detail::explore_graph(net, view.starts, view.mode,
                                                   kDefaultStateCap);
  // Stable names: sort reachable states lexicographically.
  std::vector<std::uint64_t> order = graph.state_of;
  std::sort(order.begin(), order.end());
  std::map<std::uint64_t, int> rank;
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k);

  std::set<std::pair<std::uint64_t, std::uint64_t>> cycle_edges;
  if (view.cycle_witness) {
    JointStrategy cursor = view.cycle_witness->start;
    for (const Deviation& d : view.cycle_witness->steps) {
      JointStrategy next = cursor;
      next[d.node] = d.to;
      cycle_edges.emplace(codec.encode(cursor), codec.encode(next));
      cursor = std::move(next);
    }
  }
  std::set<std::uint64_t> start_keys;
  for (const auto& s : view.starts) start_keys.insert(codec.encode(s));

  auto label = [&](std::uint64_t key) {
    JointStrategy s = codec.decode(key);
    std::string text = "(";
    for (int i = 0; i < net.node_count(); ++i) {
      if (i) text += ",";
      text += net.strategy_label(s[i]);
    }
    return text + ")";
  };

  std::ostringstream out;
  out << "digraph improvement {\n  rankdir=LR;\n  node [shape=circle fontsize=10];\n";
  for (std::uint64_t key : order) {
    int id = graph.id_of.at(key);
    out << "  s" << rank[key] << " [label=\"" << label(key) << "\"";
    if (graph.succ[id].empty()) out << " shape=doublecircle";
    if (start_keys.count(key)) out << " penwidth=2";
    out << "];\n";
  }
  for (std::uint64_t key : order) {
    int id = graph.id_of.at(key);
    JointStrategy s = codec.decode(key);
    for (const Deviation& d : profitable_deviations(net, s, view.mode)) {
      JointStrategy next = s;
      next[d.node] = d.to;
      std::uint64_t next_key = codec.encode(next);
      out << "  s" << rank[key] << " -> s" << rank[next_key] << " [label=\""
          << net.node_name(d.node) << ":" << net.strategy_label(d.to) << "\"";
      if (cycle_edges.count({key, next_key})) out << " color=red penwidth=2";
      out << "];\n";
    }
    (void)id;
  }
  out << "}\n";
  return out.str();
}

}  // namespace sng
