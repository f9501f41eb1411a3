#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sng/detail/scc.hpp"
#include "sng/errors.hpp"
#include "sng/game.hpp"
#include "sng/network.hpp"

namespace sng {

/// A single profitable move: `node` switches `from` -> `to` and strictly
/// gains `gain` against the rest of the profile it was taken in.
struct Deviation {
  int node;
  Strategy from;
  Strategy to;
  Rational gain;
  bool best_response;

  friend bool operator==(const Deviation& a, const Deviation& b) {
    return a.node == b.node && a.from == b.from && a.to == b.to && a.gain == b.gain &&
           a.best_response == b.best_response;
  }
};

enum class DeviationMode { AnyProfitable, BestResponseOnly };

/// All strict single-node improvements available at s, ordered by node and
/// then by target strategy. BestResponseOnly keeps only moves whose target
/// maximises the mover's payoff.
inline std::vector<Deviation> profitable_deviations(const SocialNetwork& net,
                                                    const JointStrategy& s,
                                                    DeviationMode mode) {
  require_valid_profile(net, s);
  std::vector<Deviation> result;
  for (int i = 0; i < net.node_count(); ++i) {
    auto options = net.strategy_options(i);
    std::vector<Rational> values(options.size());
    Rational best;
    for (std::size_t k = 0; k < options.size(); ++k) {
      values[k] = detail::payoff_unchecked(net, s, i, options[k]);
      if (k == 0 || values[k] > best) best = values[k];
    }
    Rational current = detail::payoff_unchecked(net, s, i, s[i]);
    for (std::size_t k = 0; k < options.size(); ++k) {
      if (options[k] == s[i] || values[k] <= current) continue;
      bool br = values[k] == best;
      if (mode == DeviationMode::BestResponseOnly && !br) continue;
      result.push_back({i, s[i], options[k], values[k] - current, br});
    }
  }
  return result;
}

/// A replayable run of the dynamics: applying `steps` to `start` yields
/// `end`, every step a strict improvement for its mover.
struct DeviationPath {
  JointStrategy start;
  std::vector<Deviation> steps;
  JointStrategy end;

  std::size_t length() const { return steps.size(); }
};

/// Re-validates a path step by step under exact arithmetic. Throws
/// PreconditionError on the first inconsistency.
inline void replay_path(const SocialNetwork& net, const DeviationPath& path) {
  require_valid_profile(net, path.start);
  JointStrategy s = path.start;
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const Deviation& d = path.steps[k];
    if (d.node < 0 || d.node >= net.node_count())
      throw PreconditionError("path step " + std::to_string(k) + ": bad node");
    if (s[d.node] != d.from)
      throw PreconditionError("path step " + std::to_string(k) + ": stale from-strategy");
    if (!net.legal(d.node, d.to))
      throw PreconditionError("path step " + std::to_string(k) + ": illegal target");
    Rational before = detail::payoff_unchecked(net, s, d.node, s[d.node]);
    Rational after = detail::payoff_unchecked(net, s, d.node, d.to);
    if (!(after > before))
      throw PreconditionError("path step " + std::to_string(k) + ": not a strict gain");
    if (after - before != d.gain)
      throw PreconditionError("path step " + std::to_string(k) + ": stored gain is wrong");
    s[d.node] = d.to;
  }
  if (s != path.end) throw PreconditionError("path end does not match the replay");
}

/// Exploration result for the deviation graph reachable from a start set.
///
/// On the finite profile space the quantifier semantics collapse to graph
/// facts: some improvement path from the starts is infinite iff a deviation
/// cycle is reachable, and every such path is infinite iff no terminal is
/// reachable.
struct ImprovementGraphView {
  std::vector<JointStrategy> starts;
  DeviationMode mode = DeviationMode::AnyProfitable;
  std::size_t reached = 0;
  std::vector<JointStrategy> terminals;  // lexicographic order
  bool has_cycle = false;
  bool all_paths_infinite = false;
  std::optional<DeviationPath> cycle_witness;  // closed, shortest, at the lex-least state
};

namespace detail {

struct LocalGraph {
  const SocialNetwork* net;
  ProfileCodec codec;
  std::vector<std::uint64_t> state_of;            // local id -> dense profile index
  std::unordered_map<std::uint64_t, int> id_of;   // dense profile index -> local id
  std::vector<std::vector<int>> succ;

  explicit LocalGraph(const SocialNetwork& n) : net(&n), codec(n) {}
};

/// BFS over deviation edges from the starts; local ids are allocated in
/// discovery order, successors kept in deviation order.
inline LocalGraph explore_graph(const SocialNetwork& net,
                                const std::vector<JointStrategy>& starts,
                                DeviationMode mode, std::uint64_t cap) {
  LocalGraph g(net);
  std::deque<int> frontier;
  auto intern = [&](const JointStrategy& s) {
    std::uint64_t key = g.codec.encode(s);
    auto [it, inserted] = g.id_of.emplace(key, static_cast<int>(g.state_of.size()));
    if (inserted) {
      g.state_of.push_back(key);
      g.succ.emplace_back();
      frontier.push_back(it->second);
      if (g.state_of.size() > cap)
        throw CapExceeded("exploration exceeded the state cap of " + std::to_string(cap));
    }
    return it->second;
  };
  for (const auto& s : starts) {
    require_valid_profile(net, s);
    intern(s);
  }
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop_front();
    JointStrategy s = g.codec.decode(g.state_of[v]);
    for (const Deviation& d : profitable_deviations(net, s, mode)) {
      JointStrategy next = s;
      next[d.node] = d.to;
      int id = intern(next);  // may grow g.succ; take the reference after
      g.succ[v].push_back(id);
    }
  }
  return g;
}

/// The unique deviation realising the edge between two adjacent states.
inline Deviation edge_deviation(const SocialNetwork& net, const JointStrategy& from,
                                const JointStrategy& to) {
  for (const Deviation& d : profitable_deviations(net, from, DeviationMode::AnyProfitable)) {
    JointStrategy next = from;
    next[d.node] = d.to;
    if (next == to) return d;
  }
  throw PreconditionError("no deviation connects the given states");
}

}  // namespace detail

/// Explores the reachable deviation graph and summarises it. The cycle
/// witness, when present, is a globally shortest reachable cycle, anchored at
/// the lexicographically least state achieving that length.
inline ImprovementGraphView explore(const SocialNetwork& net,
                                    const std::vector<JointStrategy>& starts,
                                    DeviationMode mode,
                                    std::uint64_t state_cap = kDefaultStateCap) {
  if (starts.empty()) throw PreconditionError("explore needs at least one start profile");
  detail::LocalGraph g = detail::explore_graph(net, starts, mode, state_cap);
  const int n = static_cast<int>(g.state_of.size());

  ImprovementGraphView view;
  view.mode = mode;
  view.reached = static_cast<std::size_t>(n);
  for (const auto& s : starts) view.starts.push_back(s);
  std::sort(view.starts.begin(), view.starts.end());
  view.starts.erase(std::unique(view.starts.begin(), view.starts.end()), view.starts.end());

  std::vector<std::uint64_t> terminal_keys;
  for (int v = 0; v < n; ++v)
    if (g.succ[v].empty()) terminal_keys.push_back(g.state_of[v]);
  std::sort(terminal_keys.begin(), terminal_keys.end());
  for (std::uint64_t key : terminal_keys) view.terminals.push_back(g.codec.decode(key));
  view.all_paths_infinite = view.terminals.empty();

  std::vector<int> comp;
  detail::tarjan_scc(g.succ, comp);
  std::vector<int> comp_size(n, 0);
  for (int v = 0; v < n; ++v) ++comp_size[comp[v]];
  std::vector<int> cycle_states;
  for (int v = 0; v < n; ++v)
    if (comp_size[comp[v]] >= 2) cycle_states.push_back(v);
  view.has_cycle = !cycle_states.empty();

  if (view.has_cycle) {
    // Shortest cycle through u, for each candidate u in profile order; BFS is
    // restricted to u's component, where any cycle through u must live.
    std::sort(cycle_states.begin(), cycle_states.end(),
              [&](int a, int b) { return g.state_of[a] < g.state_of[b]; });
    int best_state = -1;
    std::vector<int> best_cycle;
    std::vector<int> dist(n), parent(n);
    for (int u : cycle_states) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[u] = 0;
      std::deque<int> queue{u};
      int closing = -1;
      while (!queue.empty() && closing == -1) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.succ[v]) {
          if (w == u && v != u) {
            closing = v;
            break;
          }
          if (comp[w] != comp[u] || dist[w] != -1) continue;
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        }
      }
      if (closing == -1) continue;  // defensive; a nontrivial SCC always closes
      std::vector<int> cycle;
      for (int v = closing; v != u; v = parent[v]) cycle.push_back(v);
      cycle.push_back(u);
      std::reverse(cycle.begin(), cycle.end());
      if (best_state == -1 || cycle.size() < best_cycle.size()) {
        best_state = u;
        best_cycle = cycle;
      }
    }
    if (best_state != -1) {
      DeviationPath witness;
      witness.start = g.codec.decode(g.state_of[best_cycle.front()]);
      JointStrategy cursor = witness.start;
      for (std::size_t k = 0; k < best_cycle.size(); ++k) {
        int to = best_cycle[(k + 1) % best_cycle.size()];
        JointStrategy next = g.codec.decode(g.state_of[to]);
        witness.steps.push_back(detail::edge_deviation(net, cursor, next));
        cursor = next;
      }
      witness.end = cursor;  // == start: the witness is closed
      view.cycle_witness = std::move(witness);
    }
  }
  return view;
}

/// Shortest deviation path (BFS; ties broken by deviation order) from `from`
/// to a profile satisfying `goal`, or nullopt when none is reachable.
inline std::optional<DeviationPath> witness_path(
    const SocialNetwork& net, const JointStrategy& from,
    const std::function<bool(const JointStrategy&)>& goal, DeviationMode mode,
    std::uint64_t state_cap = kDefaultStateCap) {
  require_valid_profile(net, from);
  detail::ProfileCodec codec(net);
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, Deviation>> parent;
  std::uint64_t start_key = codec.encode(from);
  if (goal(from)) return DeviationPath{from, {}, from};
  std::deque<std::uint64_t> queue{start_key};
  std::unordered_map<std::uint64_t, bool> seen{{start_key, true}};
  while (!queue.empty()) {
    std::uint64_t key = queue.front();
    queue.pop_front();
    JointStrategy s = codec.decode(key);
    for (const Deviation& d : profitable_deviations(net, s, mode)) {
      JointStrategy next = s;
      next[d.node] = d.to;
      std::uint64_t next_key = codec.encode(next);
      if (seen.count(next_key)) continue;
      seen[next_key] = true;
      if (seen.size() > state_cap)
        throw CapExceeded("witness search exceeded the state cap");
      parent.emplace(next_key, std::make_pair(key, d));
      if (goal(next)) {
        DeviationPath path;
        path.end = next;
        std::uint64_t cursor = next_key;
        while (cursor != start_key) {
          auto& [prev, dev] = parent.at(cursor);
          path.steps.push_back(dev);
          cursor = prev;
        }
        std::reverse(path.steps.begin(), path.steps.end());
        path.start = from;
        return path;
      }
      queue.push_back(next_key);
    }
  }
  return std::nullopt;
}

/// Goal predicate: the profile has no outgoing deviation (so it is a Nash
/// equilibrium of the network it is explored in).
inline std::function<bool(const JointStrategy&)> terminal_goal(const SocialNetwork& net) {
  return [&net](const JointStrategy& s) {
    return profitable_deviations(net, s, DeviationMode::AnyProfitable).empty();
  };
}

/// Two-product phase procedure. Starting from s0 (an equilibrium of the game
/// before `added_product` was introduced), alternates maximal runs of
/// best-response deviations to the added product and to t0, in ascending node
/// order inside each run, until neither fires. With two products this is
/// guaranteed to stop, the final profile is an equilibrium of the expanded
/// game, and s0 is never weakly better than it.
inline DeviationPath phase_path(const SocialNetwork& expanded, const JointStrategy& s0,
                                const std::string& added_product) {
  if (expanded.product_count() != 2)
    throw PreconditionError("phase procedure requires exactly two products");
  auto added = expanded.product_index(added_product);
  if (!added) throw PreconditionError("unknown product '" + added_product + "'");
  require_valid_profile(expanded, s0);
  for (const Deviation& d : profitable_deviations(expanded, s0, DeviationMode::AnyProfitable))
    if (d.to != Strategy::product(*added))
      throw PreconditionError(
          "start profile is not an equilibrium of the pre-expansion game: node " +
          expanded.node_name(d.node) + " already wants " + expanded.strategy_label(d.to));

  auto first_br_to = [&](const JointStrategy& s, Strategy target) -> std::optional<Deviation> {
    for (const Deviation& d : profitable_deviations(expanded, s, DeviationMode::BestResponseOnly))
      if (d.to == target) return d;
    return std::nullopt;
  };

  DeviationPath path;
  path.start = s0;
  JointStrategy cursor = s0;
  detail::ProfileCodec codec(expanded);
  std::uint64_t states = codec.space_size(kDefaultStateCap);
  std::uint64_t budget = states ? 4 * states + 16 : kDefaultStateCap;
  while (true) {
    bool fired = false;
    for (Strategy target : {Strategy::product(*added), Strategy::abstain()}) {
      while (auto d = first_br_to(cursor, target)) {
        cursor[d->node] = d->to;
        path.steps.push_back(*d);
        fired = true;
        if (path.steps.size() > budget)
          throw std::logic_error("phase procedure failed to terminate");
      }
    }
    if (!fired) break;
  }
  path.end = cursor;
  if (!is_nash_equilibrium(expanded, path.end))
    throw std::logic_error("phase procedure stopped at a non-equilibrium");
  return path;
}

}  // namespace sng
