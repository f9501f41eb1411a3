#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sng/dynamics.hpp"
#include "sng/errors.hpp"
#include "sng/game.hpp"
#include "sng/generator.hpp"
#include "sng/network.hpp"

namespace sng {

enum class ModificationKind { Expansion, Contraction };

/// Adding or removing one product at one node. Expansions carry the
/// threshold the new (node, product) pair will use.
struct Modification {
  ModificationKind kind;
  int node;
  int product;
  std::optional<Rational> threshold;  // expansions only
};

/// Legal modifications in (node, product) order. Enumerated expansions take
/// the node's threshold when it is uniform across its current products and
/// the maximum of its thresholds otherwise.
inline std::vector<Modification> enumerate_modifications(const SocialNetwork& net,
                                                         ModificationKind kind) {
  std::vector<Modification> mods;
  for (int i = 0; i < net.node_count(); ++i) {
    if (kind == ModificationKind::Expansion) {
      Rational theta = net.threshold(i, net.product_set(i)[0]);
      for (int t : net.product_set(i))
        if (net.threshold(i, t) > theta) theta = net.threshold(i, t);
      for (int t = 0; t < net.product_count(); ++t)
        if (!net.owns(i, t)) mods.push_back({kind, i, t, theta});
    } else {
      if (net.product_set(i).size() < 2) continue;  // product sets stay non-empty
      for (int t : net.product_set(i)) mods.push_back({kind, i, t, std::nullopt});
    }
  }
  return mods;
}

/// Applies a modification, revalidating the result. An expansion without an
/// explicit threshold falls back to the node's uniform threshold.
inline SocialNetwork apply_modification(const SocialNetwork& net, const Modification& m) {
  if (m.node < 0 || m.node >= net.node_count())
    throw PreconditionError("modification names an unknown node");
  if (m.product < 0 || m.product >= net.product_count())
    throw PreconditionError("modification names an unknown product");
  NetworkDescription d = describe(net);
  NodeDescription& node = d.nodes[m.node];
  const std::string& product = net.product_name(m.product);
  if (m.kind == ModificationKind::Expansion) {
    if (net.owns(m.node, m.product))
      throw PreconditionError("node " + node.id + " already owns " + product);
    Rational theta;
    if (m.threshold) {
      theta = *m.threshold;
    } else {
      theta = net.threshold(m.node, net.product_set(m.node)[0]);
      for (int t : net.product_set(m.node))
        if (net.threshold(m.node, t) != theta)
          throw PreconditionError("node " + node.id +
                                  " has mixed thresholds; the expansion must supply one");
    }
    node.products.push_back(product);
    node.thresholds[product] = theta.to_string();
  } else {
    if (!net.owns(m.node, m.product))
      throw PreconditionError("node " + node.id + " does not own " + product);
    if (net.product_set(m.node).size() < 2)
      throw PreconditionError("removing " + product + " would empty node " + node.id +
                              "'s product set");
    std::erase(node.products, product);
    node.thresholds.erase(product);
  }
  return validate_network(d);
}

/// Post-modification start profiles for improvement paths that begin at s.
///
/// A node whose current product was just removed moves first and may pick any
/// remaining strategy, improving or not; every other modification leaves s a
/// legal profile of the modified game.
struct StartSet {
  std::vector<JointStrategy> profiles;
  std::optional<int> forced_node;  // set in the forced-first-move case
};

inline StartSet start_set(const SocialNetwork& modified, const JointStrategy& s,
                          const Modification& m) {
  StartSet out;
  if (m.kind == ModificationKind::Contraction && !s[m.node].is_abstain() &&
      s[m.node].product_index() == m.product) {
    out.forced_node = m.node;
    for (Strategy x : modified.strategy_options(m.node)) {
      JointStrategy start = s;
      start[m.node] = x;
      out.profiles.push_back(std::move(start));
    }
  } else {
    out.profiles.push_back(s);
  }
  return out;
}

enum class Notion { Vulnerable, Fragile, Inefficient, Unsafe };
enum class Quantifier { Exists, Forall, Total };
enum class Strength { Weak, Strict, NotApplicable };

/// One of the fourteen classification questions. Strength applies only to
/// vulnerable/inefficient; the Total quantifier only to fragile/unsafe.
struct ParadoxQuery {
  Notion notion;
  Quantifier quantifier;
  Strength strength;

  bool uses_expansions() const {
    return notion == Notion::Vulnerable || notion == Notion::Fragile;
  }
  bool compares_payoffs() const {
    return notion == Notion::Vulnerable || notion == Notion::Inefficient;
  }

  void check() const {
    if (compares_payoffs()) {
      if (strength == Strength::NotApplicable)
        throw PreconditionError("this notion needs a weak/strict strength");
      if (quantifier == Quantifier::Total)
        throw PreconditionError("the total quantifier applies to fragile/unsafe only");
    } else {
      if (strength != Strength::NotApplicable)
        throw PreconditionError("strength applies to vulnerable/inefficient only");
    }
  }

  std::string to_string() const {
    std::string name;
    switch (notion) {
      case Notion::Vulnerable: name = "vulnerable"; break;
      case Notion::Fragile: name = "fragile"; break;
      case Notion::Inefficient: name = "inefficient"; break;
      case Notion::Unsafe: name = "unsafe"; break;
    }
    switch (quantifier) {
      case Quantifier::Exists: name += "/exists"; break;
      case Quantifier::Forall: name += "/forall"; break;
      case Quantifier::Total: name += "/total"; break;
    }
    if (strength == Strength::Weak) name += "/weak";
    if (strength == Strength::Strict) name += "/strict";
    return name;
  }

  friend bool operator==(const ParadoxQuery& a, const ParadoxQuery& b) {
    return a.notion == b.notion && a.quantifier == b.quantifier && a.strength == b.strength;
  }
};

/// The fourteen queries in report order.
inline std::vector<ParadoxQuery> all_queries() {
  std::vector<ParadoxQuery> queries;
  for (Notion notion : {Notion::Vulnerable, Notion::Fragile, Notion::Inefficient,
                        Notion::Unsafe}) {
    if (notion == Notion::Vulnerable || notion == Notion::Inefficient) {
      for (Quantifier q : {Quantifier::Exists, Quantifier::Forall})
        for (Strength st : {Strength::Weak, Strength::Strict})
          queries.push_back({notion, q, st});
    } else {
      queries.push_back({notion, Quantifier::Exists, Strength::NotApplicable});
      queries.push_back({notion, Quantifier::Forall, Strength::NotApplicable});
      queries.push_back({notion, Quantifier::Total, Strength::NotApplicable});
    }
  }
  return queries;
}

inline ParadoxQuery parse_query(const std::string& notion, const std::string& quantifier,
                                const std::string& strength) {
  ParadoxQuery q{};
  if (notion == "vulnerable") q.notion = Notion::Vulnerable;
  else if (notion == "fragile") q.notion = Notion::Fragile;
  else if (notion == "inefficient") q.notion = Notion::Inefficient;
  else if (notion == "unsafe") q.notion = Notion::Unsafe;
  else throw PreconditionError("unknown notion '" + notion + "'");
  if (quantifier == "exists") q.quantifier = Quantifier::Exists;
  else if (quantifier == "forall") q.quantifier = Quantifier::Forall;
  else if (quantifier == "total") q.quantifier = Quantifier::Total;
  else throw PreconditionError("unknown quantifier '" + quantifier + "'");
  if (strength.empty()) q.strength = Strength::NotApplicable;
  else if (strength == "weak") q.strength = Strength::Weak;
  else if (strength == "strict") q.strength = Strength::Strict;
  else throw PreconditionError("unknown strength '" + strength + "'");
  q.check();
  return q;
}

struct TerminalRelationEntry {
  JointStrategy profile;
  ProfileRelation relation;  // oriented per the query's comparison
};

struct DigestEvidence {
  std::size_t reached = 0;
  std::vector<TerminalRelationEntry> terminals;  // empty for forall-fragile/unsafe
};

struct CycleEvidence {
  DeviationPath prefix;  // from the start profile to the cycle anchor
  DeviationPath cycle;   // closed
};

struct ExhaustionEvidence {
  std::uint64_t profiles_scanned = 0;
};

struct ParadoxWitness {
  JointStrategy initial_ne;
  Modification modification;
  std::optional<std::pair<int, Strategy>> forced_move;
  std::optional<DeviationPath> path;          // exists-style vulnerable/inefficient
  std::optional<DigestEvidence> digest;       // forall-style
  std::optional<CycleEvidence> cycle;         // exists-style fragile/unsafe
  std::optional<ExhaustionEvidence> exhaustion;  // total fragile/unsafe
};

/// Verdict plus replayable evidence. Negative verdicts record the exhaustive
/// search bound instead of a witness.
struct ParadoxCertificate {
  ParadoxQuery query;
  bool verdict = false;
  std::uint64_t pairs_examined = 0;
  std::optional<ParadoxWitness> witness;
};

struct ClassifyOptions {
  std::uint64_t state_cap = kDefaultStateCap;
  int threads = 1;
};

namespace detail {

inline ProfileRelation relation_of(const PayoffVector& a, const PayoffVector& b) {
  bool all_ge = true, all_gt = true, any_gt = false, all_eq = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) all_ge = all_gt = false;
    if (a[i] <= b[i]) all_gt = false;
    if (a[i] > b[i]) any_gt = true;
    if (a[i] != b[i]) all_eq = false;
  }
  if (all_eq) return ProfileRelation::Equal;
  if (all_gt) return ProfileRelation::StrictlyBetter;
  if (all_ge && any_gt) return ProfileRelation::WeaklyBetter;
  return ProfileRelation::Incomparable;
}

/// Everything the fourteen per-pair predicates need, from one exploration.
struct PairAnalysis {
  bool cycle_reachable = false;
  bool any_terminal = false;
  bool exists_weak_worse = false, exists_strict_worse = false;
  bool all_weak_worse = true, all_strict_worse = true;
  bool exists_weak_better = false, exists_strict_better = false;
  bool all_weak_better = true, all_strict_better = true;
};

inline PairAnalysis analyze_pair(const SocialNetwork& net, const JointStrategy& s,
                                 const Modification& m, const ClassifyOptions& opts) {
  SocialNetwork modified = apply_modification(net, m);
  StartSet starts = start_set(modified, s, m);
  ImprovementGraphView view =
      explore(modified, starts.profiles, DeviationMode::AnyProfitable, opts.state_cap);

  PairAnalysis out;
  out.cycle_reachable = view.has_cycle;
  out.any_terminal = !view.terminals.empty();
  PayoffVector ps = payoff_vector(net, s);
  for (const JointStrategy& terminal : view.terminals) {
    PayoffVector pt = payoff_vector(modified, terminal);
    ProfileRelation worse = relation_of(ps, pt);   // s versus the terminal
    ProfileRelation better = relation_of(pt, ps);  // the terminal versus s
    out.exists_weak_worse |= weakly_better(worse);
    out.exists_strict_worse |= strictly_better(worse);
    out.all_weak_worse &= weakly_better(worse);
    out.all_strict_worse &= strictly_better(worse);
    out.exists_weak_better |= weakly_better(better);
    out.exists_strict_better |= strictly_better(better);
    out.all_weak_better &= weakly_better(better);
    out.all_strict_better &= strictly_better(better);
  }
  return out;
}

inline bool pair_positive(const ParadoxQuery& q, const PairAnalysis& a) {
  if (q.notion == Notion::Fragile || q.notion == Notion::Unsafe) {
    if (q.quantifier == Quantifier::Exists) return a.cycle_reachable;
    return !a.any_terminal;  // forall: no finite path escapes
  }
  bool worse_side = q.notion == Notion::Vulnerable;
  if (q.quantifier == Quantifier::Exists) {
    if (q.strength == Strength::Strict)
      return worse_side ? a.exists_strict_worse : a.exists_strict_better;
    return worse_side ? a.exists_weak_worse : a.exists_weak_better;
  }
  // Forall: acyclic reachable set, so every maximal path ends in a terminal,
  // and every terminal satisfies the comparison. Terminals are non-empty
  // automatically when no cycle is reachable.
  if (a.cycle_reachable || !a.any_terminal) return false;
  if (q.strength == Strength::Strict)
    return worse_side ? a.all_strict_worse : a.all_strict_better;
  return worse_side ? a.all_weak_worse : a.all_weak_better;
}

/// Runs fn(index) for indices [0, count) over opts.threads workers. Results
/// must be written to per-index slots; the fold stays order-independent.
template <typename Fn>
void parallel_for(std::uint64_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    while (true) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = std::min<std::uint64_t>(threads, count);
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

struct TableScope {
  bool expansion_pairs = false;
  bool contraction_pairs = false;
  bool expansion_kills = false;
  bool contraction_kills = false;

  static TableScope everything() { return {true, true, true, true}; }
  static TableScope for_query(const ParadoxQuery& q) {
    TableScope scope;
    if (q.quantifier == Quantifier::Total) {
      (q.uses_expansions() ? scope.expansion_kills : scope.contraction_kills) = true;
    } else {
      (q.uses_expansions() ? scope.expansion_pairs : scope.contraction_pairs) = true;
    }
    return scope;
  }
};

struct ClassificationTable {
  std::vector<JointStrategy> nes;
  std::vector<Modification> expansions, contractions;
  std::vector<PairAnalysis> expansion_pairs, contraction_pairs;  // ne-major order
  std::vector<char> expansion_kills, contraction_kills;          // per modification
};

inline ClassificationTable classification_table(const SocialNetwork& net,
                                                const ClassifyOptions& opts,
                                                const TableScope& scope) {
  ClassificationTable table;
  table.nes = enumerate_nash_equilibria(net, opts.state_cap);
  table.expansions = enumerate_modifications(net, ModificationKind::Expansion);
  table.contractions = enumerate_modifications(net, ModificationKind::Contraction);

  auto guarded = [&](std::uint64_t count, auto&& fn) {
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    parallel_for(count, opts.threads, [&](std::uint64_t index) {
      if (failed.load()) return;
      try {
        fn(index);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    });
    if (error) std::rethrow_exception(error);
  };
  auto run_pairs = [&](const std::vector<Modification>& mods,
                       std::vector<PairAnalysis>& out) {
    out.resize(table.nes.size() * mods.size());
    guarded(out.size(), [&](std::uint64_t index) {
      const JointStrategy& s = table.nes[index / mods.size()];
      const Modification& m = mods[index % mods.size()];
      out[index] = analyze_pair(net, s, m, opts);
    });
  };
  auto run_kills = [&](const std::vector<Modification>& mods, std::vector<char>& out) {
    out.assign(mods.size(), 0);
    guarded(mods.size(), [&](std::uint64_t index) {
      SocialNetwork modified = apply_modification(net, mods[index]);
      out[index] = enumerate_nash_equilibria(modified, opts.state_cap).empty() ? 1 : 0;
    });
  };
  if (scope.expansion_pairs) run_pairs(table.expansions, table.expansion_pairs);
  if (scope.contraction_pairs) run_pairs(table.contractions, table.contraction_pairs);
  if (scope.expansion_kills) run_kills(table.expansions, table.expansion_kills);
  if (scope.contraction_kills) run_kills(table.contractions, table.contraction_kills);
  return table;
}

/// Builds the replayable witness for the winning (s, m) pair.
inline ParadoxWitness build_witness(const SocialNetwork& net, const ParadoxQuery& q,
                                    const JointStrategy& s, const Modification& m,
                                    const ClassifyOptions& opts) {
  ParadoxWitness w;
  w.initial_ne = s;
  w.modification = m;
  SocialNetwork modified = apply_modification(net, m);
  StartSet starts = start_set(modified, s, m);

  auto forced_move_for = [&](const JointStrategy& start) {
    if (starts.forced_node)
      w.forced_move = std::make_pair(*starts.forced_node, start[*starts.forced_node]);
  };

  if (q.notion == Notion::Vulnerable || q.notion == Notion::Inefficient) {
    PayoffVector ps = payoff_vector(net, s);
    auto qualifies = [&](const JointStrategy& candidate) {
      if (!profitable_deviations(modified, candidate, DeviationMode::AnyProfitable).empty())
        return false;
      PayoffVector pc = payoff_vector(modified, candidate);
      ProfileRelation rel = q.notion == Notion::Vulnerable ? relation_of(ps, pc)
                                                           : relation_of(pc, ps);
      return q.strength == Strength::Strict ? strictly_better(rel) : weakly_better(rel);
    };
    if (q.quantifier == Quantifier::Exists) {
      for (const JointStrategy& start : starts.profiles) {
        auto path = witness_path(modified, start, qualifies, DeviationMode::AnyProfitable,
                                 opts.state_cap);
        if (path) {
          forced_move_for(start);
          w.path = std::move(path);
          break;
        }
      }
    } else {
      ImprovementGraphView view =
          explore(modified, starts.profiles, DeviationMode::AnyProfitable, opts.state_cap);
      DigestEvidence digest;
      digest.reached = view.reached;
      for (const JointStrategy& terminal : view.terminals) {
        PayoffVector pt = payoff_vector(modified, terminal);
        ProfileRelation rel = q.notion == Notion::Vulnerable ? relation_of(ps, pt)
                                                             : relation_of(pt, ps);
        digest.terminals.push_back({terminal, rel});
      }
      w.digest = std::move(digest);
    }
    return w;
  }

  // Fragile / unsafe.
  if (q.quantifier == Quantifier::Exists) {
    ImprovementGraphView view =
        explore(modified, starts.profiles, DeviationMode::AnyProfitable, opts.state_cap);
    const DeviationPath& cycle = *view.cycle_witness;
    for (const JointStrategy& start : starts.profiles) {
      auto prefix = witness_path(
          modified, start,
          [&](const JointStrategy& candidate) { return candidate == cycle.start; },
          DeviationMode::AnyProfitable, opts.state_cap);
      if (prefix) {
        forced_move_for(start);
        w.cycle = CycleEvidence{std::move(*prefix), cycle};
        break;
      }
    }
  } else {
    ImprovementGraphView view =
        explore(modified, starts.profiles, DeviationMode::AnyProfitable, opts.state_cap);
    if (!starts.profiles.empty()) forced_move_for(starts.profiles.front());
    w.digest = DigestEvidence{view.reached, {}};
  }
  return w;
}

inline ParadoxCertificate certificate_from_table(const SocialNetwork& net,
                                                 const ParadoxQuery& query,
                                                 const ClassificationTable& table,
                                                 const ClassifyOptions& opts) {
  ParadoxCertificate cert;
  cert.query = query;

  const auto& mods = query.uses_expansions() ? table.expansions : table.contractions;
  if (query.quantifier == Quantifier::Total) {
    const auto& kills =
        query.uses_expansions() ? table.expansion_kills : table.contraction_kills;
    cert.pairs_examined = mods.size();
    if (table.nes.empty()) return cert;  // no equilibrium to destroy
    for (std::size_t k = 0; k < mods.size(); ++k) {
      if (!kills[k]) continue;
      cert.verdict = true;
      ParadoxWitness w;
      w.initial_ne = table.nes.front();
      w.modification = mods[k];
      SocialNetwork modified = apply_modification(net, mods[k]);
      ProfileCodec codec(modified);
      w.exhaustion = ExhaustionEvidence{codec.space_size(opts.state_cap)};
      cert.witness = std::move(w);
      break;
    }
    return cert;
  }

  const auto& pairs = query.uses_expansions() ? table.expansion_pairs : table.contraction_pairs;
  cert.pairs_examined = pairs.size();
  for (std::size_t index = 0; index < pairs.size(); ++index) {
    if (!pair_positive(query, pairs[index])) continue;
    cert.verdict = true;
    cert.witness = build_witness(net, query, table.nes[index / mods.size()],
                                 mods[index % mods.size()], opts);
    break;
  }
  return cert;
}

}  // namespace detail

/// Decides one of the fourteen queries, scanning every (equilibrium,
/// modification) pair of the relevant kind in lexicographic order. The
/// reported witness belongs to the first positive pair.
inline ParadoxCertificate classify(const SocialNetwork& net, const ParadoxQuery& query,
                                   const ClassifyOptions& opts = {}) {
  query.check();
  detail::ClassificationTable table =
      detail::classification_table(net, opts, detail::TableScope::for_query(query));
  return detail::certificate_from_table(net, query, table, opts);
}

struct ParadoxReport {
  std::vector<ParadoxCertificate> certificates;  // all_queries() order

  const ParadoxCertificate& operator[](const ParadoxQuery& q) const {
    for (const auto& cert : certificates)
      if (cert.query == q) return cert;
    throw PreconditionError("query missing from report");
  }
  bool verdict(const std::string& key) const {
    for (const auto& cert : certificates)
      if (cert.query.to_string() == key) return cert.verdict;
    throw PreconditionError("query missing from report: " + key);
  }
};

namespace detail {

inline void check_lattice(const ParadoxReport& report) {
  auto v = [&](const char* key) { return report.verdict(key); };
  struct Implication {
    const char* from;
    const char* to;
  };
  const Implication implications[] = {
      {"vulnerable/forall/strict", "vulnerable/exists/strict"},
      {"vulnerable/forall/strict", "vulnerable/forall/weak"},
      {"vulnerable/exists/strict", "vulnerable/exists/weak"},
      {"vulnerable/forall/weak", "vulnerable/exists/weak"},
      {"inefficient/forall/strict", "inefficient/exists/strict"},
      {"inefficient/forall/strict", "inefficient/forall/weak"},
      {"inefficient/exists/strict", "inefficient/exists/weak"},
      {"inefficient/forall/weak", "inefficient/exists/weak"},
      {"fragile/total", "fragile/forall"},
      {"fragile/forall", "fragile/exists"},
      {"unsafe/total", "unsafe/forall"},
      {"unsafe/forall", "unsafe/exists"},
  };
  for (const auto& imp : implications)
    if (v(imp.from) && !v(imp.to))
      throw std::logic_error(std::string("lattice violation: ") + imp.from +
                             " holds but " + imp.to + " does not");
}

}  // namespace detail

/// All fourteen verdicts from one shared pair scan, with the implication
/// lattice re-checked on the result (a violation throws: it would mean the
/// classifier itself is inconsistent).
inline ParadoxReport full_report(const SocialNetwork& net, const ClassifyOptions& opts = {}) {
  detail::ClassificationTable table =
      detail::classification_table(net, opts, detail::TableScope::everything());
  ParadoxReport report;
  for (const ParadoxQuery& query : all_queries())
    report.certificates.push_back(detail::certificate_from_table(net, query, table, opts));
  detail::check_lattice(report);
  return report;
}

/// Re-derives a certificate's claim from scratch; throws on any mismatch.
/// Soundness gate for everything the classifier emits.
inline void verify_certificate(const SocialNetwork& net, const ParadoxCertificate& cert) {
  cert.query.check();
  if (!cert.verdict) {
    if (cert.witness) throw PreconditionError("negative certificate carries a witness");
    return;
  }
  if (!cert.witness) throw PreconditionError("positive certificate lacks a witness");
  const ParadoxWitness& w = *cert.witness;
  const ParadoxQuery& q = cert.query;

  if (!is_nash_equilibrium(net, w.initial_ne))
    throw PreconditionError("witness start is not an equilibrium of the base game");
  bool expansion = w.modification.kind == ModificationKind::Expansion;
  if (expansion != q.uses_expansions())
    throw PreconditionError("witness modification kind does not match the notion");
  SocialNetwork modified = apply_modification(net, w.modification);

  if (q.quantifier == Quantifier::Total) {
    if (!w.exhaustion) throw PreconditionError("total witness lacks the exhaustion record");
    if (!enumerate_nash_equilibria(modified).empty())
      throw PreconditionError("modified game still has an equilibrium");
    return;
  }

  StartSet starts = start_set(modified, w.initial_ne, w.modification);
  auto expected_start = [&]() -> JointStrategy {
    if (!starts.forced_node) return w.initial_ne;
    if (!w.forced_move) throw PreconditionError("forced move missing from witness");
    JointStrategy s = w.initial_ne;
    if (w.forced_move->first != *starts.forced_node)
      throw PreconditionError("forced move names the wrong node");
    if (!modified.legal(w.forced_move->first, w.forced_move->second))
      throw PreconditionError("forced move picks an illegal strategy");
    s[w.forced_move->first] = w.forced_move->second;
    return s;
  };

  PayoffVector ps = payoff_vector(net, w.initial_ne);
  auto relation_ok = [&](const JointStrategy& terminal) {
    PayoffVector pt = payoff_vector(modified, terminal);
    ProfileRelation rel = q.notion == Notion::Vulnerable ? detail::relation_of(ps, pt)
                                                         : detail::relation_of(pt, ps);
    return q.strength == Strength::Strict ? strictly_better(rel) : weakly_better(rel);
  };

  if (q.notion == Notion::Vulnerable || q.notion == Notion::Inefficient) {
    if (q.quantifier == Quantifier::Exists) {
      if (!w.path) throw PreconditionError("exists witness lacks a path");
      if (w.path->start != expected_start())
        throw PreconditionError("witness path starts at the wrong profile");
      replay_path(modified, *w.path);
      if (!profitable_deviations(modified, w.path->end, DeviationMode::AnyProfitable).empty())
        throw PreconditionError("witness path does not end at a terminal");
      if (!relation_ok(w.path->end))
        throw PreconditionError("terminal does not satisfy the payoff comparison");
    } else {
      if (!w.digest) throw PreconditionError("forall witness lacks a digest");
      ImprovementGraphView view =
          explore(modified, starts.profiles, DeviationMode::AnyProfitable);
      if (view.has_cycle) throw PreconditionError("forall witness but a cycle is reachable");
      if (view.terminals.empty()) throw PreconditionError("forall witness but no terminal");
      if (view.terminals.size() != w.digest->terminals.size())
        throw PreconditionError("digest terminal count mismatch");
      for (const JointStrategy& terminal : view.terminals)
        if (!relation_ok(terminal))
          throw PreconditionError("a reachable terminal violates the comparison");
    }
    return;
  }

  // Fragile / unsafe.
  if (q.quantifier == Quantifier::Exists) {
    if (!w.cycle) throw PreconditionError("exists witness lacks a cycle");
    if (w.cycle->prefix.start != expected_start())
      throw PreconditionError("cycle prefix starts at the wrong profile");
    replay_path(modified, w.cycle->prefix);
    if (w.cycle->cycle.start != w.cycle->prefix.end)
      throw PreconditionError("cycle does not start where the prefix ends");
    if (w.cycle->cycle.steps.empty() || w.cycle->cycle.end != w.cycle->cycle.start)
      throw PreconditionError("cycle evidence is not closed");
    replay_path(modified, w.cycle->cycle);
  } else {
    if (!w.digest) throw PreconditionError("forall witness lacks a digest");
    ImprovementGraphView view =
        explore(modified, starts.profiles, DeviationMode::AnyProfitable);
    if (!view.terminals.empty())
      throw PreconditionError("forall fragility witness but a terminal is reachable");
  }
}

/// Seeded hunt for a forall-strict-vulnerable network (none is known).
struct SearchConfig {
  std::uint64_t seed_begin = 1;
  std::uint64_t seed_end = 0;  // inclusive; empty range when end < begin
  RandomNetworkParams params;
};

struct SearchOutcome {
  std::uint64_t instances_examined = 0;
  std::uint64_t seed_begin = 0, seed_end = 0;
  std::optional<std::uint64_t> found_seed;
  std::optional<ParadoxCertificate> certificate;
  std::optional<NetworkDescription> network;
};

inline SearchOutcome search_forall_s_vulnerable(const SearchConfig& config,
                                                const ClassifyOptions& opts = {}) {
  if (config.params.products < 3)
    throw PreconditionError(
        "the search needs at least three products: with two, forall-vulnerable networks "
        "do not exist");
  SearchOutcome outcome;
  outcome.seed_begin = config.seed_begin;
  outcome.seed_end = config.seed_end;
  ParadoxQuery query{Notion::Vulnerable, Quantifier::Forall, Strength::Strict};
  for (std::uint64_t seed = config.seed_begin;
       config.seed_end >= config.seed_begin && seed <= config.seed_end; ++seed) {
    NetworkDescription d = random_network(seed, config.params);
    SocialNetwork net = validate_network(d);
    ParadoxCertificate cert = classify(net, query, opts);
    ++outcome.instances_examined;
    if (cert.verdict) {
      outcome.found_seed = seed;
      outcome.certificate = std::move(cert);
      outcome.network = std::move(d);
      break;
    }
    if (seed == config.seed_end) break;  // avoid wrap on max seed
  }
  return outcome;
}

}  // namespace sng
