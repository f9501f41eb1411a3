#pragma once

#include <string>

#include "sng/document.hpp"
#include "sng/dynamics.hpp"
#include "sng/paradox.hpp"

namespace sng {

inline nlohmann::json profile_json(const SocialNetwork& net, const JointStrategy& s) {
  nlohmann::json j = nlohmann::json::object();
  for (int i = 0; i < net.node_count(); ++i)
    j[net.node_name(i)] = net.strategy_label(s[i]);
  return j;
}

inline nlohmann::json steps_json(const SocialNetwork& net,
                                 const std::vector<Deviation>& steps) {
  nlohmann::json j = nlohmann::json::array();
  for (const Deviation& d : steps) {
    nlohmann::json step;
    step["node"] = net.node_name(d.node);
    step["from"] = net.strategy_label(d.from);
    step["to"] = net.strategy_label(d.to);
    step["gain"] = d.gain.to_string();
    step["best_response"] = d.best_response;
    j.push_back(std::move(step));
  }
  return j;
}

inline nlohmann::json path_json(const SocialNetwork& net, const DeviationPath& path) {
  nlohmann::json j;
  j["start"] = profile_json(net, path.start);
  j["steps"] = steps_json(net, path.steps);
  j["end"] = profile_json(net, path.end);
  return j;
}

inline nlohmann::json certificate_json(const SocialNetwork& net,
                                       const ParadoxCertificate& cert) {
  nlohmann::json j;
  nlohmann::json query;
  switch (cert.query.notion) {
    case Notion::Vulnerable: query["notion"] = "vulnerable"; break;
    case Notion::Fragile: query["notion"] = "fragile"; break;
    case Notion::Inefficient: query["notion"] = "inefficient"; break;
    case Notion::Unsafe: query["notion"] = "unsafe"; break;
  }
  switch (cert.query.quantifier) {
    case Quantifier::Exists: query["quantifier"] = "exists"; break;
    case Quantifier::Forall: query["quantifier"] = "forall"; break;
    case Quantifier::Total: query["quantifier"] = "total"; break;
  }
  if (cert.query.strength == Strength::Weak) query["strength"] = "weak";
  if (cert.query.strength == Strength::Strict) query["strength"] = "strict";
  j["query"] = std::move(query);
  j["verdict"] = cert.verdict;
  j["pairs_examined"] = cert.pairs_examined;
  if (!cert.witness) return j;

  const ParadoxWitness& w = *cert.witness;
  nlohmann::json witness;
  witness["initial_ne"] = profile_json(net, w.initial_ne);
  nlohmann::json mod;
  mod["kind"] = w.modification.kind == ModificationKind::Expansion ? "expansion"
                                                                   : "contraction";
  mod["node"] = net.node_name(w.modification.node);
  mod["product"] = net.product_name(w.modification.product);
  if (w.modification.threshold) mod["threshold"] = w.modification.threshold->to_string();
  witness["modification"] = std::move(mod);
  if (w.forced_move) {
    nlohmann::json forced;
    forced["node"] = net.node_name(w.forced_move->first);
    forced["strategy"] = w.forced_move->second.is_abstain()
                             ? kAbstainToken
                             : net.product_name(w.forced_move->second.product_index());
    witness["forced_move"] = std::move(forced);
  }
  nlohmann::json evidence;
  if (w.path) {
    evidence["type"] = "path";
    evidence["path"] = path_json(net, *w.path);
  } else if (w.cycle) {
    evidence["type"] = "cycle";
    evidence["prefix"] = path_json(net, w.cycle->prefix);
    evidence["cycle"] = path_json(net, w.cycle->cycle);
  } else if (w.digest) {
    evidence["type"] = "digest";
    evidence["reached"] = w.digest->reached;
    nlohmann::json terminals = nlohmann::json::array();
    for (const auto& [profile, relation] : w.digest->terminals) {
      nlohmann::json t;
      t["profile"] = profile_json(net, profile);
      t["relation"] = to_string(relation);
      terminals.push_back(std::move(t));
    }
    evidence["terminals"] = std::move(terminals);
  } else if (w.exhaustion) {
    evidence["type"] = "no_equilibria";
    evidence["profiles_scanned"] = w.exhaustion->profiles_scanned;
  }
  witness["evidence"] = std::move(evidence);
  j["witness"] = std::move(witness);
  return j;
}

inline nlohmann::json report_json(const SocialNetwork& net, const ParadoxReport& report) {
  nlohmann::json j;
  if (!net.name().empty()) j["network"] = net.name();
  j["nodes"] = net.node_count();
  nlohmann::json queries = nlohmann::json::array();
  for (const ParadoxCertificate& cert : report.certificates)
    queries.push_back(certificate_json(net, cert));
  j["queries"] = std::move(queries);
  j["lattice_ok"] = true;  // full_report throws otherwise
  return j;
}

inline nlohmann::json view_json(const SocialNetwork& net, const ImprovementGraphView& view) {
  nlohmann::json j;
  j["mode"] = view.mode == DeviationMode::AnyProfitable ? "any" : "br";
  j["reached"] = view.reached;
  j["has_cycle"] = view.has_cycle;
  j["all_paths_infinite"] = view.all_paths_infinite;
  nlohmann::json starts = nlohmann::json::array();
  for (const auto& s : view.starts) starts.push_back(profile_json(net, s));
  j["starts"] = std::move(starts);
  nlohmann::json terminals = nlohmann::json::array();
  for (const auto& s : view.terminals) terminals.push_back(profile_json(net, s));
  j["terminals"] = std::move(terminals);
  if (view.cycle_witness) j["cycle"] = path_json(net, *view.cycle_witness);
  return j;
}

}  // namespace sng
