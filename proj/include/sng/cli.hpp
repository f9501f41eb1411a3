#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"  // vendored single header
#endif

#include "sng/document.hpp"
#include "sng/dot.hpp"
#include "sng/dynamics.hpp"
#include "sng/fixtures.hpp"
#include "sng/game.hpp"
#include "sng/generator.hpp"
#include "sng/paradox.hpp"
#include "sng/serialize.hpp"
#include "sng/structure.hpp"

namespace sng {

namespace cli_detail {

inline SocialNetwork load_input(const std::string& file) {
  if (std::filesystem::exists(file)) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open '" + file + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_network(text.str());
  }
  for (const auto& entry : fixture_catalog())
    if (entry.name == file) return validate_network(entry.description);
  throw std::invalid_argument("no such file or fixture: '" + file + "'");
}

/// "node=strategy" pairs separated by commas, with the literal t0 token.
inline JointStrategy parse_profile_arg(const SocialNetwork& net, const std::string& text) {
  std::vector<bool> assigned(net.node_count(), false);
  JointStrategy s(net.node_count(), Strategy::abstain());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string pair = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    auto strip = [](std::string v) {
      while (!v.empty() && v.front() == ' ') v.erase(v.begin());
      while (!v.empty() && v.back() == ' ') v.pop_back();
      return v;
    };
    pair = strip(pair);
    if (pair.empty()) continue;
    std::size_t eq = pair.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("profile entry '" + pair + "' is not node=strategy");
    std::string node = strip(pair.substr(0, eq));
    std::string token = strip(pair.substr(eq + 1));
    auto i = net.node_index(node);
    if (!i) throw PreconditionError("unknown node '" + node + "' in profile");
    if (assigned[*i]) throw PreconditionError("node '" + node + "' assigned twice");
    assigned[*i] = true;
    if (token == kAbstainToken) {
      s[*i] = Strategy::abstain();
    } else {
      auto t = net.product_index(token);
      if (!t) throw PreconditionError("unknown strategy '" + token + "' in profile");
      s[*i] = Strategy::product(*t);
    }
  }
  for (int i = 0; i < net.node_count(); ++i)
    if (!assigned[i])
      throw PreconditionError("profile does not assign node '" + net.node_name(i) + "'");
  require_valid_profile(net, s);
  return s;
}

inline std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  std::size_t sep = text.find("..");
  if (sep == std::string::npos)
    throw std::invalid_argument("seed range must look like A..B, got '" + text + "'");
  try {
    std::uint64_t begin = std::stoull(text.substr(0, sep));
    std::uint64_t end = std::stoull(text.substr(sep + 2));
    return {begin, end};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad seed range '" + text + "'");
  }
}

inline void print_path_text(std::ostream& out, const SocialNetwork& net,
                            const DeviationPath& path) {
  out << "start: " << profile_to_string(net, path.start) << "\n";
  for (const Deviation& d : path.steps)
    out << "  " << net.node_name(d.node) << ": " << net.strategy_label(d.from) << " -> "
        << net.strategy_label(d.to) << "  (gain " << d.gain.to_string()
        << (d.best_response ? ", best response)" : ")") << "\n";
  out << "end:   " << profile_to_string(net, path.end) << "\n";
}

inline void print_certificate_text(std::ostream& out, const SocialNetwork& net,
                                   const ParadoxCertificate& cert) {
  out << cert.query.to_string() << ": " << (cert.verdict ? "true" : "false")
      << "  (pairs examined: " << cert.pairs_examined << ")\n";
  if (!cert.witness) return;
  const ParadoxWitness& w = *cert.witness;
  out << "  equilibrium:  " << profile_to_string(net, w.initial_ne) << "\n";
  out << "  modification: "
      << (w.modification.kind == ModificationKind::Expansion ? "add " : "remove ")
      << net.product_name(w.modification.product) << " at node "
      << net.node_name(w.modification.node);
  if (w.modification.threshold)
    out << " (threshold " << w.modification.threshold->to_string() << ")";
  out << "\n";
  if (w.forced_move)
    out << "  forced move:  " << net.node_name(w.forced_move->first) << " -> "
        << (w.forced_move->second.is_abstain()
                ? kAbstainToken
                : net.product_name(w.forced_move->second.product_index()))
        << "\n";
  if (w.path) {
    out << "  path (" << w.path->steps.size() << " steps):\n";
    print_path_text(out, net, *w.path);
  }
  if (w.cycle) {
    out << "  reachable cycle of length " << w.cycle->cycle.steps.size() << ", entered after "
        << w.cycle->prefix.steps.size() << " steps:\n";
    print_path_text(out, net, w.cycle->cycle);
  }
  if (w.digest) {
    out << "  exploration reached " << w.digest->reached << " profiles, "
        << w.digest->terminals.size() << " terminal(s):\n";
    for (const auto& [profile, rel] : w.digest->terminals)
      out << "    " << profile_to_string(net, profile) << "  [" << to_string(rel) << "]\n";
  }
  if (w.exhaustion)
    out << "  modified game has no equilibrium (" << w.exhaustion->profiles_scanned
        << " profiles scanned)\n";
}

}  // namespace cli_detail

/// Command-line front end; returns the process exit code.
/// 0 ok, 1 usage, 2 invalid input, 3 enumeration cap exceeded.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"social network game analyzer"};
  app.require_subcommand(1);
  app.fallthrough(true);

  int threads = 1;
  std::uint64_t state_cap = kDefaultStateCap;
  app.add_option("--threads", threads, "worker threads for classification sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--state-cap", state_cap, "profile-space cap for explorations");

  std::string file, profile_text, mode_text = "any";
  std::string notion, quantifier = "exists", strength;
  bool as_json = false, emit = false, improvement = false, source_free = false;
  std::uint64_t seed = 1;
  int gen_nodes = 4, gen_products = 2;
  double density = 0.5;
  std::string seeds_text;

  auto* validate_cmd = app.add_subcommand("validate", "check a network document");
  validate_cmd->add_option("file", file, "document path or fixture name")->required();
  validate_cmd->add_flag("--json", as_json);

  auto* equilibria_cmd = app.add_subcommand("equilibria", "enumerate Nash equilibria");
  equilibria_cmd->add_option("file", file)->required();
  equilibria_cmd->add_flag("--json", as_json);

  auto* payoffs_cmd = app.add_subcommand("payoffs", "evaluate payoffs at a profile");
  payoffs_cmd->add_option("file", file)->required();
  payoffs_cmd->add_option("--profile", profile_text, "node=strategy pairs, comma separated")
      ->required();
  payoffs_cmd->add_flag("--json", as_json);

  auto* path_cmd = app.add_subcommand("path", "shortest improvement path to an equilibrium");
  path_cmd->add_option("file", file)->required();
  path_cmd->add_option("--from", profile_text, "start profile")->required();
  path_cmd->add_option("--mode", mode_text)->check(CLI::IsMember({"any", "br"}));
  path_cmd->add_flag("--json", as_json);

  auto* classify_cmd = app.add_subcommand("classify", "decide one paradox query");
  classify_cmd->add_option("file", file)->required();
  classify_cmd->add_option("--notion", notion)
      ->required()
      ->check(CLI::IsMember({"vulnerable", "fragile", "inefficient", "unsafe"}));
  classify_cmd->add_option("--quantifier", quantifier)
      ->check(CLI::IsMember({"exists", "forall", "total"}));
  classify_cmd->add_option("--strength", strength)->check(CLI::IsMember({"weak", "strict"}));
  classify_cmd->add_flag("--json", as_json);

  auto* report_cmd = app.add_subcommand("report", "all fourteen paradox verdicts");
  report_cmd->add_option("file", file)->required();
  report_cmd->add_flag("--json", as_json);

  auto* fixture_cmd = app.add_subcommand("fixture", "describe or emit a catalogued network");
  fixture_cmd->add_option("name", file, "fixture name")->required();
  fixture_cmd->add_flag("--emit", emit, "print the canonical document");
  fixture_cmd->add_flag("--json", as_json);

  auto* generate_cmd = app.add_subcommand("generate", "emit a seeded random network");
  generate_cmd->add_option("--seed", seed)->required();
  generate_cmd->add_option("--nodes", gen_nodes)->required();
  generate_cmd->add_option("--products", gen_products)->required();
  generate_cmd->add_option("--density", density, "edge probability in [0,1]");
  generate_cmd->add_flag("--source-free", source_free);

  auto* search_cmd =
      app.add_subcommand("search-forall-s", "hunt for a forall-strict vulnerable network");
  search_cmd->add_option("--seeds", seeds_text, "inclusive seed range A..B")->required();
  search_cmd->add_option("--nodes", gen_nodes)->required();
  search_cmd->add_option("--products", gen_products);
  search_cmd->add_option("--density", density);
  search_cmd->add_flag("--json", as_json);

  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering");
  dot_cmd->add_option("file", file)->required();
  dot_cmd->add_flag("--improvement", improvement, "render the deviation graph instead");
  dot_cmd->add_option("--from", profile_text, "start profile for --improvement");
  dot_cmd->add_option("--mode", mode_text)->check(CLI::IsMember({"any", "br"}));

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  ClassifyOptions opts;
  opts.threads = threads;
  opts.state_cap = state_cap;

  try {
    if (*validate_cmd) {
      SocialNetwork net = cli_detail::load_input(file);
      if (as_json) {
        nlohmann::json j;
        j["ok"] = true;
        j["nodes"] = net.node_count();
        j["edges"] = net.edges().size();
        j["products"] = net.product_names();
        nlohmann::json sources = nlohmann::json::array();
        for (int i : source_nodes(net)) sources.push_back(net.node_name(i));
        j["sources"] = std::move(sources);
        out << j.dump(2) << "\n";
      } else {
        out << "ok: " << net.node_count() << " nodes, " << net.edges().size() << " edges, "
            << source_nodes(net).size() << " source(s)\n";
      }
    } else if (*equilibria_cmd) {
      SocialNetwork net = cli_detail::load_input(file);
      auto nes = enumerate_nash_equilibria(net, opts.state_cap);
      if (as_json) {
        nlohmann::json j;
        j["count"] = nes.size();
        nlohmann::json list = nlohmann::json::array();
        for (const auto& s : nes) list.push_back(profile_json(net, s));
        j["equilibria"] = std::move(list);
        out << j.dump(2) << "\n";
      } else {
        out << nes.size() << " equilibrium(s)\n";
        for (const auto& s : nes) out << "  " << profile_to_string(net, s) << "\n";
      }
    } else if (*payoffs_cmd) {
      SocialNetwork net = cli_detail::load_input(file);
      JointStrategy s = cli_detail::parse_profile_arg(net, profile_text);
      PayoffVector p = payoff_vector(net, s);
      if (as_json) {
        nlohmann::json j = nlohmann::json::object();
        for (int i = 0; i < net.node_count(); ++i) j[net.node_name(i)] = p[i].to_string();
        out << nlohmann::json{{"payoffs", j}}.dump(2) << "\n";
      } else {
        for (int i = 0; i < net.node_count(); ++i)
          out << net.node_name(i) << " = " << p[i].to_string() << "\n";
      }
    } else if (*path_cmd) {
      SocialNetwork net = cli_detail::load_input(file);
      JointStrategy s = cli_detail::parse_profile_arg(net, profile_text);
      DeviationMode mode =
          mode_text == "br" ? DeviationMode::BestResponseOnly : DeviationMode::AnyProfitable;
      auto path = witness_path(net, s, terminal_goal(net), mode, opts.state_cap);
      if (as_json) {
        nlohmann::json j;
        j["found"] = path.has_value();
        if (path) j["path"] = path_json(net, *path);
        out << j.dump(2) << "\n";
      } else if (path) {
        out << "reached an equilibrium in " << path->steps.size() << " step(s)\n";
        cli_detail::print_path_text(out, net, *path);
      } else {
        out << "no equilibrium reachable: every improvement path from here is infinite\n";
      }
    } else if (*classify_cmd) {
      SocialNetwork net = cli_detail::load_input(file);
      if (strength.empty() && (notion == "vulnerable" || notion == "inefficient"))
        strength = "weak";
      ParadoxQuery query = parse_query(notion, quantifier, strength);
      ParadoxCertificate cert = classify(net, query, opts);
      if (as_json)
        out << certificate_json(net, cert).dump(2) << "\n";
      else
        cli_detail::print_certificate_text(out, net, cert);
    } else if (*report_cmd) {
      SocialNetwork net = cli_detail::load_input(file);
      ParadoxReport report = full_report(net, opts);
      if (as_json) {
        out << report_json(net, report).dump(2) << "\n";
      } else {
        for (const auto& cert : report.certificates) {
          out << cert.query.to_string();
          for (std::size_t pad = cert.query.to_string().size(); pad < 28; ++pad) out << ' ';
          out << (cert.verdict ? "true" : "false");
          if (cert.witness) {
            out << "   [ne " << profile_to_string(net, cert.witness->initial_ne) << ", "
                << (cert.witness->modification.kind == ModificationKind::Expansion ? "+"
                                                                                   : "-")
                << net.product_name(cert.witness->modification.product) << "@"
                << net.node_name(cert.witness->modification.node) << "]";
          }
          out << "\n";
        }
        out << "lattice: ok\n";
      }
    } else if (*fixture_cmd) {
      const FixtureEntry& entry = [&]() -> const FixtureEntry& {
        for (const auto& candidate : fixture_catalog())
          if (candidate.name == file) return candidate;
        throw std::invalid_argument("unknown fixture '" + file + "'");
      }();
      if (emit) {
        out << serialize_document(entry.description);
      } else if (as_json) {
        nlohmann::json j;
        j["name"] = entry.name;
        j["notes"] = entry.notes;
        j["expected"] = entry.expected;
        j["document"] = nlohmann::json::parse(serialize_document(entry.description));
        out << j.dump(2) << "\n";
      } else {
        out << entry.name << ": " << entry.notes << "\n";
        for (const auto& [query, verdict] : entry.expected)
          out << "  " << query << " = " << (verdict ? "true" : "false") << "\n";
      }
    } else if (*generate_cmd) {
      RandomNetworkParams params;
      params.nodes = gen_nodes;
      params.products = gen_products;
      params.source_free = source_free;
      params.density_permille = static_cast<int>(density * 1000 + 0.5);
      out << serialize_document(random_network(seed, params));
    } else if (*search_cmd) {
      if (gen_products < 3)
        throw std::invalid_argument("the search needs --products of at least 3");
      SearchConfig config;
      std::tie(config.seed_begin, config.seed_end) = cli_detail::parse_seed_range(seeds_text);
      config.params.nodes = gen_nodes;
      config.params.products = gen_products;
      config.params.density_permille = static_cast<int>(density * 1000 + 0.5);
      SearchOutcome outcome = search_forall_s_vulnerable(config, opts);
      if (as_json) {
        nlohmann::json j;
        j["instances_examined"] = outcome.instances_examined;
        j["seed_begin"] = outcome.seed_begin;
        j["seed_end"] = outcome.seed_end;
        j["found"] = outcome.found_seed.has_value();
        if (outcome.found_seed) {
          j["seed"] = *outcome.found_seed;
          SocialNetwork net = validate_network(*outcome.network);
          j["network"] = nlohmann::json::parse(serialize_document(*outcome.network));
          j["certificate"] = certificate_json(net, *outcome.certificate);
        }
        out << j.dump(2) << "\n";
      } else if (outcome.found_seed) {
        out << "FOUND at seed " << *outcome.found_seed << " -- this would settle an open "
            << "problem; re-verify with `classify --notion vulnerable --quantifier forall "
            << "--strength strict`\n";
        out << serialize_document(*outcome.network);
      } else {
        out << "no forall-strict vulnerable network among " << outcome.instances_examined
            << " instance(s), seeds " << outcome.seed_begin << ".." << outcome.seed_end
            << "\n";
      }
    } else if (*dot_cmd) {
      SocialNetwork net = cli_detail::load_input(file);
      if (improvement) {
        if (profile_text.empty())
          throw std::invalid_argument("--improvement needs --from PROFILE");
        JointStrategy s = cli_detail::parse_profile_arg(net, profile_text);
        DeviationMode mode = mode_text == "br" ? DeviationMode::BestResponseOnly
                                               : DeviationMode::AnyProfitable;
        ImprovementGraphView view = explore(net, {s}, mode, opts.state_cap);
        out << export_dot(net, view);
      } else {
        out << export_dot(net);
      }
    }
    return 0;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sng
