#include "sng/dynamics.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "sng/fixtures.hpp"
#include "sng/generator.hpp"
#include "sng/paradox.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace sng;
using sng::testing::figure_profile;
using sng::testing::fixture_network;
using sng::testing::profile;

namespace {

Modification expansion(const SocialNetwork& net, const std::string& node,
                       const std::string& product) {
  return {ModificationKind::Expansion, *net.node_index(node), *net.product_index(product),
          std::nullopt};
}

Modification contraction(const SocialNetwork& net, const std::string& node,
                         const std::string& product) {
  return {ModificationKind::Contraction, *net.node_index(node), *net.product_index(product),
          std::nullopt};
}

std::vector<std::string> step_tokens(const SocialNetwork& net, const DeviationPath& path) {
  std::vector<std::string> tokens;
  for (const Deviation& d : path.steps)
    tokens.push_back(net.node_name(d.node) + ":" + net.strategy_label(d.to));
  return tokens;
}

}  // namespace

TEST_CASE("the fig6 expansion leaves a single opening move") {
  SocialNetwork net = fixture_network("fig6");
  SocialNetwork expanded = apply_modification(net, expansion(net, "1", "t2"));
  JointStrategy s = figure_profile(expanded, {"t1", "t1", "t2"});
  for (DeviationMode mode : {DeviationMode::AnyProfitable, DeviationMode::BestResponseOnly}) {
    auto devs = profitable_deviations(expanded, s, mode);
    REQUIRE(devs.size() == 1);
    CHECK(expanded.node_name(devs[0].node) == "1");
    CHECK(expanded.strategy_label(devs[0].to) == "t2");
    CHECK(devs[0].best_response);
  }
}

TEST_CASE("equilibria admit no deviations") {
  SocialNetwork net = fixture_network("fig3");
  JointStrategy s = figure_profile(net, {"t2", "t3", "t3", "t3", "t1", "t1"});
  CHECK(profitable_deviations(net, s, DeviationMode::AnyProfitable).empty());
}

TEST_CASE("best-response deviations are a filtered subset") {
  SocialNetwork net = fixture_network("fig7");
  SocialNetwork expanded = apply_modification(net, expansion(net, "2", "t1"));
  JointStrategy s = figure_profile(expanded, {"t2", "t1", "t2"});
  auto any = profitable_deviations(expanded, s, DeviationMode::AnyProfitable);
  auto br = profitable_deviations(expanded, s, DeviationMode::BestResponseOnly);
  REQUIRE(any.size() == 2);
  CHECK(expanded.node_name(any[0].node) == "2");
  CHECK(any[0].to.is_abstain());
  CHECK_FALSE(any[0].best_response);
  CHECK(expanded.strategy_label(any[1].to) == "t3");
  CHECK(any[1].best_response);
  REQUIRE(br.size() == 1);
  CHECK(expanded.strategy_label(br[0].to) == "t3");
}

TEST_CASE("fig6 expanded explores into the six-state cycle") {
  SocialNetwork net = fixture_network("fig6");
  SocialNetwork expanded = apply_modification(net, expansion(net, "1", "t2"));
  JointStrategy s = figure_profile(expanded, {"t1", "t1", "t2"});
  ImprovementGraphView view = explore(expanded, {s}, DeviationMode::AnyProfitable);
  CHECK(view.has_cycle);
  CHECK(view.all_paths_infinite);
  CHECK(view.terminals.empty());
  REQUIRE(view.cycle_witness.has_value());
  CHECK(view.cycle_witness->length() == 6);
  CHECK(view.cycle_witness->start == view.cycle_witness->end);
  replay_path(expanded, *view.cycle_witness);

  // The witness walks exactly the six profiles of the printed loop.
  std::set<JointStrategy> seen;
  JointStrategy cursor = view.cycle_witness->start;
  seen.insert(cursor);
  for (const Deviation& d : view.cycle_witness->steps) {
    cursor[d.node] = d.to;
    seen.insert(cursor);
  }
  std::set<JointStrategy> expected;
  for (auto triple : {std::vector<std::string>{"t1", "t1", "t2"},
                      {"t2", "t1", "t2"},
                      {"t2", "t3", "t2"},
                      {"t2", "t3", "t3"},
                      {"t1", "t3", "t3"},
                      {"t1", "t1", "t3"}})
    expected.insert(figure_profile(expanded, triple));
  CHECK(seen == expected);
}

TEST_CASE("fig5 expanded has no equilibrium and only infinite paths") {
  SocialNetwork net = fixture_network("fig5");
  SocialNetwork expanded = apply_modification(net, expansion(net, "1", "t2"));
  CHECK(enumerate_nash_equilibria(expanded).empty());
  JointStrategy s = figure_profile(expanded, {"t1", "t1", "t2"});
  ImprovementGraphView view = explore(expanded, {s}, DeviationMode::AnyProfitable);
  CHECK(view.all_paths_infinite);
  CHECK(view.has_cycle);
}

TEST_CASE("fig7 expanded cycles but still reaches the all-t4 equilibrium") {
  SocialNetwork net = fixture_network("fig7");
  SocialNetwork expanded = apply_modification(net, expansion(net, "2", "t1"));
  JointStrategy start = figure_profile(expanded, {"t1", "t3", "t3"});
  ImprovementGraphView view = explore(expanded, {start}, DeviationMode::AnyProfitable);
  CHECK(view.has_cycle);
  CHECK_FALSE(view.all_paths_infinite);
  JointStrategy all4 = figure_profile(expanded, {"t4", "t4", "t4"});
  CHECK(std::find(view.terminals.begin(), view.terminals.end(), all4) !=
        view.terminals.end());
  REQUIRE(view.cycle_witness.has_value());
  CHECK(view.cycle_witness->length() == 6);
}

TEST_CASE("witness path: fig4 expansion can reach the all-abstain terminal") {
  SocialNetwork net = fixture_network("fig4");
  SocialNetwork expanded = apply_modification(net, expansion(net, "4", "t2"));
  JointStrategy s = figure_profile(expanded, {"t3", "t3", "t1", "t1", "t2", "t2"});
  auto path = witness_path(expanded, s, terminal_goal(expanded),
                           DeviationMode::AnyProfitable);
  REQUIRE(path.has_value());
  replay_path(expanded, *path);
  CHECK(profitable_deviations(expanded, path->end, DeviationMode::AnyProfitable).empty());

  auto to_abstain = witness_path(
      expanded, s,
      [&](const JointStrategy& cand) { return cand == all_abstain(expanded); },
      DeviationMode::AnyProfitable);
  REQUIRE(to_abstain.has_value());
  replay_path(expanded, *to_abstain);
}

TEST_CASE("witness path from an equilibrium fails predicates beyond it") {
  SocialNetwork net = fixture_network("fig3");
  JointStrategy s = figure_profile(net, {"t2", "t3", "t3", "t3", "t1", "t1"});
  auto path = witness_path(
      net, s, [&](const JointStrategy& cand) { return cand != s; },
      DeviationMode::AnyProfitable);
  CHECK_FALSE(path.has_value());
}

TEST_CASE("fig8 contraction: both forced starts run into all-t2") {
  SocialNetwork net = fixture_network("fig8");
  SocialNetwork contracted = apply_modification(net, contraction(net, "3", "t1"));
  JointStrategy s = figure_profile(net, {"t2", "t2", "t1", "t1"});
  Modification m = contraction(net, "3", "t1");
  StartSet starts = start_set(contracted, s, m);
  REQUIRE(starts.forced_node.has_value());
  REQUIRE(starts.profiles.size() == 2);  // t0 and t2 remain for node 3

  JointStrategy all2 = uniform_profile(contracted, *contracted.product_index("t2"));
  for (const JointStrategy& start : starts.profiles) {
    auto path = witness_path(contracted, start, terminal_goal(contracted),
                             DeviationMode::AnyProfitable);
    REQUIRE(path.has_value());
    CHECK(path->end == all2);
  }
  ImprovementGraphView view =
      explore(contracted, starts.profiles, DeviationMode::AnyProfitable);
  CHECK_FALSE(view.has_cycle);
  REQUIRE(view.terminals.size() == 1);
  CHECK(view.terminals[0] == all2);
}

TEST_CASE("fig3 expansion triggers the unique length-7 best-response path") {
  SocialNetwork net = fixture_network("fig3");
  SocialNetwork expanded = apply_modification(net, expansion(net, "4", "t1"));
  JointStrategy s = figure_profile(expanded, {"t2", "t3", "t3", "t3", "t1", "t1"});

  // In best-response mode every intermediate state has exactly one move.
  JointStrategy cursor = s;
  std::vector<std::string> taken;
  while (true) {
    auto devs = profitable_deviations(expanded, cursor, DeviationMode::BestResponseOnly);
    if (devs.empty()) break;
    REQUIRE(devs.size() == 1);
    taken.push_back(expanded.node_name(devs[0].node) + ":" +
                    expanded.strategy_label(devs[0].to));
    cursor[devs[0].node] = devs[0].to;
  }
  CHECK(taken == std::vector<std::string>{"4:t1", "3:t2", "5:t2", "6:t0", "4:t3", "3:t3",
                                          "5:t0"});
  CHECK(cursor == figure_profile(expanded, {"t2", "t3", "t3", "t3", "t0", "t0"}));
  CHECK(is_nash_equilibrium(expanded, cursor));
}

TEST_CASE("fig3 as printed: the expansion wakes nobody") {
  SocialNetwork net = fixture_network("fig3-printed");
  SocialNetwork expanded = apply_modification(net, expansion(net, "4", "t1"));
  JointStrategy s = figure_profile(expanded, {"t2", "t3", "t3", "t3", "t1", "t1"});
  CHECK(profitable_deviations(expanded, s, DeviationMode::AnyProfitable).empty());
  CHECK(is_nash_equilibrium(expanded, s));
}

TEST_CASE("every explore terminal is an equilibrium of the explored game") {
  for (const char* name : {"fig1", "fig4", "fig8", "fig10", "fig11"}) {
    SocialNetwork net = fixture_network(name);
    for (const JointStrategy& s : enumerate_nash_equilibria(net)) {
      for (const Modification& m :
           enumerate_modifications(net, ModificationKind::Expansion)) {
        SocialNetwork modified = apply_modification(net, m);
        ImprovementGraphView view = explore(modified, {s}, DeviationMode::AnyProfitable);
        for (const JointStrategy& terminal : view.terminals)
          CHECK(is_nash_equilibrium(modified, terminal));
      }
    }
  }
}

TEST_CASE("acyclic explorations terminate along random maximal walks") {
  SocialNetwork net = fixture_network("fig8");
  SocialNetwork contracted = apply_modification(net, contraction(net, "3", "t1"));
  JointStrategy s = figure_profile(net, {"t2", "t2", "t1", "t1"});
  StartSet starts = start_set(contracted, s, contraction(net, "3", "t1"));
  ImprovementGraphView view =
      explore(contracted, starts.profiles, DeviationMode::AnyProfitable);
  REQUIRE_FALSE(view.has_cycle);

  std::mt19937_64 rng(5);
  for (int walk = 0; walk < 200; ++walk) {
    JointStrategy cursor = starts.profiles[rng() % starts.profiles.size()];
    std::size_t steps = 0;
    while (true) {
      auto devs = profitable_deviations(contracted, cursor, DeviationMode::AnyProfitable);
      if (devs.empty()) break;
      const Deviation& d = devs[rng() % devs.size()];
      cursor[d.node] = d.to;
      REQUIRE(++steps <= view.reached);  // an acyclic walk cannot revisit states
    }
    CHECK(is_nash_equilibrium(contracted, cursor));
  }
}

TEST_CASE("lazy exploration agrees with the full-matrix oracle on fixtures") {
  for (const std::string& name : fixture_names()) {
    SocialNetwork net = fixture_network(name);
    auto nes = enumerate_nash_equilibria(net);
    // Expansions from each equilibrium; contractions with the start-set rule.
    for (ModificationKind kind : {ModificationKind::Expansion, ModificationKind::Contraction}) {
      for (const Modification& m : enumerate_modifications(net, kind)) {
        SocialNetwork modified = apply_modification(net, m);
        for (const JointStrategy& s : nes) {
          StartSet starts = start_set(modified, s, m);
          ImprovementGraphView view =
              explore(modified, starts.profiles, DeviationMode::AnyProfitable);
          sng::testing::OracleExploration reference =
              sng::testing::oracle_explore(modified, starts.profiles);
          INFO(name << " ne=" << profile_to_string(net, s));
          CHECK(view.terminals == reference.terminals);
          CHECK(view.has_cycle == reference.cycle_reachable);
          CHECK(view.reached == reference.reached);
        }
      }
    }
  }
}

TEST_CASE("replay rejects doctored paths") {
  SocialNetwork net = fixture_network("fig1");
  JointStrategy s = figure_profile(net, {"t2", "t3", "t2"});
  auto devs = profitable_deviations(net, s, DeviationMode::AnyProfitable);
  REQUIRE_FALSE(devs.empty());
  DeviationPath path;
  path.start = s;
  path.steps.push_back(devs[0]);
  path.end = s;
  path.end[devs[0].node] = devs[0].to;
  replay_path(net, path);  // sanity: the honest path replays

  SECTION("wrong end profile") {
    DeviationPath bad = path;
    bad.end = s;
    CHECK_THROWS_AS(replay_path(net, bad), PreconditionError);
  }
  SECTION("fabricated gain") {
    DeviationPath bad = path;
    bad.steps[0].gain += Rational(1, 7);
    CHECK_THROWS_AS(replay_path(net, bad), PreconditionError);
  }
  SECTION("non-improving move") {
    DeviationPath bad = path;
    bad.steps[0].to = bad.steps[0].from;
    CHECK_THROWS_AS(replay_path(net, bad), PreconditionError);
  }
}

TEST_CASE("phase procedure: expansion that changes nothing yields an empty path") {
  NetworkDescription d;
  d.products = {"t1", "t2"};
  d.nodes.push_back({"a", {"t2"}, {{"t2", "0.3"}}});
  d.nodes.push_back({"b", {"t2"}, {{"t2", "0.3"}}});
  d.edges.push_back({"a", "b", "0.5"});
  d.edges.push_back({"b", "a", "0.5"});
  SocialNetwork net = validate_network(d);
  JointStrategy s = uniform_profile(net, *net.product_index("t2"));
  REQUIRE(is_nash_equilibrium(net, s));
  Modification m{ModificationKind::Expansion, *net.node_index("a"), *net.product_index("t1"),
                 Rational(3, 10)};
  SocialNetwork expanded = apply_modification(net, m);
  DeviationPath path = phase_path(expanded, s, "t1");
  CHECK(path.steps.empty());
  CHECK(path.end == s);
}

TEST_CASE("phase procedure: a supported chain adopts in one step") {
  NetworkDescription d;
  d.products = {"t1", "t2"};
  d.nodes.push_back({"1", {"t2"}, {{"t2", "0.3"}}});
  d.nodes.push_back({"sa", {"t1"}, {{"t1", "0.3"}}});
  d.nodes.push_back({"sb", {"t2"}, {{"t2", "0.3"}}});
  d.edges.push_back({"sa", "1", "0.5"});
  d.edges.push_back({"sb", "1", "0.4"});
  SocialNetwork net = validate_network(d);
  JointStrategy s =
      profile(net, {{"1", "t2"}, {"sa", "t1"}, {"sb", "t2"}});
  REQUIRE(is_nash_equilibrium(net, s));
  Modification m{ModificationKind::Expansion, *net.node_index("1"), *net.product_index("t1"),
                 Rational(3, 10)};
  SocialNetwork expanded = apply_modification(net, m);
  DeviationPath path = phase_path(expanded, s, "t1");
  REQUIRE(path.steps.size() == 1);
  CHECK(step_tokens(expanded, path) == std::vector<std::string>{"1:t1"});
  CHECK(is_nash_equilibrium(expanded, path.end));
}

TEST_CASE("phase procedure sweep: terminates at an equilibrium never weakly worse") {
  std::mt19937_64 seeds(2024);
  int runs = 0;
  for (int iter = 0; iter < 80; ++iter) {
    RandomNetworkParams params;
    params.nodes = 2 + static_cast<int>(seeds() % 4);
    params.products = 2;
    params.density_permille = 450;
    SocialNetwork net = validate_network(random_network(seeds(), params));
    auto nes = enumerate_nash_equilibria(net);
    for (const JointStrategy& s : nes) {
      for (const Modification& m :
           enumerate_modifications(net, ModificationKind::Expansion)) {
        SocialNetwork expanded = apply_modification(net, m);
        DeviationPath path = phase_path(expanded, s, net.product_name(m.product));
        replay_path(expanded, path);
        REQUIRE(is_nash_equilibrium(expanded, path.end));
        auto rel = compare_profiles(net, s, expanded, path.end);
        CHECK_FALSE(weakly_better(rel));
        ++runs;
      }
    }
  }
  CHECK(runs > 100);
}

TEST_CASE("phase procedure rejects bad inputs") {
  SocialNetwork three = fixture_network("fig1");
  CHECK_THROWS_AS(phase_path(three, all_abstain(three), "t1"), PreconditionError);

  SocialNetwork net = fixture_network("fig8");
  // (t2,t2,t2,t1) is not an equilibrium of any two-product contraction of
  // fig8's strategy space: node 4 wants t2 immediately.
  JointStrategy not_ne = figure_profile(net, {"t2", "t2", "t2", "t1"});
  CHECK_THROWS_AS(phase_path(net, not_ne, "t1"), PreconditionError);
}
