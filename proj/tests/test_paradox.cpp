#include "sng/paradox.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "sng/fixtures.hpp"
#include "sng/generator.hpp"
#include "sng/structure.hpp"
#include "test_support.hpp"

using namespace sng;
using sng::testing::figure_profile;
using sng::testing::fixture_network;

namespace {

ParadoxQuery q(const char* notion, const char* quantifier, const char* strength = "") {
  return parse_query(notion, quantifier, strength);
}

std::string mod_string(const SocialNetwork& net, const Modification& m) {
  return std::string(m.kind == ModificationKind::Expansion ? "+" : "-") +
         net.node_name(m.node) + ":" + net.product_name(m.product);
}

}  // namespace

TEST_CASE("modification enumeration") {
  SECTION("fig1 expansions include t3 at node 1 and count the complements") {
    SocialNetwork net = fixture_network("fig1");
    auto mods = enumerate_modifications(net, ModificationKind::Expansion);
    std::size_t expected = 0;
    for (int i = 0; i < net.node_count(); ++i)
      expected += net.product_count() - net.product_set(i).size();
    CHECK(mods.size() == expected);
    bool found = false;
    for (const auto& m : mods)
      if (mod_string(net, m) == "+1:t3") found = true;
    CHECK(found);
  }
  SECTION("fig3 expansion count is the sum of complement sizes") {
    SocialNetwork net = fixture_network("fig3");
    auto mods = enumerate_modifications(net, ModificationKind::Expansion);
    CHECK(mods.size() == 10);
  }
  SECTION("single-product nodes contribute no contraction") {
    SocialNetwork net = fixture_network("fig11-printed");
    auto mods = enumerate_modifications(net, ModificationKind::Contraction);
    REQUIRE(mods.size() == 2);  // only node 3 owns two products
    CHECK(net.node_name(mods[0].node) == "3");
    CHECK(net.node_name(mods[1].node) == "3");
  }
  SECTION("deterministic node-then-product order") {
    SocialNetwork net = fixture_network("fig8");
    auto mods = enumerate_modifications(net, ModificationKind::Contraction);
    std::vector<std::string> got;
    for (const auto& m : mods) got.push_back(mod_string(net, m));
    CHECK(got == std::vector<std::string>{"-3:t1", "-3:t2", "-4:t1", "-4:t2"});
  }
}

TEST_CASE("applying modifications") {
  SECTION("fig3 plus t1 at node 4 owns the new pair") {
    SocialNetwork net = fixture_network("fig3");
    Modification m{ModificationKind::Expansion, *net.node_index("4"),
                   *net.product_index("t1"), std::nullopt};
    SocialNetwork expanded = apply_modification(net, m);
    CHECK(expanded.owns(*expanded.node_index("4"), *expanded.product_index("t1")));
    CHECK(expanded.threshold(*expanded.node_index("4"), *expanded.product_index("t1")) ==
          Rational(1, 20));  // node 4's uniform threshold carries over
    CHECK(expanded.edges() == net.edges());
  }
  SECTION("fig8 minus t1 at node 3 drops the threshold entry") {
    SocialNetwork net = fixture_network("fig8");
    Modification m{ModificationKind::Contraction, *net.node_index("3"),
                   *net.product_index("t1"), std::nullopt};
    SocialNetwork contracted = apply_modification(net, m);
    int node3 = *contracted.node_index("3");
    CHECK_FALSE(contracted.owns(node3, *contracted.product_index("t1")));
    CHECK_THROWS_AS(contracted.threshold(node3, *contracted.product_index("t1")),
                    PreconditionError);
  }
  SECTION("expanding an owned product is illegal") {
    SocialNetwork net = fixture_network("fig8");
    Modification m{ModificationKind::Expansion, *net.node_index("3"),
                   *net.product_index("t1"), std::nullopt};
    CHECK_THROWS_AS(apply_modification(net, m), PreconditionError);
  }
  SECTION("contracting to an empty set is illegal") {
    SocialNetwork net = fixture_network("fig11-printed");
    Modification m{ModificationKind::Contraction, *net.node_index("1"),
                   *net.product_index("t1"), std::nullopt};
    CHECK_THROWS_AS(apply_modification(net, m), PreconditionError);
  }
  SECTION("a mixed-threshold node needs an explicit expansion threshold") {
    SocialNetwork net = fixture_network("fig9");
    Modification bare{ModificationKind::Expansion, *net.node_index("1"),
                      *net.product_index("t1"), std::nullopt};
    CHECK_THROWS_AS(apply_modification(net, bare), PreconditionError);
    Modification with{ModificationKind::Expansion, *net.node_index("1"),
                      *net.product_index("t1"), Rational(1, 5)};
    SocialNetwork expanded = apply_modification(net, with);
    CHECK(expanded.threshold(*expanded.node_index("1"), *expanded.product_index("t1")) ==
          Rational(1, 5));
    // The enumerated default for that node is its maximum threshold.
    for (const auto& m : enumerate_modifications(net, ModificationKind::Expansion))
      if (m.node == *net.node_index("1")) CHECK(*m.threshold == Rational(1, 5));
  }
}

TEST_CASE("start sets") {
  SocialNetwork net = fixture_network("fig8");
  JointStrategy s = figure_profile(net, {"t2", "t2", "t1", "t1"});
  SECTION("removing the played product forces the first move") {
    Modification m{ModificationKind::Contraction, *net.node_index("3"),
                   *net.product_index("t1"), std::nullopt};
    SocialNetwork contracted = apply_modification(net, m);
    StartSet starts = start_set(contracted, s, m);
    REQUIRE(starts.forced_node == *net.node_index("3"));
    REQUIRE(starts.profiles.size() == 2);
    CHECK(starts.profiles[0] == figure_profile(net, {"t2", "t2", "t0", "t1"}));
    CHECK(starts.profiles[1] == figure_profile(net, {"t2", "t2", "t2", "t1"}));
  }
  SECTION("removing an unplayed product keeps the profile") {
    Modification m{ModificationKind::Contraction, *net.node_index("3"),
                   *net.product_index("t2"), std::nullopt};
    SocialNetwork contracted = apply_modification(net, m);
    StartSet starts = start_set(contracted, s, m);
    CHECK_FALSE(starts.forced_node.has_value());
    REQUIRE(starts.profiles.size() == 1);
    CHECK(starts.profiles[0] == s);
  }
  SECTION("expansions keep the profile") {
    Modification m{ModificationKind::Expansion, *net.node_index("1"),
                   *net.product_index("t1"), std::nullopt};
    SocialNetwork expanded = apply_modification(net, m);
    StartSet starts = start_set(expanded, s, m);
    CHECK_FALSE(starts.forced_node.has_value());
    CHECK(starts.profiles == std::vector<JointStrategy>{s});
  }
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS(parse_query("vulnerable", "total", "weak"), PreconditionError);
  CHECK_THROWS_AS(parse_query("vulnerable", "exists", ""), PreconditionError);
  CHECK_THROWS_AS(parse_query("fragile", "exists", "weak"), PreconditionError);
  CHECK_THROWS_AS(parse_query("nonsense", "exists", ""), PreconditionError);
  CHECK(all_queries().size() == 14);
}

TEST_CASE("fig3: forall-weak vulnerable with the documented witness") {
  SocialNetwork net = fixture_network("fig3");
  ParadoxCertificate cert = classify(net, q("vulnerable", "forall", "weak"));
  REQUIRE(cert.verdict);
  const ParadoxWitness& w = *cert.witness;
  CHECK(w.initial_ne == figure_profile(net, {"t2", "t3", "t3", "t3", "t1", "t1"}));
  CHECK(mod_string(net, w.modification) == "+4:t1");
  REQUIRE(w.digest.has_value());
  REQUIRE(w.digest->terminals.size() == 1);
  SocialNetwork expanded = apply_modification(net, w.modification);
  CHECK(w.digest->terminals[0].profile ==
        figure_profile(expanded, {"t2", "t3", "t3", "t3", "t0", "t0"}));
  CHECK(w.digest->terminals[0].relation == ProfileRelation::WeaklyBetter);
  verify_certificate(net, cert);

  CHECK_FALSE(classify(net, q("vulnerable", "exists", "strict")).verdict);
}

TEST_CASE("fig8: forall-strict inefficient through the forced contraction") {
  SocialNetwork net = fixture_network("fig8");
  ParadoxCertificate cert = classify(net, q("inefficient", "forall", "strict"));
  REQUIRE(cert.verdict);
  const ParadoxWitness& w = *cert.witness;
  CHECK(w.initial_ne == figure_profile(net, {"t2", "t2", "t1", "t1"}));
  CHECK(mod_string(net, w.modification) == "-3:t1");
  REQUIRE(w.digest.has_value());
  SocialNetwork contracted = apply_modification(net, w.modification);
  JointStrategy all2 = uniform_profile(contracted, *contracted.product_index("t2"));
  REQUIRE(w.digest->terminals.size() == 1);
  CHECK(w.digest->terminals[0].profile == all2);
  CHECK(w.digest->terminals[0].relation == ProfileRelation::StrictlyBetter);
  verify_certificate(net, cert);
}

TEST_CASE("fig6: forall-fragile but not fragile") {
  SocialNetwork net = fixture_network("fig6");
  ParadoxCertificate fa = classify(net, q("fragile", "forall"));
  REQUIRE(fa.verdict);
  CHECK(mod_string(net, fa.witness->modification) == "+1:t2");
  verify_certificate(net, fa);

  ParadoxCertificate total = classify(net, q("fragile", "total"));
  CHECK_FALSE(total.verdict);

  // The expanded game still has the equilibrium the text describes.
  SocialNetwork expanded = apply_modification(net, fa.witness->modification);
  JointStrategy surviving = sng::testing::profile(
      expanded, {{"1", "t1"}, {"2", "t1"}, {"3", "t0"}, {"a", "t0"}, {"b", "t0"},
                 {"s1", "t1"}, {"s3", "t3"}});
  CHECK(is_nash_equilibrium(expanded, surviving));
}

TEST_CASE("fig5: destroying every equilibrium is total fragility") {
  SocialNetwork net = fixture_network("fig5");
  ParadoxCertificate cert = classify(net, q("fragile", "total"));
  REQUIRE(cert.verdict);
  CHECK(mod_string(net, cert.witness->modification) == "+1:t2");
  REQUIRE(cert.witness->exhaustion.has_value());
  verify_certificate(net, cert);
}

TEST_CASE("full report matches the frozen fixture tables") {
  for (const auto& entry : fixture_catalog()) {
    SocialNetwork net = validate_network(entry.description);
    ParadoxReport report = full_report(net);
    REQUIRE(report.certificates.size() == 14);
    for (const auto& cert : report.certificates) {
      INFO(entry.name << " " << cert.query.to_string());
      REQUIRE(entry.expected.count(cert.query.to_string()) == 1);
      CHECK(cert.verdict == entry.expected.at(cert.query.to_string()));
    }
  }
}

TEST_CASE("every positive certificate replays") {
  for (const auto& entry : fixture_catalog()) {
    SocialNetwork net = validate_network(entry.description);
    ParadoxReport report = full_report(net);
    for (const auto& cert : report.certificates) {
      INFO(entry.name << " " << cert.query.to_string());
      CHECK_NOTHROW(verify_certificate(net, cert));
    }
  }
}

TEST_CASE("certificate verification rejects tampering") {
  SocialNetwork net = fixture_network("fig8");
  ParadoxCertificate cert = classify(net, q("inefficient", "forall", "strict"));
  REQUIRE(cert.verdict);
  SECTION("swapped modification") {
    ParadoxCertificate bad = cert;
    bad.witness->modification.product = *net.product_index("t2");
    CHECK_THROWS_AS(verify_certificate(net, bad), PreconditionError);
  }
  SECTION("non-equilibrium start") {
    ParadoxCertificate bad = cert;
    bad.witness->initial_ne = figure_profile(net, {"t2", "t0", "t1", "t1"});
    CHECK_THROWS_AS(verify_certificate(net, bad), PreconditionError);
  }
  SECTION("verdict without witness") {
    ParadoxCertificate bad = cert;
    bad.witness.reset();
    CHECK_THROWS_AS(verify_certificate(net, bad), PreconditionError);
  }
}

TEST_CASE("networks with a source node are never exists-strict vulnerable") {
  // Sources sit at c0 in every equilibrium, so payoffs cannot drop everywhere.
  std::mt19937_64 seeds(404);
  int with_sources = 0;
  for (int iter = 0; iter < 40; ++iter) {
    RandomNetworkParams params;
    params.nodes = 2 + static_cast<int>(seeds() % 4);
    params.products = 1 + static_cast<int>(seeds() % 3);
    params.density_permille = 350;
    SocialNetwork net = validate_network(random_network(seeds(), params));
    if (source_nodes(net).empty()) continue;
    ++with_sources;
    CHECK_FALSE(classify(net, q("vulnerable", "exists", "strict")).verdict);
  }
  CHECK(with_sources > 10);
  CHECK_FALSE(classify(fixture_network("fig3"), q("vulnerable", "exists", "strict")).verdict);
}

TEST_CASE("two-product networks are never forall-weak vulnerable") {
  std::mt19937_64 seeds(1234);
  for (int iter = 0; iter < 50; ++iter) {
    RandomNetworkParams params;
    params.nodes = 2 + static_cast<int>(seeds() % 4);
    params.products = 2;
    params.density_permille = 500;
    SocialNetwork net = validate_network(random_network(seeds(), params));
    INFO("seed iteration " << iter);
    CHECK_FALSE(classify(net, q("vulnerable", "forall", "weak")).verdict);
  }
}

TEST_CASE("the implication lattice holds on fixtures and random networks") {
  auto check_net = [](const SocialNetwork& net) {
    ParadoxReport report = full_report(net);  // throws on a lattice violation
    auto v = [&](const char* key) { return report.verdict(key); };
    // Spot-check the chains explicitly as well.
    if (v("vulnerable/forall/strict")) {
      CHECK(v("vulnerable/exists/strict"));
      CHECK(v("vulnerable/forall/weak"));
    }
    if (v("fragile/total")) CHECK(v("fragile/forall"));
    if (v("fragile/forall")) CHECK(v("fragile/exists"));
    if (v("unsafe/total")) CHECK(v("unsafe/forall"));
    if (v("unsafe/forall")) CHECK(v("unsafe/exists"));
  };
  for (const auto& entry : fixture_catalog()) check_net(validate_network(entry.description));
  std::mt19937_64 seeds(777);
  for (int iter = 0; iter < 40; ++iter) {
    RandomNetworkParams params;
    params.nodes = 2 + static_cast<int>(seeds() % 4);
    params.products = 1 + static_cast<int>(seeds() % 3);
    params.density_permille = 450;
    check_net(validate_network(random_network(seeds(), params)));
  }
}

TEST_CASE("report determinism across thread counts") {
  SocialNetwork net = fixture_network("fig9");
  ClassifyOptions one, four;
  one.threads = 1;
  four.threads = 4;
  ParadoxReport a = full_report(net, one);
  ParadoxReport b = full_report(net, four);
  REQUIRE(a.certificates.size() == b.certificates.size());
  for (std::size_t k = 0; k < a.certificates.size(); ++k) {
    const auto& ca = a.certificates[k];
    const auto& cb = b.certificates[k];
    CHECK(ca.verdict == cb.verdict);
    CHECK(ca.pairs_examined == cb.pairs_examined);
    CHECK(ca.witness.has_value() == cb.witness.has_value());
    if (ca.witness && cb.witness) {
      CHECK(ca.witness->initial_ne == cb.witness->initial_ne);
      CHECK(ca.witness->modification.node == cb.witness->modification.node);
      CHECK(ca.witness->modification.product == cb.witness->modification.product);
    }
  }
}

TEST_CASE("the forall-strict-vulnerable search") {
  SECTION("a zero budget reports an empty sweep") {
    SearchConfig config;
    config.seed_begin = 1;
    config.seed_end = 0;
    config.params.products = 3;
    SearchOutcome outcome = search_forall_s_vulnerable(config);
    CHECK(outcome.instances_examined == 0);
    CHECK_FALSE(outcome.found_seed.has_value());
  }
  SECTION("two-product configurations are rejected") {
    SearchConfig config;
    config.params.products = 2;
    CHECK_THROWS_AS(search_forall_s_vulnerable(config), PreconditionError);
  }
  SECTION("a short sweep finds nothing") {
    SearchConfig config;
    config.seed_begin = 1;
    config.seed_end = 40;
    config.params.nodes = 4;
    config.params.products = 3;
    config.params.density_permille = 500;
    SearchOutcome outcome = search_forall_s_vulnerable(config);
    CHECK(outcome.instances_examined == 40);
    CHECK_FALSE(outcome.found_seed.has_value());
  }
}

TEST_CASE("classification on a network without equilibria is all negative") {
  SocialNetwork net = fixture_network("fig5");
  Modification m{ModificationKind::Expansion, *net.node_index("1"),
                 *net.product_index("t2"), std::nullopt};
  SocialNetwork no_ne = apply_modification(net, m);
  REQUIRE(enumerate_nash_equilibria(no_ne).empty());
  for (const ParadoxQuery& query : all_queries()) {
    ParadoxCertificate cert = classify(no_ne, query);
    CHECK_FALSE(cert.verdict);
    if (query.quantifier != Quantifier::Total) CHECK(cert.pairs_examined == 0);
  }
}
