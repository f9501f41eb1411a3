#pragma once

#include <map>
#include <string>
#include <vector>

#include "sng/errors.hpp"
#include "sng/network.hpp"

namespace sng {

/// A catalogued example network: description, the 14 classification verdicts
/// it is expected to produce (keys like "vulnerable/forall/weak"), and notes
/// on any repair applied relative to the printed figure it comes from.
struct FixtureEntry {
  std::string name;
  NetworkDescription description;
  std::map<std::string, bool> expected;
  std::string notes;
};

namespace detail {

struct FixtureBuilder {
  NetworkDescription d;

  FixtureBuilder(std::string name, std::vector<std::string> products) {
    d.name = std::move(name);
    d.products = std::move(products);
  }

  FixtureBuilder& node(const std::string& id, const std::vector<std::string>& products,
                       const std::string& theta) {
    NodeDescription n;
    n.id = id;
    n.products = products;
    for (const auto& p : products) n.thresholds[p] = theta;
    d.nodes.push_back(std::move(n));
    return *this;
  }

  FixtureBuilder& node(const std::string& id,
                       const std::vector<std::pair<std::string, std::string>>& thresholds) {
    NodeDescription n;
    n.id = id;
    for (const auto& [p, theta] : thresholds) {
      n.products.push_back(p);
      n.thresholds[p] = theta;
    }
    d.nodes.push_back(std::move(n));
    return *this;
  }

  FixtureBuilder& edge(const std::string& from, const std::string& to,
                       const std::string& weight) {
    d.edges.push_back({from, to, weight});
    return *this;
  }
};

inline std::map<std::string, bool> verdicts(
    bool ve_w, bool ve_s, bool va_w, bool va_s,   // vulnerable e/w, e/s, a/w, a/s
    bool fe, bool fa, bool ft,                    // fragile e, a, total
    bool ie_w, bool ie_s, bool ia_w, bool ia_s,   // inefficient
    bool ue, bool ua, bool ut) {                  // unsafe
  return {
      {"vulnerable/exists/weak", ve_w},   {"vulnerable/exists/strict", ve_s},
      {"vulnerable/forall/weak", va_w},   {"vulnerable/forall/strict", va_s},
      {"fragile/exists", fe},             {"fragile/forall", fa},
      {"fragile/total", ft},
      {"inefficient/exists/weak", ie_w},  {"inefficient/exists/strict", ie_s},
      {"inefficient/forall/weak", ia_w},  {"inefficient/forall/strict", ia_s},
      {"unsafe/exists", ue},              {"unsafe/forall", ua},
      {"unsafe/total", ut},
  };
}

inline std::vector<FixtureEntry> build_catalog() {
  std::vector<FixtureEntry> catalog;

  {
    FixtureBuilder b("fig1", {"t1", "t2", "t3"});
    b.node("1", {"t1", "t2"}, "0.3")
        .node("2", {"t1", "t3"}, "0.3")
        .node("3", {"t2", "t3"}, "0.3")
        .node("s_t2", {"t2"}, "0.3")
        .node("s_t3", {"t3"}, "0.3")
        .edge("1", "2", "0.5")
        .edge("2", "3", "0.5")
        .edge("3", "1", "0.5")
        .edge("s_t2", "3", "0.4")
        .edge("s_t3", "2", "0.4");
    catalog.push_back({"fig1", b.d,
                       verdicts(false, false, false, false, false, false, false, false,
                                false, false, false, false, false, false),
                       "Three-node cycle fed by two single-product sources; threshold 0.3 "
                       "everywhere."});
  }

  auto fig3 = [](const std::string& name, const std::string& w64) {
    FixtureBuilder b(name, {"t1", "t2", "t3"});
    b.node("1", {"t2"}, "0.05")
        .node("2", {"t3"}, "0.05")
        .node("3", {"t2", "t3"}, "0.05")
        .node("4", {"t3"}, "0.05")
        .node("5", {"t1", "t2"}, "0.05")
        .node("6", {"t1"}, "0.05")
        .edge("1", "3", "0.1")
        .edge("2", "4", "0.1")
        .edge("3", "4", "0.2")
        .edge("3", "5", "0.3")
        .edge("4", "3", "0.2")
        .edge("5", "6", "0.2")
        .edge("6", "4", w64)
        .edge("6", "5", "0.2");
    return b.d;
  };
  catalog.push_back({"fig3", fig3("fig3", "0.35"),
                     verdicts(true, false, true, false, false, false, false, false, false,
                              false, false, false, false, false),
                     "Edge 6->4 raised from the printed 0.3 to 0.35: with 0.3 the trigger "
                     "move 4:t1 only ties (0.3 - theta on both sides) and nothing fires."});
  catalog.push_back({"fig3-printed", fig3("fig3-printed", "0.3"),
                     verdicts(false, false, false, false, false, false, false, false, false,
                              false, false, false, false, false),
                     "Printed weights: adding t1 at node 4 creates a tie, so the intended "
                     "trigger is not a strict improvement and no paradox arises."});

  auto fig4 = [](const std::string& name, bool with_source) {
    FixtureBuilder b(name, {"t1", "t2", "t3"});
    b.node("1", {"t3"}, "0.05")
        .node("2", {"t2", "t3"}, "0.05")
        .node("3", {"t1", "t3"}, "0.05")
        .node("4", {"t1"}, "0.05")
        .node("5", {"t2", "t3"}, "0.05")
        .node("6", {"t2"}, "0.05");
    if (with_source) b.node("7", {"t1"}, "0.05");
    b.edge("1", "2", "0.1")
        .edge("1", "3", "0.1")
        .edge("2", "1", "0.1")
        .edge("3", "4", "0.2")
        .edge("3", "5", "0.2")
        .edge("4", "2", "0.2")
        .edge("4", "3", "0.2")
        .edge("5", "6", "0.1")
        .edge("6", "4", "0.3")
        .edge("6", "5", "0.1");
    if (with_source) b.edge("7", "1", "0.1");
    return b.d;
  };
  catalog.push_back({"fig4", fig4("fig4", false),
                     verdicts(true, true, false, false, false, false, false, false, false,
                              false, false, false, false, false),
                     "Source-free six-node network; adding t2 at node 4 can drive every "
                     "payoff to zero."});
  catalog.push_back({"fig4-source", fig4("fig4-source", true),
                     verdicts(true, false, false, false, false, false, false, false, false,
                              false, false, false, false, false),
                     "fig4 plus a t1-only source feeding node 1; the source pins its own "
                     "payoff at c0, which rules out strict vulnerability."});

  auto fig5 = [](const std::string& name, bool unsafe_variant) {
    FixtureBuilder b(name, {"t1", "t2", "t3"});
    if (unsafe_variant)
      b.node("1", {"t1", "t2"}, "0.1");
    else
      b.node("1", {"t1"}, "0.1");
    b.node("2", {"t1", "t3"}, "0.1").node("3", {"t2", "t3"}, "0.1");
    if (unsafe_variant)
      b.node("s1", {"t1", "t2"}, "0.1");
    else
      b.node("s1", {"t1"}, "0.1");
    b.node("s2", {"t2"}, "0.1")
        .node("s3", {"t3"}, "0.1")
        .edge("1", "2", "0.3")
        .edge("2", "3", "0.3")
        .edge("3", "1", "0.3")
        .edge("s1", "1", "0.2")
        .edge("s2", "3", "0.2")
        .edge("s3", "2", "0.2");
    return b.d;
  };
  catalog.push_back({"fig5", fig5("fig5", false),
                     verdicts(false, false, false, false, true, true, true, false, false,
                              false, false, false, false, false),
                     "Adding t2 at node 1 leaves the expanded game with no equilibrium at "
                     "all."});
  catalog.push_back({"fig5u", fig5("fig5u", true),
                     verdicts(false, false, false, false, false, false, false, false, false,
                              false, false, true, true, true),
                     "fig5 with t2 added to node 1 and its source; removing t2 from the "
                     "source recreates the equilibrium-free game."});

  auto fig6 = [](const std::string& name, bool unsafe_variant) {
    FixtureBuilder b(name, {"t1", "t2", "t3"});
    if (unsafe_variant)
      b.node("1", {"t1", "t2"}, "0.1");
    else
      b.node("1", {"t1"}, "0.1");
    b.node("2", {"t1", "t3"}, "0.1")
        .node("3", {"t2", "t3"}, "0.1")
        .node("a", {"t2"}, "0.1")
        .node("b", {"t2"}, "0.1");
    if (unsafe_variant)
      b.node("s1", {"t1", "t2"}, "0.1");
    else
      b.node("s1", {"t1"}, "0.1");
    b.node("s3", {"t3"}, "0.1")
        .edge("1", "2", "0.3")
        .edge("2", "3", "0.3")
        .edge("3", "1", "0.3")
        .edge("a", "3", "0.2")
        .edge("a", "b", "0.2")
        .edge("b", "a", "0.2")
        .edge("s1", "1", "0.2")
        .edge("s3", "2", "0.2");
    return b.d;
  };
  catalog.push_back({"fig6", fig6("fig6", false),
                     verdicts(false, false, false, false, true, true, false, false, false,
                              false, false, false, false, false),
                     "The two t2 nodes support each other, so they are not sources; after "
                     "the (1,+t2) expansion every path from the marked equilibrium cycles."});
  catalog.push_back({"fig6u", fig6("fig6u", true),
                     verdicts(false, false, false, false, false, false, false, false, false,
                              false, false, true, true, false),
                     "fig6 with t2 added to node 1 and its source; removing t2 from the "
                     "source strands the dynamics in the cycling region, yet the game "
                     "keeps an (unreachable) equilibrium."});

  auto fig7 = [](const std::string& name, bool unsafe_variant) {
    FixtureBuilder b(name, {"t1", "t2", "t3", "t4"});
    b.node("1", {"t1", "t2", "t4"}, "0.05");
    if (unsafe_variant)
      b.node("2", {"t1", "t3", "t4"}, "0.05");
    else
      b.node("2", {"t3", "t4"}, "0.05");
    b.node("3", {"t2", "t3", "t4"}, "0.05").node("s1", {"t1"}, "0.05").node(
        "s2", {"t2"}, "0.05");
    if (unsafe_variant)
      b.node("s3", {"t1", "t3"}, "0.05");
    else
      b.node("s3", {"t3"}, "0.05");
    b.node("s4", {"t4"}, "0.05")
        .edge("1", "2", "0.3")
        .edge("2", "3", "0.3")
        .edge("3", "1", "0.3")
        .edge("s1", "1", "0.2")
        .edge("s2", "3", "0.2")
        .edge("s3", "2", "0.2")
        .edge("s4", "1", "0.1");
    return b.d;
  };
  catalog.push_back({"fig7", fig7("fig7", false),
                     verdicts(false, false, false, false, true, false, false, true, false,
                              false, false, true, false, false),
                     "Adding t1 at node 2 opens an infinite path, but a longer improving "
                     "path still reaches the all-t4 equilibrium, so only the existential "
                     "fragility holds. Removals have bite here too: dropping node 1's t1 "
                     "can herd everyone onto t4 (weakly better) or trap the triangle in a "
                     "t2/t4 chase."});
  catalog.push_back({"fig7u", fig7("fig7u", true),
                     verdicts(false, false, false, false, true, false, false, true, false,
                              false, false, true, true, false),
                     "fig7 with t1 added to node 2 and to the t3 source; removing t1 from "
                     "that source reopens the cycle. The source-side removal still has the "
                     "all-t4 escape, but taking t4 away from node 1 at the all-t4 "
                     "equilibrium leaves no reachable equilibrium at all, so the network "
                     "is forall-unsafe as well."});

  {
    FixtureBuilder b("fig8", {"t1", "t2"});
    b.node("1", {"t2"}, "0.1")
        .node("2", {"t2"}, "0.1")
        .node("3", {"t1", "t2"}, "0.1")
        .node("4", {"t1", "t2"}, "0.1")
        .edge("1", "2", "0.3")
        .edge("2", "1", "0.3")
        .edge("2", "3", "0.3")
        .edge("2", "4", "0.3")
        .edge("3", "1", "0.3")
        .edge("3", "2", "0.3")
        .edge("3", "4", "0.3")
        .edge("4", "3", "0.3");
    catalog.push_back({"fig8", b.d,
                       verdicts(false, false, false, false, false, false, false, true, true,
                                true, true, false, false, false),
                       "Removing t1 from node 3 forces a first move after which every path "
                       "ends with all four nodes on t2 at payoff 2w - theta."});
  }

  auto fig9 = [](const std::string& name, bool repaired) {
    FixtureBuilder b(name, {"t1", "t2", "t3"});
    if (repaired)
      b.node("1", {{"t2", "0.2"}, {"t3", "0.1"}});
    else
      b.node("1", {{"t2", "0.2"}});
    b.node("2", {"t2", "t3"}, "0.2")
        .node("3", {"t1", "t2", "t3"}, "0.2")
        .node("4", {"t1", "t2", "t3"}, "0.2")
        .node("5", {{"t1", "0.2"}, {"t2", "0.3"}, {"t3", "0.3"}})
        .edge("1", "2", "0.4")
        .edge("1", "3", "0.4")
        .edge("1", "5", "0.4")
        .edge("2", "1", "0.4")
        .edge("2", "4", "0.4")
        .edge("3", "1", "0.4")
        .edge("3", "2", "0.4")
        .edge("3", "4", "0.4")
        .edge("4", "5", "0.4")
        .edge("5", "3", "0.4");
    return b.d;
  };
  catalog.push_back({"fig9", fig9("fig9", true),
                     verdicts(false, false, false, false, false, false, false, true, true,
                              true, true, true, false, false),
                     "Node 1 carries t3 with its lowered threshold, although the figure "
                     "label only shows t2; the low-threshold move 1:t3 needs it. The repair adds the equilibrium "
                     "(t3,t3,t2,t2,t2), and removing t3 from node 1 there drives every "
                     "path to all-t2, so unlike the printed network this variant is even "
                     "forall-strict-inefficient. A t2-chase among nodes 3,4,5 also makes "
                     "both variants exists-unsafe."});
  catalog.push_back({"fig9-printed", fig9("fig9-printed", false),
                     verdicts(false, false, false, false, false, false, false, true, true,
                              false, false, true, false, false),
                     "Figure label taken literally: node 1 owns only t2 and the 1:t3 move "
                     "is unavailable. This variant is not forall-weak-inefficient."});

  {
    FixtureBuilder b("fig10", {"t1", "t2"});
    b.node("1", {{"t1", "0.3"}, {"t2", "0.2"}})
        .node("2", {{"t1", "0.3"}, {"t2", "0.2"}})
        .node("3", {{"t1", "0.3"}, {"t2", "0.2"}})
        .edge("1", "2", "0.5")
        .edge("2", "3", "0.5")
        .edge("3", "1", "0.5");
    catalog.push_back({"fig10", b.d,
                       verdicts(false, false, false, false, false, false, false, true, true,
                                false, false, true, false, false),
                       "Simple cycle where t2 is cheaper than t1 for every node; dropping "
                       "t1 at one node lets everybody trade up, and one order of moves "
                       "instead chases t2 around the ring forever."});
  }

  {
    // The figure's products t and t1 are shipped as t1 and t2. As printed
    // (t1 everywhere, t2 only at node 3) the announced six-state chase cannot
    // run: once t1 is removed from node 3 it can never be re-adopted there,
    // since node 2 cannot supply t2 support either, and every path collapses
    // to all-abstain. The chase needs both products on every cycle node, with
    // the uniform threshold the example states.
    FixtureBuilder b("fig11", {"t1", "t2"});
    b.node("1", {"t1", "t2"}, "0.3")
        .node("2", {"t1", "t2"}, "0.3")
        .node("3", {"t1", "t2"}, "0.3")
        .edge("1", "2", "0.5")
        .edge("2", "3", "0.5")
        .edge("3", "1", "0.5");
    catalog.push_back({"fig11", b.d,
                       verdicts(false, false, false, false, false, false, false, false,
                                false, false, false, true, false, false),
                       "Simple cycle with both products everywhere and a uniform "
                       "threshold; removing a node's current product starts the six-state "
                       "chase around the ring on the other product. The figure's printed "
                       "product sets (the second product only at node 3) cannot run that "
                       "chase; see fig11-printed."});
    FixtureBuilder p("fig11-printed", {"t1", "t2"});
    p.node("1", {"t1"}, "0.3")
        .node("2", {"t1"}, "0.3")
        .node("3", {"t1", "t2"}, "0.3")
        .edge("1", "2", "0.5")
        .edge("2", "3", "0.5")
        .edge("3", "1", "0.5");
    catalog.push_back({"fig11-printed", p.d,
                       verdicts(false, false, false, false, false, false, false, false,
                                false, false, false, false, false, false),
                       "Figure taken literally: node 3's second product has no possible "
                       "supporter, so removing the common product just drains the ring "
                       "into all-abstain and no instability arises."});
  }

  return catalog;
}

}  // namespace detail

inline const std::vector<FixtureEntry>& fixture_catalog() {
  static const std::vector<FixtureEntry> catalog = detail::build_catalog();
  return catalog;
}

inline std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& entry : fixture_catalog()) names.push_back(entry.name);
  return names;
}

inline const FixtureEntry& load_fixture(const std::string& name) {
  for (const auto& entry : fixture_catalog())
    if (entry.name == name) return entry;
  throw PreconditionError("unknown fixture '" + name + "'");
}

}  // namespace sng
