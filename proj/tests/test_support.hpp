#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sng/fixtures.hpp"
#include "sng/game.hpp"
#include "sng/network.hpp"

namespace sng::testing {

inline SocialNetwork fixture_network(const std::string& name) {
  return validate_network(load_fixture(name).description);
}

/// Builds a profile from node-id -> strategy-token ("t0" allowed).
inline JointStrategy profile(const SocialNetwork& net,
                             const std::map<std::string, std::string>& assignment) {
  JointStrategy s(net.node_count(), Strategy::abstain());
  for (const auto& [node, token] : assignment) {
    auto i = net.node_index(node);
    REQUIRE(i.has_value());
    if (token == kAbstainToken) {
      s[*i] = Strategy::abstain();
    } else {
      auto t = net.product_index(token);
      REQUIRE(t.has_value());
      s[*i] = Strategy::product(*t);
    }
  }
  require_valid_profile(net, s);
  return s;
}

/// Shorthand for the figure fixtures: assigns the listed tokens to nodes
/// "1".."k" and every other node its unique product.
inline JointStrategy figure_profile(const SocialNetwork& net,
                                    const std::vector<std::string>& numbered) {
  std::map<std::string, std::string> assignment;
  for (std::size_t k = 0; k < numbered.size(); ++k)
    assignment[std::to_string(k + 1)] = numbered[k];
  for (int i = 0; i < net.node_count(); ++i) {
    const std::string& id = net.node_name(i);
    if (assignment.count(id)) continue;
    REQUIRE(net.product_set(i).size() == 1);
    assignment[id] = net.product_name(net.product_set(i)[0]);
  }
  return profile(net, assignment);
}

}  // namespace sng::testing
