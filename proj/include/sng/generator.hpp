#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sng/errors.hpp"
#include "sng/network.hpp"

namespace sng {

/// Knobs for seeded random networks. Weights and thresholds are drawn from
/// exact grids (k / grid) and in-weight sums are rescaled exactly, so the
/// output is float-free.
struct RandomNetworkParams {
  int nodes = 4;
  int products = 2;
  int density_permille = 500;  // chance of each ordered pair getting an edge
  bool source_free = false;
  int weight_grid = 20;
  int threshold_grid = 20;
  std::string c0 = "1";
};

/// Deterministic function of (seed, params): the same inputs always produce
/// the same document, independent of platform.
inline NetworkDescription random_network(std::uint64_t seed,
                                         const RandomNetworkParams& params) {
  if (params.nodes < 1 || params.nodes > 16)
    throw PreconditionError("nodes must be in 1..16");
  if (params.products < 1 || params.products > 8)
    throw PreconditionError("products must be in 1..8");
  if (params.density_permille < 0 || params.density_permille > 1000)
    throw PreconditionError("density must be in 0..1000 permille");
  if (params.weight_grid < 1 || params.threshold_grid < 1)
    throw PreconditionError("grids must be positive");
  if (params.source_free && params.nodes < 2)
    throw PreconditionError("a source-free network needs at least two nodes");

  std::mt19937_64 rng(seed);
  const int n = params.nodes;

  NetworkDescription d;
  d.c0 = params.c0;
  d.name = "random-" + std::to_string(seed);
  for (int t = 0; t < params.products; ++t) d.products.push_back("t" + std::to_string(t + 1));

  int width = n >= 10 ? 2 : 1;
  auto node_id = [&](int i) {
    std::string s = std::to_string(i + 1);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
  };

  for (int i = 0; i < n; ++i) {
    NodeDescription node;
    node.id = node_id(i);
    for (int t = 0; t < params.products; ++t)
      if (rng() % 2 == 0) node.products.push_back(d.products[t]);
    if (node.products.empty())
      node.products.push_back(d.products[rng() % params.products]);
    Rational theta(1 + static_cast<long long>(rng() % params.threshold_grid),
                   params.threshold_grid);
    for (const auto& p : node.products) node.thresholds[p] = theta.to_string();
    d.nodes.push_back(std::move(node));
  }

  std::vector<std::vector<Rational>> weight(n, std::vector<Rational>(n, Rational(0)));
  std::vector<bool> has_in(n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (static_cast<int>(rng() % 1000) >= params.density_permille) continue;
      weight[i][j] = Rational(1 + static_cast<long long>(rng() % params.weight_grid),
                              params.weight_grid);
      has_in[j] = true;
    }
  if (params.source_free) {
    for (int j = 0; j < n; ++j) {
      if (has_in[j]) continue;
      int from = static_cast<int>((j + 1 + rng() % (n - 1)) % n);
      weight[from][j] = Rational(1 + static_cast<long long>(rng() % params.weight_grid),
                                 params.weight_grid);
    }
  }

  // Exact rescale keeps every in-sum at most one.
  for (int j = 0; j < n; ++j) {
    Rational sum;
    for (int i = 0; i < n; ++i) sum += weight[i][j];
    if (sum > Rational(1))
      for (int i = 0; i < n; ++i) weight[i][j] /= sum;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!weight[i][j].is_zero())
        d.edges.push_back({node_id(i), node_id(j), weight[i][j].to_string()});

  return d;
}

}  // namespace sng
