#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sng/errors.hpp"
#include "sng/network.hpp"

namespace sng {

namespace detail {

// Payoff without profile revalidation; callers guarantee legality.
inline Rational payoff_unchecked(const SocialNetwork& net, const JointStrategy& s, int i,
                                 Strategy strategy) {
  if (strategy.is_abstain()) return Rational(0);
  if (net.is_source(i)) return net.c0();
  int t = strategy.product_index();
  Rational support;
  for (const auto& edge : net.in_edges(i))
    if (!s[edge.from].is_abstain() && s[edge.from].product_index() == t)
      support += edge.weight;
  return support - net.threshold(i, t);
}

}  // namespace detail

/// p_i(s): 0 when abstaining, c0 for an adopting source node, otherwise the
/// accumulated weight of same-product in-neighbours minus the threshold.
inline Rational payoff(const SocialNetwork& net, const JointStrategy& s, int i) {
  require_valid_profile(net, s);
  return detail::payoff_unchecked(net, s, i, s[i]);
}

inline PayoffVector payoff_vector(const SocialNetwork& net, const JointStrategy& s) {
  require_valid_profile(net, s);
  PayoffVector p(net.node_count());
  for (int i = 0; i < net.node_count(); ++i)
    p[i] = detail::payoff_unchecked(net, s, i, s[i]);
  return p;
}

/// All payoff-maximising strategies of node i against s_{-i}, in strategy
/// order (t0 first). Ties are preserved.
inline std::vector<Strategy> best_responses(const SocialNetwork& net, const JointStrategy& s,
                                            int i) {
  require_valid_profile(net, s);
  std::vector<Strategy> options = net.strategy_options(i);
  std::vector<Rational> values;
  values.reserve(options.size());
  Rational best;
  for (std::size_t k = 0; k < options.size(); ++k) {
    values.push_back(detail::payoff_unchecked(net, s, i, options[k]));
    if (k == 0 || values.back() > best) best = values.back();
  }
  std::vector<Strategy> result;
  for (std::size_t k = 0; k < options.size(); ++k)
    if (values[k] == best) result.push_back(options[k]);
  return result;
}

inline bool is_best_response(const SocialNetwork& net, const JointStrategy& s, int i) {
  Rational current = detail::payoff_unchecked(net, s, i, s[i]);
  for (Strategy option : net.strategy_options(i))
    if (detail::payoff_unchecked(net, s, i, option) > current) return false;
  return true;
}

inline bool is_nash_equilibrium(const SocialNetwork& net, const JointStrategy& s) {
  require_valid_profile(net, s);
  for (int i = 0; i < net.node_count(); ++i)
    if (!is_best_response(net, s, i)) return false;
  return true;
}

namespace detail {

/// Mixed-radix codec between joint strategies and dense indices. Node 0 is
/// the most significant digit and each node's digits follow strategy order,
/// so index order equals lexicographic profile order.
class ProfileCodec {
 public:
  explicit ProfileCodec(const SocialNetwork& net) : net_(&net) {
    options_.reserve(net.node_count());
    for (int i = 0; i < net.node_count(); ++i) options_.push_back(net.strategy_options(i));
  }

  /// Total profile count, or 0 on overflow past `cap`.
  std::uint64_t space_size(std::uint64_t cap) const {
    std::uint64_t total = 1;
    for (const auto& options : options_) {
      total *= options.size();
      if (total > cap) return 0;
    }
    return total;
  }

  std::uint64_t encode(const JointStrategy& s) const {
    std::uint64_t index = 0;
    for (int i = 0; i < static_cast<int>(options_.size()); ++i) {
      const auto& options = options_[i];
      std::uint64_t digit = 0;
      if (!s[i].is_abstain()) {
        const auto& set = net_->product_set(i);
        auto it = std::lower_bound(set.begin(), set.end(), s[i].product_index());
        digit = 1 + static_cast<std::uint64_t>(it - set.begin());
      }
      index = index * options.size() + digit;
    }
    return index;
  }

  JointStrategy decode(std::uint64_t index) const {
    JointStrategy s(options_.size());
    for (int i = static_cast<int>(options_.size()) - 1; i >= 0; --i) {
      const auto& options = options_[i];
      s[i] = options[index % options.size()];
      index /= options.size();
    }
    return s;
  }

  const std::vector<Strategy>& options(int i) const { return options_[i]; }

 private:
  const SocialNetwork* net_;
  std::vector<std::vector<Strategy>> options_;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

/// Exhaustive scan of all prod(|P(i)|+1) profiles, in lexicographic order.
inline std::vector<JointStrategy> enumerate_nash_equilibria(
    const SocialNetwork& net, std::uint64_t state_cap = kDefaultStateCap) {
  detail::ProfileCodec codec(net);
  std::uint64_t total = codec.space_size(state_cap);
  if (total == 0)
    throw CapExceeded("state space exceeds cap of " + std::to_string(state_cap) +
                      " profiles");
  std::vector<JointStrategy> result;
  for (std::uint64_t index = 0; index < total; ++index) {
    JointStrategy s = codec.decode(index);
    bool ne = true;
    for (int i = 0; i < net.node_count() && ne; ++i) ne = is_best_response(net, s, i);
    if (ne) result.push_back(std::move(s));
  }
  return result;
}

enum class ProfileRelation { StrictlyBetter, WeaklyBetter, Equal, Incomparable };

inline const char* to_string(ProfileRelation r) {
  switch (r) {
    case ProfileRelation::StrictlyBetter: return "StrictlyBetter";
    case ProfileRelation::WeaklyBetter: return "WeaklyBetter";
    case ProfileRelation::Equal: return "Equal";
    case ProfileRelation::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

/// How s_a (in net_a) relates to s_b (in net_b), pointwise over the shared
/// node set. The payoff formula does not read product sets, so profiles of a
/// network and of its expansion or contraction are directly comparable.
inline ProfileRelation compare_profiles(const SocialNetwork& net_a, const JointStrategy& s_a,
                                        const SocialNetwork& net_b,
                                        const JointStrategy& s_b) {
  if (net_a.node_names() != net_b.node_names())
    throw PreconditionError("profile comparison across different node sets");
  PayoffVector pa = payoff_vector(net_a, s_a);
  PayoffVector pb = payoff_vector(net_b, s_b);
  bool all_ge = true, all_gt = true, any_gt = false, all_eq = true;
  for (int i = 0; i < net_a.node_count(); ++i) {
    if (pa[i] < pb[i]) all_ge = all_gt = false;
    if (pa[i] <= pb[i]) all_gt = false;
    if (pa[i] > pb[i]) any_gt = true;
    if (pa[i] != pb[i]) all_eq = false;
  }
  if (all_eq) return ProfileRelation::Equal;
  if (all_gt) return ProfileRelation::StrictlyBetter;
  if (all_ge && any_gt) return ProfileRelation::WeaklyBetter;
  return ProfileRelation::Incomparable;
}

/// s_a >_w s_b in the profile preorder (strictly better implies weakly).
inline bool weakly_better(ProfileRelation r) {
  return r == ProfileRelation::StrictlyBetter || r == ProfileRelation::WeaklyBetter;
}
inline bool strictly_better(ProfileRelation r) {
  return r == ProfileRelation::StrictlyBetter;
}

/// The uniform profile where every node plays t0.
inline JointStrategy all_abstain(const SocialNetwork& net) {
  return JointStrategy(net.node_count(), Strategy::abstain());
}

/// The uniform profile t-bar; requires every node to own t.
inline JointStrategy uniform_profile(const SocialNetwork& net, int product) {
  JointStrategy s(net.node_count(), Strategy::product(product));
  require_valid_profile(net, s);
  return s;
}

}  // namespace sng
