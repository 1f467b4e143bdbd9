#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gap {

inline constexpr std::uint64_t kDefaultSeed = 20141224;

/// Which similarities a node's preference sums over.
///   outgoing: s(i,a) over the ancestors a of i (its exemplar candidates).
///   incoming: s(j,i) over the nodes j whose root path passes through i.
/// With incoming, the root's unbounded self-responsibility caps every other
/// node at a(u,u) + r(u,u) <= (1 + alpha) * sum_j s(j,u), so alpha < -1
/// always yields a single cluster.
enum class PreferenceRule { outgoing, incoming };

PreferenceRule parse_preference_rule(std::string_view name);
std::string_view to_string(PreferenceRule rule);

struct GapParams {
  double sigma = 1.0;   // kernel scale
  double alpha = -10.0; // preference proportionality constant
  PreferenceRule preference_rule = PreferenceRule::outgoing;
  double damping = 0.9;
  int max_iterations = 1000;
  int convergence_window = 50;

  // Relative 1e-12 perturbation of similarities to break exact ties.
  bool jitter = true;
  std::uint64_t seed = kDefaultSeed;

  // Record (iteration, net similarity, exemplar count) every iteration.
  bool trace = false;
  int threads = 1;

  /// Throws ParameterError unless sigma > 0, alpha < 0 and the
  /// message-passing settings are valid.
  void validate() const;

  /// Only damping, iteration limits and threads.
  void validate_message_passing() const;

  /// Non-fatal advisories, e.g. |alpha| <= sigma.
  std::vector<std::string> warnings() const;
};

}  // namespace gap
