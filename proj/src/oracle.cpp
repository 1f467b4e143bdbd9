#include "gap/oracle.hpp"

#include <cmath>
#include <limits>

#include "gap/error.hpp"

namespace gap::oracle {

ValidConfiguration brute_force_exemplars(const SimilarityModel& model) {
  const std::size_t n = model.size();
  if (n > kMaxBruteForceNodes) {
    throw ParameterError("brute force refuses " + std::to_string(n) + " nodes (limit " +
                         std::to_string(kMaxBruteForceNodes) + ")");
  }
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  ValidConfiguration best{{}, kNegInf, kNegInf};

  auto offer = [&best](double net, const std::vector<std::size_t>* assignment) {
    if (net > best.net_similarity) {
      best.runner_up = best.net_similarity;
      best.net_similarity = net;
      best.assignment = *assignment;
    } else if (net > best.runner_up) {
      best.runner_up = net;
    }
  };

  std::vector<std::size_t> assignment(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double net = 0.0;
    // Smallest loss from swapping one node to its second-best exemplar.
    double min_gap = std::numeric_limits<double>::infinity();
    bool valid = true;
    for (std::size_t i = 0; i < n && valid; ++i) {
      if (mask >> i & 1) {
        assignment[i] = i;
        net += model.preference(i);
        continue;
      }
      const auto cand = model.support(i);
      const auto sim = model.similarities(i);
      double first = kNegInf, second = kNegInf;
      std::size_t choice = i;
      for (std::size_t e = 1; e < cand.size(); ++e) {
        if (!(mask >> cand[e] & 1)) continue;
        if (sim[e] > first) {
          second = first;
          first = sim[e];
          choice = cand[e];
        } else if (sim[e] > second) {
          second = sim[e];
        }
      }
      if (choice == i) {
        valid = false;
        break;
      }
      assignment[i] = choice;
      net += first;
      if (second > kNegInf) min_gap = std::min(min_gap, first - second);
    }
    if (!valid) continue;
    offer(net, &assignment);
    if (std::isfinite(min_gap)) {
      // Runner-up inside this exemplar set; never beats the best of the set.
      if (net - min_gap > best.runner_up && net - min_gap <= best.net_similarity) best.runner_up = net - min_gap;
    }
  }
  return best;
}

StageReference naive_stage_oracles(const DistanceMatrix& d, double sigma) {
  const std::size_t n = d.size();
  StageReference ref;
  ref.potentials.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = d(i, j);
      sum += std::exp(-(dij * dij) / sigma);
    }
    ref.potentials[i] = -sum;
  }

  const auto& p = ref.potentials;
  ref.parents.assign(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < n; ++k) {
      const bool lower = p[k] < p[i] || (p[k] == p[i] && k < i);
      if (!lower) continue;
      if (best == std::numeric_limits<std::size_t>::max() || d(i, k) < d(i, best)) best = k;
    }
    ref.parents[i] = best;
  }

  ref.ancestors.resize(n);
  ref.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double walked = 0.0;
    std::size_t at = i;
    for (std::size_t steps = 0; steps < n; ++steps) {
      const std::size_t up = ref.parents[at];
      if (up == std::numeric_limits<std::size_t>::max()) break;
      walked += d(at, up);
      ref.ancestors[i].push_back(up);
      ref.weights[i].push_back(walked);
      at = up;
    }
  }
  return ref;
}

}  // namespace gap::oracle
