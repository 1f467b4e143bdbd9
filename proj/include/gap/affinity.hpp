#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gap/belief_graph.hpp"
#include "gap/distance.hpp"
#include "gap/params.hpp"

namespace gap {

struct Clustering;

/// Candidate-restricted similarities for affinity propagation.
///
/// Row i lists the nodes allowed to serve as i's exemplar. The first entry of
/// every row is i itself and carries the preference s(i,i); pairs outside a
/// row behave as s = -inf and never carry messages. The belief-graph model has
/// rows {i} + ancestors(i); the dense model has rows {i} + all other nodes.
class SimilarityModel {
 public:
  using Row = std::vector<std::pair<std::size_t, double>>;

  SimilarityModel() = default;

  /// `arcs[i]` holds (candidate, similarity) pairs, excluding i itself.
  /// Throws InputError on out-of-range or duplicate candidates.
  static SimilarityModel from_rows(const std::vector<Row>& arcs, std::vector<double> preference);

  /// Full support from an n x n row-major matrix whose diagonal holds the preferences.
  static SimilarityModel from_dense(std::size_t n, std::span<const double> s);

  std::size_t size() const noexcept { return offset_.empty() ? 0 : offset_.size() - 1; }
  std::size_t entry_count() const noexcept { return candidate_.size(); }
  std::size_t row_begin(std::size_t i) const noexcept { return offset_[i]; }
  std::size_t row_end(std::size_t i) const noexcept { return offset_[i + 1]; }

  std::span<const std::size_t> support(std::size_t i) const noexcept {
    return {candidate_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  std::span<const double> similarities(std::size_t i) const noexcept {
    return {similarity_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }
  double preference(std::size_t i) const noexcept { return similarity_[offset_[i]]; }

  /// s(i,k), or nullopt when k is outside support(i).
  std::optional<double> similarity(std::size_t i, std::size_t k) const;

  const std::vector<std::size_t>& candidates() const noexcept { return candidate_; }
  const std::vector<double>& values() const noexcept { return similarity_; }

 private:
  friend SimilarityModel build_similarity_model(const BeliefGraph&, const GapParams&);

  std::vector<std::size_t> offset_;
  std::vector<std::size_t> candidate_;
  std::vector<double> similarity_;
};

/// s(i,a) = exp(-W(i,a) / sigma) on belief-graph arcs. The preference s(i,i)
/// is alpha times the sum of s(i,a) over i's ancestors (outgoing rule) or of
/// s(j,i) over the nodes j that reach i (incoming rule).
/// Throws ParameterError on invalid params.
SimilarityModel build_similarity_model(const BeliefGraph& bg, const GapParams& params);

/// Fully connected model with s(i,j) = -d_ij^2 and a shared preference that
/// defaults to the median off-diagonal similarity.
SimilarityModel dense_similarity_model(const DistanceMatrix& d,
                                       std::optional<double> shared_preference = std::nullopt);

/// Median of the off-diagonal -d_ij^2 values (0 for n < 2).
double median_similarity(const DistanceMatrix& d);

struct TracePoint {
  int iteration;
  double net_similarity;
  std::size_t exemplar_count;
};

/// Message state after a run. Messages are aligned with the model's entries.
struct ApState {
  std::vector<double> responsibility;
  std::vector<double> availability;
  int iterations = 0;
  bool converged = false;
  // Exemplar set at the last iteration and how many iterations it has held.
  std::vector<std::size_t> exemplars;
  int stable_iterations = 0;
  std::size_t messages_per_iteration = 0;
  std::size_t message_updates = 0;
  double mp_seconds = 0.0;
  std::vector<TracePoint> trace;
  std::vector<std::string> warnings;
};

/// Damped responsibility/availability updates restricted to each row's
/// support. Stops once the exemplar set is unchanged for
/// `convergence_window` iterations or at `max_iterations`.
ApState propagate(const SimilarityModel& model, const GapParams& params);

/// Message passing over a belief-graph model.
ApState sparse_ap(const SimilarityModel& model, const GapParams& params);

/// Exemplars are k with a(k,k) + r(k,k) > 0. Every other node takes its best
/// a + r candidate if that is an exemplar, otherwise the most similar
/// exemplar in its support, otherwise becomes a singleton exemplar.
Clustering extract_exemplars(const ApState& state, const SimilarityModel& model);

/// Dense affinity propagation baseline on -d^2 similarities.
Clustering dense_ap(const DistanceMatrix& d, std::optional<double> shared_preference,
                    const GapParams& params);

/// Sum of s(i, assignment[i]) with exemplars scored by their preference.
/// Throws InputError if an assignment leaves the support.
double net_similarity(const SimilarityModel& model, std::span<const std::size_t> assignment);

}  // namespace gap
