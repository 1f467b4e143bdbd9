#include "gap/affinity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gap/clustering.hpp"
#include "gap/error.hpp"
#include "parallel.hpp"

namespace gap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kJitterScale = 1e-12;

// Column view of the model: for every node k, the entries (i, k) with i != k.
struct Columns {
  std::vector<std::size_t> offset;
  std::vector<std::size_t> entry;
};

Columns build_columns(const SimilarityModel& model) {
  const std::size_t n = model.size();
  Columns cols;
  cols.offset.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t e = model.row_begin(i) + 1; e < model.row_end(i); ++e) ++cols.offset[model.candidates()[e] + 1];
  for (std::size_t k = 0; k < n; ++k) cols.offset[k + 1] += cols.offset[k];
  cols.entry.resize(cols.offset[n]);
  std::vector<std::size_t> fill(cols.offset.begin(), cols.offset.end() - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t e = model.row_begin(i) + 1; e < model.row_end(i); ++e)
      cols.entry[fill[model.candidates()[e]]++] = e;
  return cols;
}

// Nodes with shorter rows first. On belief-graph models this visits
// ancestors before descendants; on dense models it is index order.
std::vector<std::size_t> extraction_order(const SimilarityModel& model) {
  std::vector<std::size_t> order(model.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return model.row_end(a) - model.row_begin(a) < model.row_end(b) - model.row_begin(b);
  });
  return order;
}

std::vector<char> exemplar_flags(const SimilarityModel& model, const std::vector<double>& r,
                                 const std::vector<double>& a) {
  std::vector<char> flags(model.size());
  for (std::size_t k = 0; k < model.size(); ++k) {
    const std::size_t self = model.row_begin(k);
    flags[k] = a[self] + r[self] > 0.0;
  }
  return flags;
}

std::vector<std::size_t> assign(const SimilarityModel& model, const std::vector<double>& r,
                                const std::vector<double>& a, std::vector<char>& is_exemplar,
                                const std::vector<std::size_t>& order) {
  const auto& cand = model.candidates();
  const auto& sim = model.values();
  std::vector<std::size_t> assignment(model.size());
  for (const std::size_t i : order) {
    if (is_exemplar[i]) {
      assignment[i] = i;
      continue;
    }
    std::size_t best = model.row_begin(i);
    for (std::size_t e = best + 1; e < model.row_end(i); ++e)
      if (a[e] + r[e] > a[best] + r[best]) best = e;
    if (cand[best] != i && is_exemplar[cand[best]]) {
      assignment[i] = cand[best];
      continue;
    }
    std::size_t fallback = model.row_end(i);
    for (std::size_t e = model.row_begin(i) + 1; e < model.row_end(i); ++e) {
      if (is_exemplar[cand[e]] && (fallback == model.row_end(i) || sim[e] > sim[fallback])) fallback = e;
    }
    if (fallback != model.row_end(i)) {
      assignment[i] = cand[fallback];
    } else {
      is_exemplar[i] = 1;
      assignment[i] = i;
    }
  }
  return assignment;
}

}  // namespace

SimilarityModel SimilarityModel::from_rows(const std::vector<Row>& arcs, std::vector<double> preference) {
  const std::size_t n = arcs.size();
  if (preference.size() != n) throw InputError("need one preference per node");
  SimilarityModel m;
  m.offset_.reserve(n + 1);
  m.offset_.push_back(0);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    m.candidate_.push_back(i);
    m.similarity_.push_back(preference[i]);
    for (const auto& [k, s] : arcs[i]) {
      if (k >= n || k == i || seen[k]) throw InputError("invalid or duplicate candidate in row " + std::to_string(i));
      seen[k] = 1;
      m.candidate_.push_back(k);
      m.similarity_.push_back(s);
    }
    for (const auto& arc : arcs[i]) seen[arc.first] = 0;
    m.offset_.push_back(m.candidate_.size());
  }
  return m;
}

SimilarityModel SimilarityModel::from_dense(std::size_t n, std::span<const double> s) {
  if (s.size() != n * n) throw InputError("dense similarity needs n*n values");
  SimilarityModel m;
  m.offset_.reserve(n + 1);
  m.candidate_.reserve(n * n);
  m.similarity_.reserve(n * n);
  m.offset_.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    m.candidate_.push_back(i);
    m.similarity_.push_back(s[i * n + i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      m.candidate_.push_back(j);
      m.similarity_.push_back(s[i * n + j]);
    }
    m.offset_.push_back(m.candidate_.size());
  }
  return m;
}

std::optional<double> SimilarityModel::similarity(std::size_t i, std::size_t k) const {
  for (std::size_t e = offset_[i]; e < offset_[i + 1]; ++e)
    if (candidate_[e] == k) return similarity_[e];
  return std::nullopt;
}

SimilarityModel build_similarity_model(const BeliefGraph& bg, const GapParams& params) {
  params.validate();
  const std::size_t n = bg.size();
  SimilarityModel m;
  m.offset_.reserve(n + 1);
  m.candidate_.reserve(bg.edge_count() + n);
  m.similarity_.reserve(bg.edge_count() + n);
  std::vector<double> pref_sum(n, 0.0);
  const bool outgoing = params.preference_rule == PreferenceRule::outgoing;
  m.offset_.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    m.candidate_.push_back(i);
    m.similarity_.push_back(0.0);  // preference, filled below
    const auto anc = bg.ancestors(i);
    const auto w = bg.weights(i);
    for (std::size_t e = 0; e < anc.size(); ++e) {
      const double s = std::exp(-w[e] / params.sigma);
      m.candidate_.push_back(anc[e]);
      m.similarity_.push_back(s);
      pref_sum[outgoing ? i : anc[e]] += s;
    }
    m.offset_.push_back(m.candidate_.size());
  }
  for (std::size_t i = 0; i < n; ++i) m.similarity_[m.offset_[i]] = params.alpha * pref_sum[i];
  return m;
}

double median_similarity(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) return 0.0;
  std::vector<double> s;
  s.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s.push_back(-d(i, j) * d(i, j));
  const std::size_t mid = s.size() / 2;
  std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(mid), s.end());
  const double upper = s[mid];
  if (s.size() % 2 == 1) return upper;
  const double lower = *std::max_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

SimilarityModel dense_similarity_model(const DistanceMatrix& d, std::optional<double> shared_preference) {
  const std::size_t n = d.size();
  const double pref = shared_preference ? *shared_preference : median_similarity(d);
  std::vector<double> s(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i * n + j] = i == j ? pref : -d(i, j) * d(i, j);
  return SimilarityModel::from_dense(n, s);
}

double net_similarity(const SimilarityModel& model, std::span<const std::size_t> assignment) {
  if (assignment.size() != model.size()) throw InputError("assignment size does not match model");
  double net = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const auto s = model.similarity(i, assignment[i]);
    if (!s) throw InputError("node " + std::to_string(i) + " assigned outside its support");
    net += *s;
  }
  return net;
}

ApState propagate(const SimilarityModel& model, const GapParams& params) {
  params.validate_message_passing();
  const std::size_t n = model.size();
  const std::size_t entries = model.entry_count();
  const double lambda = params.damping;
  std::vector<double> s = model.values();
  if (params.jitter) {
    std::mt19937_64 rng(params.seed);
    for (double& v : s) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      v += kJitterScale * std::abs(v) * (u - 0.5);
    }
  }

  const Columns cols = build_columns(model);
  const auto order = extraction_order(model);

  ApState st;
  st.responsibility.assign(entries, 0.0);
  st.availability.assign(entries, 0.0);
  st.messages_per_iteration = 2 * entries;
  auto& r = st.responsibility;
  auto& a = st.availability;

  std::vector<char> previous;
  const auto start = std::chrono::steady_clock::now();
  for (int it = 1; it <= params.max_iterations; ++it) {
    detail::parallel_for(n, params.threads, [&](std::size_t i) {
      const std::size_t b = model.row_begin(i), end = model.row_end(i);
      double max1 = kNegInf, max2 = kNegInf;
      std::size_t arg = b;
      for (std::size_t e = b; e < end; ++e) {
        const double v = a[e] + s[e];
        if (v > max1) {
          max2 = max1;
          max1 = v;
          arg = e;
        } else if (v > max2) {
          max2 = v;
        }
      }
      for (std::size_t e = b; e < end; ++e) {
        const double computed = s[e] - (e == arg ? max2 : max1);
        r[e] = lambda * r[e] + (1.0 - lambda) * computed;
      }
    });

    detail::parallel_for(n, params.threads, [&](std::size_t k) {
      double support = 0.0;
      for (std::size_t c = cols.offset[k]; c < cols.offset[k + 1]; ++c) support += std::max(0.0, r[cols.entry[c]]);
      const std::size_t self = model.row_begin(k);
      const double rkk = r[self];
      for (std::size_t c = cols.offset[k]; c < cols.offset[k + 1]; ++c) {
        const std::size_t e = cols.entry[c];
        const double computed = std::min(0.0, rkk + support - std::max(0.0, r[e]));
        a[e] = lambda * a[e] + (1.0 - lambda) * computed;
      }
      a[self] = lambda * a[self] + (1.0 - lambda) * support;
    });

    st.iterations = it;
    st.message_updates += st.messages_per_iteration;

    auto flags = exemplar_flags(model, r, a);
    st.stable_iterations = (flags == previous) ? st.stable_iterations + 1 : 1;
    const bool any = std::find(flags.begin(), flags.end(), 1) != flags.end();

    if (params.trace) {
      auto tmp = flags;
      const auto assignment = assign(model, r, a, tmp, order);
      st.trace.push_back({it, net_similarity(model, assignment),
                          static_cast<std::size_t>(std::count(tmp.begin(), tmp.end(), 1))});
    }
    previous = std::move(flags);
    if (any && st.stable_iterations >= params.convergence_window) {
      st.converged = true;
      break;
    }
  }
  st.mp_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (std::size_t k = 0; k < n; ++k)
    if (previous[k]) st.exemplars.push_back(k);
  if (!st.converged) {
    st.warnings.push_back("message passing did not converge within " + std::to_string(params.max_iterations) +
                          " iterations");
  }
  return st;
}

ApState sparse_ap(const SimilarityModel& model, const GapParams& params) { return propagate(model, params); }

Clustering extract_exemplars(const ApState& state, const SimilarityModel& model) {
  if (state.responsibility.size() != model.entry_count() || state.availability.size() != model.entry_count()) {
    throw InputError("message state does not match the similarity model");
  }
  auto flags = exemplar_flags(model, state.responsibility, state.availability);
  Clustering c;
  c.assignment = assign(model, state.responsibility, state.availability, flags, extraction_order(model));
  for (std::size_t k = 0; k < model.size(); ++k)
    if (flags[k]) c.exemplars.push_back(k);
  c.k = c.exemplars.size();
  c.converged = state.converged;
  c.iterations = state.iterations;
  c.mp_seconds = state.mp_seconds;
  return c;
}

Clustering dense_ap(const DistanceMatrix& d, std::optional<double> shared_preference, const GapParams& params) {
  const auto model = dense_similarity_model(d, shared_preference);
  return extract_exemplars(propagate(model, params), model);
}

}  // namespace gap
