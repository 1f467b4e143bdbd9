#include "gap/clustering.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_map>

#include "gap/error.hpp"

namespace gap {

std::vector<std::size_t> Clustering::labels() const {
  std::unordered_map<std::size_t, std::size_t> id;
  for (std::size_t c = 0; c < exemplars.size(); ++c) id.emplace(exemplars[c], c);
  std::vector<std::size_t> out(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) out[i] = id.at(assignment[i]);
  return out;
}

void check_clustering(const Clustering& c) {
  const std::size_t n = c.assignment.size();
  std::vector<char> is_exemplar(n, 0);
  for (const auto e : c.exemplars) {
    if (e >= n) throw InputError("exemplar index out of range");
    if (c.assignment[e] != e) throw InputError("exemplar " + std::to_string(e) + " is not assigned to itself");
    is_exemplar[e] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (c.assignment[i] >= n || !is_exemplar[c.assignment[i]]) {
      throw InputError("node " + std::to_string(i) + " is assigned to a non-exemplar");
    }
  }
  auto distinct = c.assignment;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (c.k != c.exemplars.size() || c.k != distinct.size()) throw InputError("cluster count is inconsistent");
}

std::vector<std::size_t> encode_labels(std::span<const std::string> labels) {
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(ids.try_emplace(l, ids.size()).first->second);
  return out;
}

double error_rate(std::span<const std::size_t> clusters, std::span<const std::string> truth) {
  if (truth.size() != clusters.size()) throw UsageError("ground-truth labels must match the point count");
  if (clusters.empty()) return 0.0;
  // cluster -> (label -> count); std::map keeps labels sorted so the first
  // maximum is the lexicographically smallest.
  std::unordered_map<std::size_t, std::map<std::string, std::size_t>> counts;
  for (std::size_t i = 0; i < clusters.size(); ++i) ++counts[clusters[i]][truth[i]];
  std::size_t agree = 0;
  for (const auto& [cluster, by_label] : counts) {
    std::size_t best = 0;
    for (const auto& [label, count] : by_label) best = std::max(best, count);
    agree += best;
  }
  return static_cast<double>(clusters.size() - agree) / static_cast<double>(clusters.size());
}

double error_rate(const Clustering& c, std::span<const std::string> truth) {
  return error_rate(c.assignment, truth);
}

double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) throw InputError("partitions must have equal length");
  const std::size_t n = a.size();
  auto pairs = [](double x) { return x * (x - 1.0) / 2.0; };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
  std::unordered_map<std::size_t, std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    ++table[{a[i], b[i]}];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [cell, count] : table) index += pairs(static_cast<double>(count));
  for (const auto& [label, count] : rows) sum_rows += pairs(static_cast<double>(count));
  for (const auto& [label, count] : cols) sum_cols += pairs(static_cast<double>(count));
  const double total = pairs(static_cast<double>(n));
  const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  // Zero denominator only when both partitions are the same trivial one.
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double partition_agreement(const Clustering& c, std::span<const std::size_t> labels) {
  return adjusted_rand_index(c.assignment, labels);
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  return out;
}

}  // namespace

void export_exemplar_graph(const Clustering& c, const InTree& tree, const Dataset* data,
                           const std::filesystem::path& edges_path) {
  const std::size_t n = c.assignment.size();
  auto edges = open_for_write(edges_path);
  edges << "node,exemplar\n";
  for (std::size_t i = 0; i < n; ++i)
    if (c.assignment[i] != i) edges << i << ',' << c.assignment[i] << '\n';
  if (!edges) throw IoError("failed writing " + edges_path.string());

  auto nodes_path = edges_path;
  nodes_path.replace_filename(edges_path.stem().string() + "_nodes.csv");
  auto nodes = open_for_write(nodes_path);
  const bool planar = data && data->is_real() && data->dimension() == 2 && data->size() == n;
  nodes << "node,parent" << (planar ? ",x,y" : "") << ",cluster\n";
  const auto cluster = c.labels();
  for (std::size_t i = 0; i < n; ++i) {
    nodes << i << ',';
    if (i < tree.size() && tree.parent[i] != kNoParent) nodes << tree.parent[i];
    if (planar) nodes << ',' << data->real_points()[i][0] << ',' << data->real_points()[i][1];
    nodes << ',' << cluster[i] << '\n';
  }
  if (!nodes) throw IoError("failed writing " + nodes_path.string());
}

void write_labels_csv(std::span<const std::size_t> clusters, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "node,cluster\n";
  for (std::size_t i = 0; i < clusters.size(); ++i) out << i << ',' << clusters[i] << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace gap
