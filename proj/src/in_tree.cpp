#include "gap/in_tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "gap/error.hpp"

namespace gap {

InTree build_in_tree(const DistanceMatrix& d, const PotentialField& field) {
  const std::size_t n = d.size();
  if (field.size() != n) throw InputError("potential field and distance matrix sizes differ");
  InTree tree;
  tree.parent.assign(n, kNoParent);
  tree.edge_length.assign(n, 0.0);
  tree.depth.assign(n, 0);
  if (n == 0) return tree;

  tree.order = field.ordered_nodes();
  tree.root = tree.order.front();
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[tree.order[r]] = r;

  for (std::size_t i = 0; i < n; ++i) {
    if (i == tree.root) continue;
    const auto row = d.row(i);
    std::size_t best = kNoParent;
    double best_d = 0.0;
    // Index order scan with strict '<' keeps the smallest index on ties.
    for (std::size_t k = 0; k < n; ++k) {
      if (rank[k] >= rank[i]) continue;
      if (best == kNoParent || row[k] < best_d) {
        best = k;
        best_d = row[k];
      }
    }
    tree.parent[i] = best;
    tree.edge_length[i] = best_d;
  }
  for (std::size_t r = 1; r < n; ++r) {
    const std::size_t i = tree.order[r];
    tree.depth[i] = tree.depth[tree.parent[i]] + 1;
  }
  return tree;
}

std::vector<std::size_t> component_labels(const InTree& tree, const std::vector<bool>& cut_nodes) {
  const std::size_t n = tree.size();
  std::vector<std::size_t> head(n);
  for (const std::size_t i : tree.order) {
    head[i] = (i == tree.root || cut_nodes[i]) ? i : head[tree.parent[i]];
  }
  std::vector<std::size_t> label(n);
  std::vector<std::size_t> id_of_head(n, kNoParent);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& id = id_of_head[head[i]];
    if (id == kNoParent) id = next++;
    label[i] = id;
  }
  return label;
}

namespace {

void check_cut_count(const InTree& tree, std::size_t k) {
  if (k > tree.edge_count()) {
    throw ParameterError("cannot cut " + std::to_string(k) + " edges from a tree with " +
                         std::to_string(tree.edge_count()));
  }
}

// Top k non-root nodes by descending score, ties by lower index.
std::vector<bool> top_k(const InTree& tree, const std::vector<double>& score, std::size_t k) {
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < tree.size(); ++i)
    if (i != tree.root) nodes.push_back(i);
  std::stable_sort(nodes.begin(), nodes.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  std::vector<bool> cut(tree.size(), false);
  for (std::size_t r = 0; r < k; ++r) cut[nodes[r]] = true;
  return cut;
}

}  // namespace

std::vector<std::size_t> k_cut(const InTree& tree, std::size_t k) {
  check_cut_count(tree, k);
  return component_labels(tree, top_k(tree, tree.edge_length, k));
}

std::vector<std::size_t> k_dcc_cut(const InTree& tree, const PotentialField& field, std::size_t k) {
  check_cut_count(tree, k);
  std::vector<double> product(tree.size());
  for (std::size_t i = 0; i < tree.size(); ++i) product[i] = std::abs(field.p[i]) * tree.edge_length[i];
  return component_labels(tree, top_k(tree, product, k));
}

std::vector<DecisionGraphPoint> decision_graph(const InTree& tree, const PotentialField& field) {
  std::vector<DecisionGraphPoint> points;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (i == tree.root) continue;
    const double mag = std::abs(field.p[i]);
    points.push_back({i, mag, tree.edge_length[i], mag * tree.edge_length[i]});
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& a, const auto& b) { return a.product > b.product; });
  return points;
}

void write_decision_graph_csv(const std::vector<DecisionGraphPoint>& points,
                              const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  out << "node,abs_potential,edge_length,product\n";
  for (const auto& p : points) {
    out << p.node << ',' << p.potential_magnitude << ',' << p.edge_length << ',' << p.product << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace gap
