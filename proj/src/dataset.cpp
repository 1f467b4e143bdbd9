#include "gap/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "gap/error.hpp"

namespace gap {

namespace {

template <typename Rows>
void check_width(const Rows& rows) {
  if (rows.empty()) return;
  const std::size_t m = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) {
      throw InputError("point " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " features, expected " + std::to_string(m));
    }
  }
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  if (line.find(',') != std::string::npos) {
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
  } else {
    std::istringstream in(line);
    std::string field;
    while (in >> field) fields.push_back(field);
  }
  return fields;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

Dataset::Dataset(RealRows points, std::optional<std::vector<std::string>> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  check_width(std::get<RealRows>(points_));
  check_labels();
}

Dataset::Dataset(CategoricalRows points, std::optional<std::vector<std::string>> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  check_width(std::get<CategoricalRows>(points_));
  check_labels();
}

void Dataset::check_labels() const {
  if (labels_ && labels_->size() != size()) {
    throw InputError("label count " + std::to_string(labels_->size()) + " does not match point count " +
                     std::to_string(size()));
  }
}

std::size_t Dataset::size() const noexcept {
  return std::visit([](const auto& rows) { return rows.size(); }, points_);
}

std::size_t Dataset::dimension() const noexcept {
  return std::visit([](const auto& rows) { return rows.empty() ? std::size_t{0} : rows.front().size(); },
                    points_);
}

const RealRows& Dataset::real_points() const {
  if (!is_real()) throw InputError("dataset has categorical features, real-valued expected");
  return std::get<RealRows>(points_);
}

const CategoricalRows& Dataset::categorical_points() const {
  if (!is_categorical()) throw InputError("dataset has real-valued features, categorical expected");
  return std::get<CategoricalRows>(points_);
}

Dataset Dataset::select(const std::vector<std::size_t>& indices) const {
  std::optional<std::vector<std::string>> labels;
  if (labels_) {
    labels.emplace();
    for (auto i : indices) labels->push_back(labels_->at(i));
  }
  return std::visit(
      [&](const auto& rows) {
        std::decay_t<decltype(rows)> picked;
        picked.reserve(indices.size());
        for (auto i : indices) picked.push_back(rows.at(i));
        return Dataset(std::move(picked), std::move(labels));
      },
      points_);
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  auto in = open(path);
  RealRows rows;
  std::vector<std::string> labels;
  std::size_t width = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto fields = split_fields(content);
    if (rows.empty()) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()),
                       line_no);
    }

    std::size_t label_at = fields.size();
    if (options.has_labels) {
      const int col = options.label_column < 0 ? static_cast<int>(fields.size()) + options.label_column
                                               : options.label_column;
      if (col < 0 || col >= static_cast<int>(fields.size())) {
        throw ParseError("label column " + std::to_string(options.label_column) + " out of range", line_no);
      }
      label_at = static_cast<std::size_t>(col);
      labels.push_back(fields[label_at]);
    }

    std::vector<double> coords;
    coords.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == label_at) continue;
      const std::string& f = fields[c];
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
        throw ParseError("column " + std::to_string(c + 1) + ": '" + f + "' is not a number", line_no);
      }
      coords.push_back(value);
    }
    if (coords.empty()) throw ParseError("row has no coordinate columns", line_no);
    rows.push_back(std::move(coords));
  }
  if (rows.empty()) throw ParseError("no data rows in " + path.string(), 0);

  std::optional<std::vector<std::string>> maybe_labels;
  if (options.has_labels) maybe_labels = std::move(labels);
  return Dataset(std::move(rows), std::move(maybe_labels));
}

Dataset load_mushroom(const std::filesystem::path& path) {
  auto in = open(path);
  CategoricalRows rows;
  std::vector<std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  std::size_t record = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty()) continue;
    ++record;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream fs(content);
    while (std::getline(fs, field, ',')) fields.push_back(trim(field));
    if (content.back() == ',') fields.emplace_back();
    if (fields.size() != kMushroomAttributes + 1) {
      throw ParseError("record " + std::to_string(record) + " has " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(kMushroomAttributes + 1),
                       line_no);
    }
    labels.push_back(std::move(fields.front()));
    rows.emplace_back(std::make_move_iterator(fields.begin() + 1), std::make_move_iterator(fields.end()));
  }
  if (rows.empty()) throw ParseError("no records in " + path.string(), 0);
  return Dataset(std::move(rows), std::move(labels));
}

std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t count, std::uint64_t seed) {
  count = std::min(count, n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates on raw engine output: the draw must not depend on the
  // standard library's distribution implementation.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace gap
