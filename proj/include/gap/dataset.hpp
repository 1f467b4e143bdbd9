#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gap {

using RealRows = std::vector<std::vector<double>>;
using CategoricalRows = std::vector<std::vector<std::string>>;

/// A set of points with either real coordinates or categorical attributes,
/// plus optional ground-truth labels.
class Dataset {
 public:
  Dataset() = default;

  /// Throws InputError if rows differ in width or labels have the wrong length.
  explicit Dataset(RealRows points, std::optional<std::vector<std::string>> labels = {});
  explicit Dataset(CategoricalRows points, std::optional<std::vector<std::string>> labels = {});

  std::size_t size() const noexcept;
  std::size_t dimension() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  bool is_real() const noexcept { return std::holds_alternative<RealRows>(points_); }
  bool is_categorical() const noexcept { return std::holds_alternative<CategoricalRows>(points_); }

  const RealRows& real_points() const;
  const CategoricalRows& categorical_points() const;

  const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return labels_.has_value(); }

  /// Rows at `indices`, in the given order, labels carried along.
  Dataset select(const std::vector<std::size_t>& indices) const;

 private:
  void check_labels() const;

  std::variant<RealRows, CategoricalRows> points_;
  std::optional<std::vector<std::string>> labels_;
};

struct CsvOptions {
  bool has_labels = false;
  /// Column holding the label when `has_labels`; negative counts from the end.
  int label_column = -1;
};

/// Reads comma- or whitespace-delimited numeric rows. Blank lines and lines
/// starting with '#' are skipped.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Reads the UCI agaricus-lepiota format: class label then 22 attributes.
/// "?" is kept as an ordinary category value.
Dataset load_mushroom(const std::filesystem::path& path);

inline constexpr std::size_t kMushroomAttributes = 22;

/// Deterministic subsample of `count` distinct indices (sorted ascending).
std::vector<std::size_t> subsample_indices(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace gap
