#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spatialvote/election.hpp"

namespace spatialvote {

// Square extent [lo, hi]^2 split into cells x cells half-open squares.
struct GridGeometry {
  double lo = -3.0;
  double hi = 3.0;
  int cells = 120;

  double cell_size() const { return (hi - lo) / cells; }
  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

inline constexpr double kDefaultEpsilon = 0.0004;

// Winner-position frequencies. Cell (row, col) covers
// [lo + col*h, lo + (col+1)*h) x [lo + row*h, lo + (row+1)*h); row 0 is the
// bottom of the extent. The upper boundary hi maps into the last cell.
class HistogramGrid {
 public:
  explicit HistogramGrid(GridGeometry geometry = {}, double epsilon = kDefaultEpsilon);

  const GridGeometry& geometry() const { return geometry_; }
  double epsilon() const { return epsilon_; }
  int cells() const { return geometry_.cells; }

  std::uint64_t at(int row, int col) const { return counts_[index(row, col)]; }
  std::uint64_t& at(int row, int col) { return counts_[index(row, col)]; }
  std::span<const std::uint64_t> counts() const { return counts_; }

  // Sum of all frequencies (T).
  std::uint64_t total() const { return total_; }
  // Points that fell outside the extent and were clamped to a boundary cell.
  std::uint64_t clamped() const { return clamped_; }

  // Cell of point p; out-of-extent coordinates are clamped. Sets `outside` when clamping happened.
  std::pair<int, int> cell_of(const Point& p, bool* outside = nullptr) const;
  Point cell_center(int row, int col) const;

  void add(const Point& p);
  void set(int row, int col, std::uint64_t count);

  friend bool operator==(const HistogramGrid&, const HistogramGrid&) = default;
  friend HistogramGrid merge_histograms(const HistogramGrid& a, const HistogramGrid& b);

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(geometry_.cells) + static_cast<std::size_t>(col);
  }

  GridGeometry geometry_;
  double epsilon_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t clamped_ = 0;
};

void accumulate_histogram(HistogramGrid& grid, std::span<const Point> winner_points);

// Cellwise sum; geometry and epsilon must match.
HistogramGrid merge_histograms(const HistogramGrid& a, const HistogramGrid& b);

// y = (2/pi) * atan(x / (epsilon * T)), in [0, 1).
double intensity_transform(double frequency, double epsilon, double total);

// Population variance of the four quadrant counts (x>=0 / x<0 crossed with y>=0 / y<0).
double quadrant_variance(std::span<const Point> committee_points);
double variance_of_counts(std::span<const int> counts);

struct QuadrantStats {
  std::vector<double> samples;

  void add(double v) { samples.push_back(v); }
  std::size_t size() const { return samples.size(); }
  double mean() const;
  // Sample standard deviation (n - 1); 0 for fewer than two samples.
  double stddev() const;
};

// 120 lines of 120 comma-separated integer counts, row 0 (bottom) first.
void write_grid_csv(const HistogramGrid& grid, const std::filesystem::path& path);
HistogramGrid read_grid_csv(const std::filesystem::path& path, GridGeometry geometry = {},
                            double epsilon = kDefaultEpsilon);

}  // namespace spatialvote
