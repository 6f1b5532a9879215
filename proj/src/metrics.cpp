#include "spatialvote/metrics.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "spatialvote/errors.hpp"

namespace spatialvote {

HistogramGrid::HistogramGrid(GridGeometry geometry, double epsilon)
    : geometry_(geometry), epsilon_(epsilon) {
  if (geometry_.cells <= 0 || !(geometry_.hi > geometry_.lo)) throw InputError("invalid grid geometry");
  if (!(epsilon_ > 0.0)) throw InputError("histogram epsilon must be positive");
  counts_.assign(static_cast<std::size_t>(geometry_.cells) * static_cast<std::size_t>(geometry_.cells), 0);
}

std::pair<int, int> HistogramGrid::cell_of(const Point& p, bool* outside) const {
  // Scale by cells/width (20 per unit for the default) so that grid lines such
  // as 0.0 land exactly on cell boundaries.
  const double scale = geometry_.cells / (geometry_.hi - geometry_.lo);
  bool clamped = false;
  auto axis = [&](double v) {
    if (v < geometry_.lo || v > geometry_.hi) clamped = true;
    const double raw = std::floor((v - geometry_.lo) * scale);
    return static_cast<int>(std::clamp(raw, 0.0, static_cast<double>(geometry_.cells - 1)));
  };
  const int col = axis(p.x);
  const int row = axis(p.y);
  if (outside) *outside = clamped;
  return {row, col};
}

Point HistogramGrid::cell_center(int row, int col) const {
  const double h = geometry_.cell_size();
  return {geometry_.lo + (col + 0.5) * h, geometry_.lo + (row + 0.5) * h};
}

void HistogramGrid::add(const Point& p) {
  bool outside = false;
  const auto [row, col] = cell_of(p, &outside);
  ++counts_[index(row, col)];
  ++total_;
  if (outside) ++clamped_;
}

void HistogramGrid::set(int row, int col, std::uint64_t count) {
  auto& cell = counts_[index(row, col)];
  total_ = total_ - cell + count;
  cell = count;
}

void accumulate_histogram(HistogramGrid& grid, std::span<const Point> winner_points) {
  for (const Point& p : winner_points) grid.add(p);
}

HistogramGrid merge_histograms(const HistogramGrid& a, const HistogramGrid& b) {
  if (!(a.geometry() == b.geometry()) || a.epsilon() != b.epsilon()) {
    throw InputError("merge_histograms: grid geometry or epsilon mismatch");
  }
  HistogramGrid out = a;
  for (std::size_t i = 0; i < out.counts_.size(); ++i) out.counts_[i] += b.counts_[i];
  out.total_ += b.total_;
  out.clamped_ += b.clamped_;
  return out;
}

double intensity_transform(double frequency, double epsilon, double total) {
  if (!(epsilon > 0.0) || !(total > 0.0)) throw InputError("intensity_transform needs epsilon > 0 and T > 0");
  return std::atan(frequency / (epsilon * total)) / (std::numbers::pi / 2.0);
}

double variance_of_counts(std::span<const int> counts) {
  if (counts.empty()) throw InputError("variance of an empty sequence");
  const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / static_cast<double>(counts.size());
  double ss = 0.0;
  for (int c : counts) ss += (c - mean) * (c - mean);
  return ss / static_cast<double>(counts.size());
}

double quadrant_variance(std::span<const Point> committee_points) {
  if (committee_points.empty()) throw InputError("quadrant_variance needs a nonempty committee");
  std::array<int, 4> counts{};
  for (const Point& p : committee_points) {
    const int q = (p.x >= 0.0 ? 0 : 1) + (p.y >= 0.0 ? 0 : 2);
    ++counts[static_cast<std::size_t>(q)];
  }
  return variance_of_counts(counts);
}

double QuadrantStats::mean() const {
  if (samples.empty()) return 0.0;
  return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

double QuadrantStats::stddev() const {
  if (samples.size() < 2) return 0.0;
  const double mu = mean();
  double ss = 0.0;
  for (double s : samples) ss += (s - mu) * (s - mu);
  return std::sqrt(ss / static_cast<double>(samples.size() - 1));
}

void write_grid_csv(const HistogramGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (int r = 0; r < grid.cells(); ++r) {
    for (int c = 0; c < grid.cells(); ++c) {
      if (c) out << ',';
      out << grid.at(r, c);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

HistogramGrid read_grid_csv(const std::filesystem::path& path, GridGeometry geometry, double epsilon) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  HistogramGrid grid(geometry, epsilon);
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row >= grid.cells()) throw InputError(path.string() + ": too many rows");
    std::istringstream cells(line);
    std::string field;
    int col = 0;
    while (std::getline(cells, field, ',')) {
      if (col >= grid.cells()) throw InputError(path.string() + ": too many columns in row " + std::to_string(row));
      try {
        std::size_t used = 0;
        const auto value = std::stoull(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        grid.set(row, col, value);
      } catch (const std::exception&) {
        throw InputError(path.string() + ": bad count '" + field + "' in row " + std::to_string(row));
      }
      ++col;
    }
    if (col != grid.cells()) throw InputError(path.string() + ": row " + std::to_string(row) + " has wrong width");
    ++row;
  }
  if (row != grid.cells()) throw InputError(path.string() + ": expected " + std::to_string(grid.cells()) + " rows");
  return grid;
}

}  // namespace spatialvote
