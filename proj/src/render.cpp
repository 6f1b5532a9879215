#include "spatialvote/render.hpp"

#include <cmath>
#include <fstream>

#include "spatialvote/errors.hpp"

namespace spatialvote {
namespace {

constexpr double kPlotLo = -3.0;
constexpr double kPlotHi = 3.0;
constexpr std::array<std::uint8_t, 3> kVoterColor{80, 80, 80};
constexpr std::array<std::uint8_t, 3> kCandidateColor{190, 190, 190};
constexpr std::array<std::uint8_t, 3> kWinnerColor{30, 70, 220};

void draw_dot(RgbImage& image, const Point& p, int radius, const std::array<std::uint8_t, 3>& color) {
  const double scale = image.width / (kPlotHi - kPlotLo);
  const int col = static_cast<int>(std::floor((p.x - kPlotLo) * scale));
  const int row = static_cast<int>(std::floor((kPlotHi - p.y) * scale));
  for (int r = row - radius; r <= row + radius; ++r) {
    for (int c = col - radius; c <= col + radius; ++c) {
      if (r < 0 || c < 0 || r >= image.height || c >= image.width) continue;
      const auto i = (static_cast<std::size_t>(r) * image.width + c) * 3;
      std::copy(color.begin(), color.end(), image.rgb.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
}

std::ofstream open_binary(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

GrayImage histogram_image(const HistogramGrid& grid) {
  const int n = grid.cells();
  GrayImage image{n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 255)};
  if (grid.total() == 0) return image;
  const double total = static_cast<double>(grid.total());
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const double y = intensity_transform(static_cast<double>(grid.at(row, col)), grid.epsilon(), total);
      const auto value = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - y)));
      image.pixels[static_cast<std::size_t>(n - 1 - row) * n + col] = value;
    }
  }
  return image;
}

void render_histogram(const HistogramGrid& grid, const std::filesystem::path& path) {
  write_pgm(histogram_image(grid), path);
}

RgbImage sample_run_image(const Election& election, const Committee& committee, int size) {
  if (!election.has_points()) throw InputError("sample run rendering needs an election with point data");
  RgbImage image{size, size, std::vector<std::uint8_t>(static_cast<std::size_t>(size) * size * 3, 255)};
  const auto candidates = election.candidate_points();
  for (const Point& p : candidates) draw_dot(image, p, 1, kCandidateColor);
  for (const Point& p : election.voter_points()) draw_dot(image, p, 1, kVoterColor);
  for (CandidateId c : committee.members()) {
    if (c >= static_cast<CandidateId>(candidates.size())) throw InputError("committee member out of range");
    draw_dot(image, candidates[static_cast<std::size_t>(c)], 3, kWinnerColor);
  }
  return image;
}

void render_sample_run(const Election& election, const Committee& committee, const std::filesystem::path& path) {
  write_ppm(sample_run_image(election, committee), path);
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
  auto out = open_binary(path);
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void write_ppm(const RgbImage& image, const std::filesystem::path& path) {
  auto out = open_binary(path);
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.rgb.data()), static_cast<std::streamsize>(image.rgb.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace spatialvote
