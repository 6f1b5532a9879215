#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "spatialvote/election.hpp"
#include "spatialvote/metrics.hpp"

namespace spatialvote {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, row 0 at the top

  std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel, row 0 at the top

  std::array<std::uint8_t, 3> at(int row, int col) const {
    const auto i = (static_cast<std::size_t>(row) * width + col) * 3;
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
};

// One pixel per cell: round(255 * (1 - y)) with y the arctan intensity, so
// frequent cells are dark. Image row 0 is the top (largest y) of the extent.
GrayImage histogram_image(const HistogramGrid& grid);
void render_histogram(const HistogramGrid& grid, const std::filesystem::path& path);

// Scatter plot of one election over [-3,3]^2: voters dark gray, candidates
// light gray, committee members as larger blue squares.
RgbImage sample_run_image(const Election& election, const Committee& committee, int size = 360);
void render_sample_run(const Election& election, const Committee& committee, const std::filesystem::path& path);

void write_pgm(const GrayImage& image, const std::filesystem::path& path);
void write_ppm(const RgbImage& image, const std::filesystem::path& path);

}  // namespace spatialvote
