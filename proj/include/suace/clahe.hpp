#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "suace/image.hpp"

namespace suace {

// clip_limit is normalized: the per-bin cap is
// clip_limit * (tile pixel count / 256), floored, never below 1.
struct ClaheParams {
    int tiles_x = 8;
    int tiles_y = 8;
    double clip_limit = 4.0;
};

void validate(const ClaheParams& p, int width, int height);

// Tile-based histogram equalization with clipped histograms and bilinear
// blending of the per-tile mappings.
GrayImage clahe_enhance(const GrayImage& img, const ClaheParams& params);

namespace detail {

// Cap each bin at clip_threshold and spread the removed mass uniformly:
// every bin gains excess/256, and the first excess%256 bins gain one more.
// Total mass is conserved exactly. Bins may exceed the cap again after the
// uniform refill; there is no second clipping pass.
void clip_histogram(std::array<std::uint32_t, 256>& hist, std::uint32_t clip_threshold);

// Equalization lookup from a histogram of `total` samples:
// lut[v] = round(255 * (cdf(v) - cdf_min) / (total - cdf_min)), where
// cdf_min is the cdf at the first occupied bin. A histogram whose mass sits
// in a single bin has a zero denominator; that degenerate mapping is
// defined as 255 everywhere.
std::array<std::uint8_t, 256> equalization_lut(const std::array<std::uint32_t, 256>& hist,
                                               std::uint64_t total);

// Tile edges for one axis: floor(i * extent / tiles), i = 0..tiles.
std::vector<int> tile_edges(int extent, int tiles);

} // namespace detail

} // namespace suace
