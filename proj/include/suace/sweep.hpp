#pragma once

#include <vector>

#include "suace/enhance.hpp"
#include "suace/image.hpp"

namespace suace {

// Where one (sigma, d) combination landed in the montage grid.
struct SweepCell {
    int row = 0; // sigma index
    int col = 0; // d index
    double sigma = 0.0;
    double d = 0.0;
};

struct SweepResult {
    GrayImage montage; // |sigmas| tile rows by |ds| tile columns, abutting
    int cell_width = 0;
    int cell_height = 0;
    std::vector<SweepCell> cells; // row-major
};

// Runs enhance once per (sigma, d) pair, keeping base's k and split, and
// packs the outputs into a grid. Rows sweep sigma, columns sweep d. Empty
// lists throw ParamError; parameter validation is the same as enhance's.
SweepResult sweep_montage(const GrayImage& img, const std::vector<double>& sigmas,
                          const std::vector<double>& ds, const SuaceParams& base);

} // namespace suace
