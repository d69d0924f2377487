#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "suace/errors.hpp"

namespace suace {

// 8-bit single-channel image, row-major, tightly packed.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> samples;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h),
          samples(static_cast<std::size_t>(check_dims(w, h)) , fill) {}

    std::uint8_t& at(int x, int y) {
        return samples[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(int x, int y) const {
        return samples[static_cast<std::size_t>(y) * width + x];
    }
    std::size_t pixel_count() const { return samples.size(); }

    bool operator==(const GrayImage&) const = default;

private:
    static std::size_t check_dims(int w, int h) {
        if (w <= 0 || h <= 0)
            throw ParamError("image dimensions must be positive");
        return static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    }
};

} // namespace suace
