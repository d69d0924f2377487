#pragma once

#include <array>
#include <cstdint>

#include "suace/image.hpp"

namespace suace {

// Shannon entropy of the gray-level histogram, in bits, together with the
// histogram it was computed from.
struct EntropyReport {
    double entropy_bits = 0.0;
    std::array<std::uint64_t, 256> histogram{};
    std::uint64_t pixel_count = 0;
};

EntropyReport entropy(const GrayImage& img);

} // namespace suace
