#include "suace/entropy.hpp"

#include <cmath>

namespace suace {

EntropyReport entropy(const GrayImage& img) {
    if (img.samples.empty())
        throw ParamError("entropy requires a non-empty image");
    EntropyReport rep;
    for (std::uint8_t v : img.samples)
        ++rep.histogram[v];
    rep.pixel_count = img.samples.size();
    double e = 0.0;
    const double n = static_cast<double>(rep.pixel_count);
    for (std::uint64_t c : rep.histogram) {
        if (c == 0)
            continue;
        double p = static_cast<double>(c) / n;
        e -= p * std::log2(p);
    }
    // -0.0 from a single occupied bin; keep the report sign-clean.
    rep.entropy_bits = e < 0.0 ? 0.0 : e;
    return rep;
}

} // namespace suace
