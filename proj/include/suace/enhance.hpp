#pragma once

#include "suace/gaussian.hpp"
#include "suace/image.hpp"

namespace suace {

// Tuning knobs for the adaptive stretch. sigma controls how local the
// illumination estimate is; d is the width of the input window stretched to
// the output range; k is the output range; split places that fraction of d
// below the illumination level.
struct SuaceParams {
    double sigma = 9.0;
    double d = 21.0;
    int k = 255;
    double split = 0.5;
};

struct Bounds {
    double a = 0.0; // inputs below a map to 0
    double b = 0.0; // inputs at or above b map to k
};

void validate(const SuaceParams& p);

// Reference range around one illumination value: a = g - split*d, b = a + d.
// The width tracks d exactly for representable arithmetic (the defaults) and
// within one rounding of g otherwise.
Bounds select_bounds(double g_value, const SuaceParams& p);

// Scalar reference transfer: the per-pixel mapping applied by enhance,
// usable on its own for tests and tooling. Rounds half away from zero,
// clamps to [0, k].
std::uint8_t stretch_value(double intensity, double g_value, const SuaceParams& p);

// SUACE: estimate illumination with the fast separable blur, then stretch
// each pixel's intensity from [a(g), b(g)] to [0, k].
GrayImage enhance(const GrayImage& img, const SuaceParams& params);

} // namespace suace
