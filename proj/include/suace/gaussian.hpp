#pragma once

#include <functional>
#include <vector>

#include "suace/image.hpp"

namespace suace {

// Low-frequency illumination estimate of an image: the Gaussian blur response
// carried at full precision, tagged with the sigma that produced it.
struct IlluminationMap {
    int width = 0;
    int height = 0;
    double sigma = 0.0;
    std::vector<double> samples;

    double at(int x, int y) const {
        return samples[static_cast<std::size_t>(y) * width + x];
    }
};

// Reference implementation: full 2-D truncated, renormalized Gaussian window
// evaluated per pixel in double precision, replicate borders. Quadratic in
// the kernel radius; exists to check the fast path, not to be fast.
IlluminationMap gaussian_blur_direct(const GrayImage& img, double sigma);

// Production implementation: separable two-pass convolution, accumulated in
// residual (pixel-difference) form so that constant images come out exactly
// constant and adding a constant offset to the input shifts the map by
// exactly that offset, bit for bit. Agrees with gaussian_blur_direct to
// better than 1e-3 intensity units.
IlluminationMap gaussian_blur_fast(const GrayImage& img, double sigma);

namespace detail {

// Truncation radius: 3 sigma rounded up (99.7% mass).
int gaussian_radius(double sigma);

// One-sided normalized 1-D taps, taps[0] = center; taps[0] + 2*sum(rest) = 1.
std::vector<double> gaussian_taps(double sigma);

// The fast path's core: S = blur(img) - img computed entirely from pixel
// differences in float32, so S is exactly 0 on constants and exactly
// offset-invariant. Values are then clamped to [min(img)-p, max(img)-p]
// per pixel, which keeps blur(img) = p + S inside [min(img), max(img)].
std::vector<float> blur_residual(const GrayImage& img, double sigma);

// Streaming form of blur_residual: hands each finished residual row to sink
// as (row index, pointer to width floats) instead of materializing a plane.
// Rows may arrive concurrently from worker threads, each row exactly once;
// the pointer is only valid during the call.
void residual_rows(const GrayImage& img, double sigma,
                   const std::function<void(int, const float*)>& sink);

// Plain separable double-precision blur of a real-valued plane (replicate
// borders). Used by consumers that re-smooth non-integer data; makes no
// bit-exactness promises.
std::vector<double> blur_plane(const std::vector<double>& plane,
                               int width, int height, double sigma);

} // namespace detail

} // namespace suace
