#pragma once

#include <complex>
#include <vector>

#include "suace/image.hpp"

namespace suace {

// Two-stage baseline: histogram modification (blend toward a uniform
// histogram by weight alpha, then equalize), followed by homomorphic
// filtering (log -> frequency-domain high-frequency emphasis -> exp).
struct HmfilParams {
    double alpha = 0.95;
    double gamma_low = 0.5;
    double gamma_high = 1.5;
    double cutoff = 0.05; // high-pass cutoff D0 as a fraction of the image diagonal
};

void validate(const HmfilParams& p);

GrayImage hmfil_enhance(const GrayImage& img, const HmfilParams& params);

namespace detail {

// Stage 1. Blended histogram: alpha*h(n) + (1-alpha)*(N/256) per bin, then
// the usual cdf equalization lookup built from the blended (real-valued)
// histogram.
GrayImage histogram_modify(const GrayImage& img, double alpha);

// Stage 2. out = expm1(IFFT(H . FFT(log1p(img)))) cropped and rescaled
// affinely to [0,255] (a flat result is clamped/rounded as-is). The image is
// replicate-padded to the next power of two per dimension before the
// transform. D0 = cutoff * diagonal of the ORIGINAL (uncropped) image.
GrayImage homomorphic_stage(const GrayImage& img, double gamma_low,
                            double gamma_high, double cutoff);

// Transfer gain at integer frequency offsets (fu, fv), distances measured
// on the padded grid: H = (gh - gl)*(1 - exp(-D^2/(2*D0^2))) + gl.
double filter_gain(double fu, double fv, double d0, double gamma_low, double gamma_high);

// Iterative radix-2 transform, in place; n must be a power of two. No
// scaling on either direction; callers divide by the total element count
// after a full inverse pass.
void fft_1d(std::complex<double>* data, int n, bool inverse);

// Row-column 2-D transform over a width x height row-major buffer.
void fft_2d(std::vector<std::complex<double>>& data, int width, int height, bool inverse);

int next_pow2(int n);

} // namespace detail

} // namespace suace
