#include "suace/hmfil.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace suace {

void validate(const HmfilParams& p) {
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0))
        throw ParamError("alpha must be in [0, 1]");
    if (!(p.gamma_low < p.gamma_high))
        throw ParamError("gamma_low must be < gamma_high");
    if (!(p.cutoff > 0.0))
        throw ParamError("cutoff must be > 0");
}

namespace detail {

GrayImage histogram_modify(const GrayImage& img, double alpha) {
    const double n = static_cast<double>(img.pixel_count());
    std::array<std::uint64_t, 256> hist{};
    for (std::uint8_t v : img.samples)
        ++hist[v];

    const double uniform = n / 256.0;
    std::array<double, 256> blended;
    for (int v = 0; v < 256; ++v)
        blended[v] = alpha * static_cast<double>(hist[v]) + (1.0 - alpha) * uniform;

    double cdf_min = 0.0;
    for (double b : blended)
        if (b > 0.0) {
            cdf_min = b;
            break;
        }
    const double denom = n - cdf_min;

    std::array<std::uint8_t, 256> lut{};
    double cdf = 0.0;
    for (int v = 0; v < 256; ++v) {
        cdf += blended[v];
        if (denom <= 0.0) {
            lut[v] = 255;
            continue;
        }
        long r = std::llround(255.0 * (cdf - cdf_min) / denom);
        lut[v] = static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
    }

    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.samples.size(); ++i)
        out.samples[i] = lut[img.samples[i]];
    return out;
}

double filter_gain(double fu, double fv, double d0, double gamma_low, double gamma_high) {
    const double d2 = fu * fu + fv * fv;
    return (gamma_high - gamma_low) * (1.0 - std::exp(-d2 / (2.0 * d0 * d0))) + gamma_low;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

void fft_1d(std::complex<double>* data, int n, bool inverse) {
    // Bit-reversal permutation.
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(data[i], data[j]);
    }
    const double dir = inverse ? 1.0 : -1.0;
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = dir * 2.0 * std::acos(-1.0) / len;
        const std::complex<double> wstep(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                std::complex<double> even = data[i + k];
                std::complex<double> odd = data[i + k + len / 2] * w;
                data[i + k] = even + odd;
                data[i + k + len / 2] = even - odd;
                w *= wstep;
            }
        }
    }
}

void fft_2d(std::vector<std::complex<double>>& data, int width, int height, bool inverse) {
    for (int y = 0; y < height; ++y)
        fft_1d(data.data() + static_cast<std::size_t>(y) * width, width, inverse);
    std::vector<std::complex<double>> col(height);
    for (int x = 0; x < width; ++x) {
        for (int y = 0; y < height; ++y)
            col[y] = data[static_cast<std::size_t>(y) * width + x];
        fft_1d(col.data(), height, inverse);
        for (int y = 0; y < height; ++y)
            data[static_cast<std::size_t>(y) * width + x] = col[y];
    }
}

GrayImage homomorphic_stage(const GrayImage& img, double gamma_low,
                            double gamma_high, double cutoff) {
    const int w = img.width, h = img.height;
    const int pw = next_pow2(w), ph = next_pow2(h);
    const double d0 = cutoff * std::sqrt(static_cast<double>(w) * w +
                                         static_cast<double>(h) * h);

    std::vector<std::complex<double>> freq(static_cast<std::size_t>(pw) * ph);
    for (int y = 0; y < ph; ++y) {
        const int sy = std::min(y, h - 1);
        const std::uint8_t* row = img.samples.data() + static_cast<std::size_t>(sy) * w;
        for (int x = 0; x < pw; ++x)
            freq[static_cast<std::size_t>(y) * pw + x] =
                std::log1p(static_cast<double>(row[std::min(x, w - 1)]));
    }

    fft_2d(freq, pw, ph, false);

    for (int v = 0; v < ph; ++v) {
        const double fv = v <= ph / 2 ? v : v - ph;
        for (int u = 0; u < pw; ++u) {
            const double fu = u <= pw / 2 ? u : u - pw;
            freq[static_cast<std::size_t>(v) * pw + u] *=
                filter_gain(fu, fv, d0, gamma_low, gamma_high);
        }
    }

    fft_2d(freq, pw, ph, true);
    const double scale = 1.0 / (static_cast<double>(pw) * ph);

    std::vector<double> vals(static_cast<std::size_t>(w) * h);
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double v = std::expm1(freq[static_cast<std::size_t>(y) * pw + x].real() * scale);
            vals[static_cast<std::size_t>(y) * w + x] = v;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }

    GrayImage out(w, h);
    const double span = mx - mn;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double v = span > 1e-12 ? 255.0 * (vals[i] - mn) / span : vals[i];
        out.samples[i] = static_cast<std::uint8_t>(std::clamp(std::llround(v), 0LL, 255LL));
    }
    return out;
}

} // namespace detail

GrayImage hmfil_enhance(const GrayImage& img, const HmfilParams& params) {
    validate(params);
    GrayImage modified = detail::histogram_modify(img, params.alpha);
    return detail::homomorphic_stage(modified, params.gamma_low,
                                     params.gamma_high, params.cutoff);
}

} // namespace suace
