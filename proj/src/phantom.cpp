#include "suace/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "suace/rng.hpp"

namespace suace {

namespace {

// Base brightness of the skin-like background.
constexpr double kBase = 180.0;

// Cross-section shape: the ridge profile is depth * exp(-dy^2 / (2*sr^2))
// with sr = ridge_width / kProfileDivisor, i.e. ridge_width is treated as
// the profile's full width at half maximum.
constexpr double kProfileDivisor = 2.45;

// Vertical band layout: ridges are stacked horizontally-running paths.
// Preferred center-to-center pitch as a fraction of image height; shrinks
// when the requested count would not fit above the minimum margin.
constexpr double kPitchFrac = 0.155;
constexpr double kMarginFrac = 0.08;

// Path wobble: centerline jitter and sine displacement scales, in pixels.
constexpr double kJitter = 4.0;
constexpr double kSineAmp = 13.0;

// Stream tags, one generator per feature so toggling one feature never
// disturbs another.
constexpr std::uint64_t kTagRidge = 0x100;
constexpr std::uint64_t kTagBlob = 0x200;
constexpr std::uint64_t kTagNoise = 0x300;

} // namespace

void validate(const PhantomSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0)
        throw ParamError("phantom dimensions must be positive");
    if (spec.ridge_count < 0 || spec.illum_blobs < 0)
        throw ParamError("feature counts must be >= 0");
    if (spec.ridge_width < 1.0)
        throw ParamError("ridge_width must be >= 1");
    if (spec.ridge_depth < 0.0 || spec.ridge_depth > 255.0)
        throw ParamError("ridge_depth must be in [0, 255]");
    if (spec.noise_sigma < 0.0)
        throw ParamError("noise_sigma must be >= 0");
    if (!std::isfinite(spec.illum_gradient))
        throw ParamError("illum_gradient must be finite");
}

double suggested_sigma(const PhantomSpec& spec) {
    return spec.ridge_width / 3.0;
}

Phantom generate_phantom(const PhantomSpec& spec) {
    validate(spec);
    const int w = spec.width, h = spec.height;
    const std::size_t plane_size = static_cast<std::size_t>(w) * h;

    std::vector<double> acc(plane_size, kBase);
    GrayImage mask(w, h, 0);

    // Planar shading, zero-mean: spans illum_gradient corner to corner.
    if (spec.illum_gradient != 0.0) {
        for (int y = 0; y < h; ++y) {
            double fy = h > 1 ? static_cast<double>(y) / (h - 1) : 0.5;
            for (int x = 0; x < w; ++x) {
                double fx = w > 1 ? static_cast<double>(x) / (w - 1) : 0.5;
                acc[static_cast<std::size_t>(y) * w + x] +=
                    spec.illum_gradient * ((fx + fy) / 2.0 - 0.5);
            }
        }
    }

    // Ridges: horizontally-running centerlines y_c(x) = y0 + sum of sines,
    // stacked down the image. Draw order per ridge is part of the output
    // contract: jitter, sine count, then (amplitude, frequency, phase) per
    // sine.
    if (spec.ridge_count > 0) {
        const double sr = spec.ridge_width / kProfileDivisor;
        const double reach = 4.0 * sr; // beyond this the profile is < 1e-3
        const double half_mask = spec.ridge_width / 2.0;
        const int n = spec.ridge_count;

        double pitch = h * kPitchFrac;
        if (n > 1) {
            double fit = (h * (1.0 - 2.0 * kMarginFrac)) / (n - 1);
            pitch = std::min(pitch, fit);
        }
        const double band_top = (h - pitch * (n - 1)) / 2.0;

        for (int ridge = 0; ridge < n; ++ridge) {
            detail::SplitMix64 rng = detail::stream(spec.seed, kTagRidge + ridge);
            double y0 = band_top + pitch * ridge +
                        (2.0 * rng.next_unit() - 1.0) * kJitter;
            int sines = 2 + static_cast<int>(rng.next() % 3);
            std::vector<double> amp(sines), freq(sines), phase(sines);
            for (int m = 0; m < sines; ++m) {
                amp[m] = (2.0 * rng.next_unit() - 1.0) * kSineAmp / (m + 1);
                freq[m] = 1.0 + 2.0 * rng.next_unit();
                phase[m] = 2.0 * std::acos(-1.0) * rng.next_unit();
            }

            for (int x = 0; x < w; ++x) {
                double t = w > 1 ? static_cast<double>(x) / (w - 1) : 0.0;
                double yc = y0;
                for (int m = 0; m < sines; ++m)
                    yc += amp[m] * std::sin(2.0 * std::acos(-1.0) * freq[m] * t + phase[m]);
                int ylo = std::max(0, static_cast<int>(std::floor(yc - reach)));
                int yhi = std::min(h - 1, static_cast<int>(std::ceil(yc + reach)));
                for (int y = ylo; y <= yhi; ++y) {
                    double dy = y - yc;
                    acc[static_cast<std::size_t>(y) * w + x] -=
                        spec.ridge_depth * std::exp(-(dy * dy) / (2.0 * sr * sr));
                    if (std::abs(dy) <= half_mask)
                        mask.at(x, y) = 255;
                }
            }
        }
    }

    // Smooth bright/dark blobs (off by default).
    for (int b = 0; b < spec.illum_blobs; ++b) {
        detail::SplitMix64 rng = detail::stream(spec.seed, kTagBlob + b);
        double cx = rng.next_unit() * w;
        double cy = rng.next_unit() * h;
        double sb = (0.15 + 0.2 * rng.next_unit()) * std::min(w, h);
        double amp = (10.0 + 20.0 * rng.next_unit()) * ((rng.next() & 1) ? 1.0 : -1.0);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                acc[static_cast<std::size_t>(y) * w + x] +=
                    amp * std::exp(-d2 / (2.0 * sb * sb));
            }
    }

    // Pixel noise, one draw per pixel in row-major order.
    if (spec.noise_sigma > 0.0) {
        detail::GaussianDraw noise(detail::stream(spec.seed, kTagNoise));
        for (std::size_t i = 0; i < plane_size; ++i)
            acc[i] += spec.noise_sigma * noise.next();
    }

    Phantom out{GrayImage(w, h), std::move(mask)};
    for (std::size_t i = 0; i < plane_size; ++i) {
        long v = std::llround(acc[i]);
        out.image.samples[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
    }
    return out;
}

std::string phantom_spec_to_json(const PhantomSpec& spec) {
    nlohmann::json j{
        {"width", spec.width},
        {"height", spec.height},
        {"ridge_count", spec.ridge_count},
        {"ridge_width", spec.ridge_width},
        {"ridge_depth", spec.ridge_depth},
        {"illum_gradient", spec.illum_gradient},
        {"illum_blobs", spec.illum_blobs},
        {"noise_sigma", spec.noise_sigma},
        {"seed", spec.seed},
    };
    return j.dump(2);
}

PhantomSpec phantom_spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("phantom spec: ") + e.what());
    }
    PhantomSpec spec;
    try {
        if (j.contains("width")) spec.width = j["width"].get<int>();
        if (j.contains("height")) spec.height = j["height"].get<int>();
        if (j.contains("ridge_count")) spec.ridge_count = j["ridge_count"].get<int>();
        if (j.contains("ridge_width")) spec.ridge_width = j["ridge_width"].get<double>();
        if (j.contains("ridge_depth")) spec.ridge_depth = j["ridge_depth"].get<double>();
        if (j.contains("illum_gradient")) spec.illum_gradient = j["illum_gradient"].get<double>();
        if (j.contains("illum_blobs")) spec.illum_blobs = j["illum_blobs"].get<int>();
        if (j.contains("noise_sigma")) spec.noise_sigma = j["noise_sigma"].get<double>();
        if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    } catch (const nlohmann::json::type_error& e) {
        throw FormatError(std::string("phantom spec: ") + e.what());
    }
    validate(spec);
    return spec;
}

} // namespace suace
