#pragma once

#include <cstdint>
#include <string>

#include "suace/image.hpp"

namespace suace {

// Recipe for a synthetic vein-like test image: dark smooth ridges over a
// bright base, a planar shading gradient, optional smooth blobs, and seeded
// Gaussian noise. Identical spec -> bitwise identical output everywhere.
struct PhantomSpec {
    int width = 640;
    int height = 480;
    int ridge_count = 6;
    double ridge_width = 27.0;  // mean full width of a ridge, pixels
    double ridge_depth = 60.0;  // intensity drop at a ridge centerline
    double illum_gradient = 80.0; // corner-to-corner planar shading span
    int illum_blobs = 0;
    double noise_sigma = 3.0;
    std::uint64_t seed = 1;
};

struct Phantom {
    GrayImage image;
    GrayImage ridge_mask; // 255 within ridge_width/2 of a centerline, else 0
};

void validate(const PhantomSpec& spec);

Phantom generate_phantom(const PhantomSpec& spec);

// Blur sigma recommended for images with this ridge width (one third of it).
double suggested_sigma(const PhantomSpec& spec);

// JSON round trip, stable field names matching the CLI flags.
std::string phantom_spec_to_json(const PhantomSpec& spec);
PhantomSpec phantom_spec_from_json(const std::string& text);

} // namespace suace
