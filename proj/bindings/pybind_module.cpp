#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>

#include "suace/clahe.hpp"
#include "suace/codec.hpp"
#include "suace/enhance.hpp"
#include "suace/entropy.hpp"
#include "suace/errors.hpp"
#include "suace/hmfil.hpp"
#include "suace/phantom.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace suace;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

GrayImage to_image(const U8Array& arr) {
    if (arr.ndim() != 2)
        throw ParamError("expected a 2-D uint8 array (height x width)");
    const int h = static_cast<int>(arr.shape(0));
    const int w = static_cast<int>(arr.shape(1));
    GrayImage img(w, h);
    std::memcpy(img.samples.data(), arr.data(), img.samples.size());
    return img;
}

py::array_t<std::uint8_t> from_image(const GrayImage& img) {
    py::array_t<std::uint8_t> arr({img.height, img.width});
    std::memcpy(arr.mutable_data(), img.samples.data(), img.samples.size());
    return arr;
}

// Convert with the GIL held, compute without it.
template <typename Fn>
py::array_t<std::uint8_t> run_enhancer(const U8Array& arr, Fn&& fn) {
    GrayImage img = to_image(arr);
    GrayImage out;
    {
        py::gil_scoped_release release;
        out = fn(img);
    }
    return from_image(out);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adaptive contrast enhancement (SUACE) with CLAHE and "
              "homomorphic-filter baselines. Images are 2-D uint8 arrays.";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const ParamError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const IoError& e) {
            PyErr_SetString(PyExc_OSError, e.what());
        }
    });

    m.def(
        "suace",
        [](const U8Array& arr, double sigma, double d, int k, double split) {
            SuaceParams p;
            p.sigma = sigma;
            p.d = d;
            p.k = k;
            p.split = split;
            return run_enhancer(arr, [&](const GrayImage& img) { return enhance(img, p); });
        },
        "img"_a, "sigma"_a = 9.0, "d"_a = 21.0, "k"_a = 255, "split"_a = 0.5,
        "Adaptive stretch: each pixel is mapped from the width-d window around "
        "its local illumination level onto [0, k].");

    m.def(
        "clahe",
        [](const U8Array& arr, int tiles_x, int tiles_y, double clip_limit) {
            ClaheParams p;
            p.tiles_x = tiles_x;
            p.tiles_y = tiles_y;
            p.clip_limit = clip_limit;
            return run_enhancer(arr,
                                [&](const GrayImage& img) { return clahe_enhance(img, p); });
        },
        "img"_a, "tiles_x"_a = 8, "tiles_y"_a = 8, "clip_limit"_a = 4.0,
        "Contrast-limited adaptive histogram equalization.");

    m.def(
        "hmfil",
        [](const U8Array& arr, double alpha, double gamma_low, double gamma_high,
           double cutoff) {
            HmfilParams p;
            p.alpha = alpha;
            p.gamma_low = gamma_low;
            p.gamma_high = gamma_high;
            p.cutoff = cutoff;
            return run_enhancer(arr,
                                [&](const GrayImage& img) { return hmfil_enhance(img, p); });
        },
        "img"_a, "alpha"_a = 0.95, "gamma_low"_a = 0.5, "gamma_high"_a = 1.5,
        "cutoff"_a = 0.05,
        "Histogram modification followed by homomorphic filtering.");

    m.def(
        "entropy",
        [](const U8Array& arr) {
            GrayImage img = to_image(arr);
            double bits;
            {
                py::gil_scoped_release release;
                bits = suace::entropy(img).entropy_bits;
            }
            return bits;
        },
        "img"_a, "Shannon entropy of the gray-level histogram, in bits.");

    m.def(
        "phantom",
        [](int width, int height, int ridge_count, double ridge_width,
           double ridge_depth, double illum_gradient, int illum_blobs,
           double noise_sigma, std::uint64_t seed) {
            PhantomSpec spec;
            spec.width = width;
            spec.height = height;
            spec.ridge_count = ridge_count;
            spec.ridge_width = ridge_width;
            spec.ridge_depth = ridge_depth;
            spec.illum_gradient = illum_gradient;
            spec.illum_blobs = illum_blobs;
            spec.noise_sigma = noise_sigma;
            spec.seed = seed;
            Phantom ph;
            {
                py::gil_scoped_release release;
                ph = generate_phantom(spec);
            }
            return py::make_tuple(from_image(ph.image), from_image(ph.ridge_mask));
        },
        "width"_a = 640, "height"_a = 480, "ridge_count"_a = 6, "ridge_width"_a = 27.0,
        "ridge_depth"_a = 60.0, "illum_gradient"_a = 80.0, "illum_blobs"_a = 0,
        "noise_sigma"_a = 3.0, "seed"_a = 1,
        "Seeded synthetic vein-like test image; returns (image, ridge_mask).");

    m.def(
        "suggested_sigma",
        [](double ridge_width) {
            PhantomSpec spec;
            spec.ridge_width = ridge_width;
            return suggested_sigma(spec);
        },
        "ridge_width"_a, "Blur sigma suited to ridges of this width (one third).");

    m.def(
        "load_image", [](const std::string& path) { return from_image(load_image(path)); },
        "path"_a, "Load a PGM or PNG file as a 2-D uint8 array.");

    m.def(
        "save_image",
        [](const std::string& path, const U8Array& arr) {
            save_image(path, to_image(arr));
        },
        "path"_a, "img"_a,
        "Write a 2-D uint8 array as PGM, or PNG when the path ends in .png.");
}
