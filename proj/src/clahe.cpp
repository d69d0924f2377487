#include "suace/clahe.hpp"

#include <algorithm>
#include <cmath>

#include "suace/parallel.hpp"

namespace suace {

namespace detail {

void clip_histogram(std::array<std::uint32_t, 256>& hist, std::uint32_t clip_threshold) {
    std::uint64_t excess = 0;
    for (auto& c : hist)
        if (c > clip_threshold) {
            excess += c - clip_threshold;
            c = clip_threshold;
        }
    if (excess == 0)
        return;
    const std::uint32_t share = static_cast<std::uint32_t>(excess / 256);
    const std::uint32_t rem = static_cast<std::uint32_t>(excess % 256);
    for (std::uint32_t b = 0; b < 256; ++b)
        hist[b] += share + (b < rem ? 1 : 0);
}

std::array<std::uint8_t, 256> equalization_lut(const std::array<std::uint32_t, 256>& hist,
                                               std::uint64_t total) {
    std::array<std::uint8_t, 256> lut{};
    std::uint64_t cdf_min = 0;
    for (std::uint32_t c : hist)
        if (c > 0) {
            cdf_min = c;
            break;
        }
    const double denom = static_cast<double>(total) - static_cast<double>(cdf_min);
    std::uint64_t cdf = 0;
    for (int v = 0; v < 256; ++v) {
        cdf += hist[v];
        if (denom <= 0.0) {
            lut[v] = 255;
            continue;
        }
        double m = 255.0 * (static_cast<double>(cdf) - static_cast<double>(cdf_min)) / denom;
        long r = std::llround(m);
        lut[v] = static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
    }
    return lut;
}

std::vector<int> tile_edges(int extent, int tiles) {
    std::vector<int> edges(static_cast<std::size_t>(tiles) + 1);
    for (int i = 0; i <= tiles; ++i)
        edges[i] = static_cast<int>((static_cast<std::int64_t>(i) * extent) / tiles);
    return edges;
}

} // namespace detail

void validate(const ClaheParams& p, int width, int height) {
    if (p.tiles_x < 1 || p.tiles_y < 1)
        throw ParamError("tile counts must be >= 1");
    if (!(p.clip_limit >= 1.0))
        throw ParamError("clip_limit must be >= 1.0");
    if (width < p.tiles_x || height < p.tiles_y)
        throw ParamError("image must be at least tiles_x x tiles_y pixels");
}

GrayImage clahe_enhance(const GrayImage& img, const ClaheParams& params) {
    validate(params, img.width, img.height);
    const int w = img.width, h = img.height;
    const int tx = params.tiles_x, ty = params.tiles_y;

    const std::vector<int> xs = detail::tile_edges(w, tx);
    const std::vector<int> ys = detail::tile_edges(h, ty);

    // Per-tile equalization mappings.
    std::vector<std::array<std::uint8_t, 256>> luts(static_cast<std::size_t>(tx) * ty);
    for (int j = 0; j < ty; ++j)
        for (int i = 0; i < tx; ++i) {
            std::array<std::uint32_t, 256> hist{};
            for (int y = ys[j]; y < ys[j + 1]; ++y) {
                const std::uint8_t* row = img.samples.data() + static_cast<std::size_t>(y) * w;
                for (int x = xs[i]; x < xs[i + 1]; ++x)
                    ++hist[row[x]];
            }
            const std::uint64_t n_tile =
                static_cast<std::uint64_t>(xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
            double raw = params.clip_limit * (static_cast<double>(n_tile) / 256.0);
            std::uint64_t thr = raw >= static_cast<double>(n_tile)
                                    ? n_tile
                                    : static_cast<std::uint64_t>(raw);
            if (thr < 1)
                thr = 1;
            detail::clip_histogram(hist, static_cast<std::uint32_t>(thr));
            luts[static_cast<std::size_t>(j) * tx + i] = detail::equalization_lut(hist, n_tile);
        }

    // Horizontal interpolation tables: for each column, the two tile columns
    // it blends and the blend weight toward the right one.
    std::vector<double> cxs(tx), cys(ty);
    for (int i = 0; i < tx; ++i)
        cxs[i] = (xs[i] + xs[i + 1] - 1) / 2.0;
    for (int j = 0; j < ty; ++j)
        cys[j] = (ys[j] + ys[j + 1] - 1) / 2.0;

    std::vector<int> ix0(w), ix1(w);
    std::vector<double> wx(w);
    for (int x = 0; x < w; ++x) {
        if (x <= cxs[0]) {
            ix0[x] = ix1[x] = 0;
            wx[x] = 0.0;
        } else if (x >= cxs[tx - 1]) {
            ix0[x] = ix1[x] = tx - 1;
            wx[x] = 0.0;
        } else {
            int i = 0;
            while (x >= cxs[i + 1])
                ++i;
            ix0[x] = i;
            ix1[x] = i + 1;
            wx[x] = (x - cxs[i]) / (cxs[i + 1] - cxs[i]);
        }
    }

    GrayImage out(w, h);
    parallel_for_rows(h, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            int j0, j1;
            double vy;
            if (y <= cys[0]) {
                j0 = j1 = 0;
                vy = 0.0;
            } else if (y >= cys[ty - 1]) {
                j0 = j1 = ty - 1;
                vy = 0.0;
            } else {
                int j = 0;
                while (y >= cys[j + 1])
                    ++j;
                j0 = j;
                j1 = j + 1;
                vy = (y - cys[j]) / (cys[j + 1] - cys[j]);
            }
            const std::uint8_t* src = img.samples.data() + static_cast<std::size_t>(y) * w;
            std::uint8_t* dst = out.samples.data() + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) {
                const std::uint8_t v = src[x];
                const double l00 = luts[static_cast<std::size_t>(j0) * tx + ix0[x]][v];
                const double l01 = luts[static_cast<std::size_t>(j0) * tx + ix1[x]][v];
                const double l10 = luts[static_cast<std::size_t>(j1) * tx + ix0[x]][v];
                const double l11 = luts[static_cast<std::size_t>(j1) * tx + ix1[x]][v];
                const double hx = wx[x];
                const double top = (1.0 - hx) * l00 + hx * l01;
                const double bot = (1.0 - hx) * l10 + hx * l11;
                const double m = (1.0 - vy) * top + vy * bot;
                dst[x] = static_cast<std::uint8_t>(std::clamp(std::llround(m), 0LL, 255LL));
            }
        }
    });
    return out;
}

} // namespace suace
