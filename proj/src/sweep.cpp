#include "suace/sweep.hpp"

#include <cstring>

#include "suace/errors.hpp"

namespace suace {

SweepResult sweep_montage(const GrayImage& img, const std::vector<double>& sigmas,
                          const std::vector<double>& ds, const SuaceParams& base) {
    if (sigmas.empty())
        throw ParamError("sweep needs at least one sigma");
    if (ds.empty())
        throw ParamError("sweep needs at least one d");
    for (double sg : sigmas)
        for (double d : ds) {
            SuaceParams p = base;
            p.sigma = sg;
            p.d = d;
            validate(p); // reject the whole grid before doing any work
        }

    const int w = img.width, h = img.height;
    const int rows = static_cast<int>(sigmas.size());
    const int cols = static_cast<int>(ds.size());
    SweepResult out;
    out.cell_width = w;
    out.cell_height = h;
    out.montage = GrayImage(w * cols, h * rows);
    out.cells.reserve(static_cast<std::size_t>(rows) * cols);

    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            SuaceParams p = base;
            p.sigma = sigmas[r];
            p.d = ds[c];
            GrayImage tile = enhance(img, p);
            for (int y = 0; y < h; ++y)
                std::memcpy(&out.montage.at(c * w, r * h + y), &tile.at(0, y),
                            static_cast<std::size_t>(w));
            out.cells.push_back({r, c, sigmas[r], ds[c]});
        }
    return out;
}

} // namespace suace
