#include "suace/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>

#include "suace/parallel.hpp"

namespace suace {

namespace detail {

int gaussian_radius(double sigma) {
    if (!(sigma > 0.0))
        throw ParamError("sigma must be > 0");
    return static_cast<int>(std::ceil(3.0 * sigma));
}

std::vector<double> gaussian_taps(double sigma) {
    int r = gaussian_radius(sigma);
    std::vector<double> taps(static_cast<std::size_t>(r) + 1);
    double z = 1.0;
    taps[0] = 1.0;
    for (int i = 1; i <= r; ++i) {
        taps[i] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        z += 2.0 * taps[i];
    }
    for (auto& t : taps)
        t /= z;
    return taps;
}

namespace {

#if defined(__GNUC__)

// 16-lane float vector. The residual passes below run every row as whole
// vectors over a padded stride, never as a vector body plus scalar tail:
// tails could contract floating ops differently and break the bitwise
// mirror-commutation guarantee.
typedef float vf16 __attribute__((vector_size(64)));

inline vf16 ldv(const float* p) {
    vf16 v;
    __builtin_memcpy(&v, p, sizeof(v));
    return v;
}

inline void stv(float* p, vf16 v) {
    __builtin_memcpy(p, &v, sizeof(v));
}

// Horizontal residual A = h*img - img, one row. Tap pairs enter as
// (P(x-i)+P(x+i)) - 2*P(x): the sum and difference are exact small integers
// in float, so constants cancel exactly, offsets cancel exactly, and the
// commutative pair sum makes mirrored rows come out bitwise mirrored.
// Three rotating chains; the grouping is indexed by tap, not by position,
// so it is mirror-neutral.
void hres_row(const float* pr, float* acc, int sw, int r, const float* tp) {
    for (int x = 0; x < sw; x += 16) {
        const float* base = pr + r + x;
        vf16 m = ldv(base);
        vf16 a0 = {}, a1 = {}, a2 = {};
        int i = 1;
        for (; i + 2 <= r; i += 3) {
            a0 += tp[i] * ((ldv(base - i) + ldv(base + i)) - 2.0f * m);
            a1 += tp[i + 1] * ((ldv(base - i - 1) + ldv(base + i + 1)) - 2.0f * m);
            a2 += tp[i + 2] * ((ldv(base - i - 2) + ldv(base + i + 2)) - 2.0f * m);
        }
        for (; i <= r; ++i)
            a0 += tp[i] * ((ldv(base - i) + ldv(base + i)) - 2.0f * m);
        stv(acc + x, (a0 + a1) + a2);
    }
}

#endif // __GNUC__

} // namespace

void residual_rows(const GrayImage& img, double sigma,
                   const std::function<void(int, const float*)>& sink) {
    const int w = img.width, h = img.height;
    const int r = gaussian_radius(sigma);
    std::vector<double> dtaps = gaussian_taps(sigma);
    std::vector<float> taps(dtaps.begin(), dtaps.end());
    const float* tp = taps.data();

    auto [mn_it, mx_it] = std::minmax_element(img.samples.begin(), img.samples.end());
    const float mn = static_cast<float>(*mn_it);
    const float mx = static_cast<float>(*mx_it);

#if defined(__GNUC__)
    const int sw = (w + 15) & ~15;
    const std::size_t pitch = static_cast<std::size_t>(sw);
    // Scratch planes persist across calls. They are several MB at video
    // sizes, which glibc serves by mmap and tears down on free; paying that
    // page-fault churn per frame costs more than a third of the blur itself
    // in a frame loop. Per-thread reuse also keeps concurrent callers apart;
    // the sink must not reenter residual_rows on the same thread.
    static thread_local std::vector<float> pixbuf, hresbuf;
    if (pixbuf.size() < pitch * h) {
        pixbuf.resize(pitch * h);
        hresbuf.resize(pitch * h);
    }
    float* const pix = pixbuf.data();
    float* const hres = hresbuf.data();

    // Horizontal pass. prow is the row replicate-padded on both sides (the
    // slack past w doubles as the right border), and the float copy of the
    // row is kept for the vertical pass.
    parallel_for_rows(h, [&](int y0, int y1) {
        std::vector<float> prow(static_cast<std::size_t>(sw) + 2 * r + 16);
        float* pr = prow.data();
        for (int y = y0; y < y1; ++y) {
            const std::uint8_t* row8 =
                img.samples.data() + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x)
                pr[r + x] = static_cast<float>(row8[x]);
            std::fill(pr, pr + r, static_cast<float>(row8[0]));
            std::fill(pr + r + w, pr + r + sw + r + 16,
                      static_cast<float>(row8[w - 1]));
            std::memcpy(pix + static_cast<std::size_t>(y) * pitch, pr + r,
                        sizeof(float) * sw);
            hres_row(pr, hres + static_cast<std::size_t>(y) * pitch, sw, r, tp);
        }
    });

    // Vertical pass, fused: S = (v*img - img) + v*A with the same exact pair
    // discipline, then the residual clamp. Four output rows per anchor share
    // tap-row loads through carried registers: row y+k's upper tap row at
    // offset j equals the anchor's lower stream at step j-k (clamping keeps
    // the identity, both sides saturate the same raw index). Each row is one
    // ascending-tap chain, so its bits do not depend on its slot within the
    // anchor; partial heights reuse an anchor at h-4 and short images fall
    // back to the single-row loop.
    const float c0 = tp[0];
    const int full = h / 4;
    const bool tail_anchor = h >= 4 && h % 4 != 0;
    const int anchors = full + (tail_anchor ? 1 : 0);

    auto single_rows = [&](int ys, int ye, float* srow) {
        std::vector<std::size_t> offm(static_cast<std::size_t>(r) + 1);
        std::vector<std::size_t> offp(static_cast<std::size_t>(r) + 1);
        for (int y = ys; y < ye; ++y) {
            for (int j = 1; j <= r; ++j) {
                offm[j] = static_cast<std::size_t>(std::max(y - j, 0)) * pitch;
                offp[j] = static_cast<std::size_t>(std::min(y + j, h - 1)) * pitch;
            }
            const float* pc = pix + static_cast<std::size_t>(y) * pitch;
            const float* ac = hres + static_cast<std::size_t>(y) * pitch;
            for (int x = 0; x < sw; x += 16) {
                vf16 p = ldv(pc + x);
                vf16 a = c0 * ldv(ac + x);
                for (int j = 1; j <= r; ++j)
                    a += tp[j] * (((ldv(pix + offm[j] + x) + ldv(pix + offp[j] + x)) -
                                   2.0f * p) +
                                  (ldv(hres + offm[j] + x) + ldv(hres + offp[j] + x)));
                vf16 lo = mn - p, hi = mx - p;
                a = a < lo ? lo : a;
                a = a > hi ? hi : a;
                stv(srow + x, a);
            }
            sink(y, srow);
        }
    };

    if (h < 4) {
        std::vector<float> srow(pitch);
        single_rows(0, h, srow.data());
        return;
    }

    parallel_for_rows(anchors, [&](int b0, int b1) {
        std::vector<float> srow(pitch * 4);
        std::vector<std::size_t> offm(static_cast<std::size_t>(r) + 1);
        std::vector<std::size_t> offp(static_cast<std::size_t>(r) + 1);
        for (int b = b0; b < b1; ++b) {
            const int y = b < full ? 4 * b : h - 4;
            const int sink_from = b < full ? y : full * 4;
            for (int j = 1; j <= r; ++j) {
                offm[j] = static_cast<std::size_t>(std::max(y - j, 0)) * pitch;
                offp[j] = static_cast<std::size_t>(std::min(y + 3 + j, h - 1)) * pitch;
            }
            const float* pc0 = pix + static_cast<std::size_t>(y) * pitch;
            const float* pc1 = pc0 + pitch;
            const float* pc2 = pc1 + pitch;
            const float* pc3 = pc2 + pitch;
            const float* ac0 = hres + static_cast<std::size_t>(y) * pitch;
            const float* ac1 = ac0 + pitch;
            const float* ac2 = ac1 + pitch;
            const float* ac3 = ac2 + pitch;
            for (int x = 0; x < sw; x += 16) {
                vf16 p0 = ldv(pc0 + x), p1 = ldv(pc1 + x);
                vf16 p2 = ldv(pc2 + x), p3 = ldv(pc3 + x);
                vf16 h0 = ldv(ac0 + x), h1 = ldv(ac1 + x);
                vf16 h2 = ldv(ac2 + x), h3 = ldv(ac3 + x);
                vf16 a0 = c0 * h0, a1 = c0 * h1, a2 = c0 * h2, a3 = c0 * h3;
                // histories: *m0 is last step's lower row, *m1/*m2 older;
                // *q0..*q2 the same for the upper stream
                vf16 pm0 = p0, pm1 = p1, pm2 = p2;
                vf16 pq0 = p3, pq1 = p2, pq2 = p1;
                vf16 hm0 = h0, hm1 = h1, hm2 = h2;
                vf16 hq0 = h3, hq1 = h2, hq2 = h1;
                for (int j = 1; j <= r; ++j) {
                    const float c = tp[j];
                    vf16 npm = ldv(pix + offm[j] + x);
                    vf16 npq = ldv(pix + offp[j] + x);
                    vf16 nhm = ldv(hres + offm[j] + x);
                    vf16 nhq = ldv(hres + offp[j] + x);
                    a0 += c * (((npm + pq2) - 2.0f * p0) + (nhm + hq2));
                    a1 += c * (((pm0 + pq1) - 2.0f * p1) + (hm0 + hq1));
                    a2 += c * (((pm1 + pq0) - 2.0f * p2) + (hm1 + hq0));
                    a3 += c * (((pm2 + npq) - 2.0f * p3) + (hm2 + nhq));
                    pm2 = pm1; pm1 = pm0; pm0 = npm;
                    pq2 = pq1; pq1 = pq0; pq0 = npq;
                    hm2 = hm1; hm1 = hm0; hm0 = nhm;
                    hq2 = hq1; hq1 = hq0; hq0 = nhq;
                }
                vf16 lo0 = mn - p0, hi0 = mx - p0;
                vf16 lo1 = mn - p1, hi1 = mx - p1;
                vf16 lo2 = mn - p2, hi2 = mx - p2;
                vf16 lo3 = mn - p3, hi3 = mx - p3;
                a0 = a0 < lo0 ? lo0 : a0; a0 = a0 > hi0 ? hi0 : a0;
                a1 = a1 < lo1 ? lo1 : a1; a1 = a1 > hi1 ? hi1 : a1;
                a2 = a2 < lo2 ? lo2 : a2; a2 = a2 > hi2 ? hi2 : a2;
                a3 = a3 < lo3 ? lo3 : a3; a3 = a3 > hi3 ? hi3 : a3;
                stv(srow.data() + x, a0);
                stv(srow.data() + pitch + x, a1);
                stv(srow.data() + 2 * pitch + x, a2);
                stv(srow.data() + 3 * pitch + x, a3);
            }
            for (int k = 0; k < 4; ++k)
                if (y + k >= sink_from)
                    sink(y + k, srow.data() + static_cast<std::size_t>(k) * pitch);
        }
    });
#else
    // Portable fallback: same residual math as flat scalar passes. Uniform
    // per-pixel instruction sequences keep the invariants; it is just slower.
    const std::size_t plane = static_cast<std::size_t>(w) * h;
    std::vector<float> pix(plane);
    std::vector<float> hres(plane);
    for (std::size_t i = 0; i < plane; ++i)
        pix[i] = static_cast<float>(img.samples[i]);

    parallel_for_rows(h, [&](int y0, int y1) {
        std::vector<float> pad(static_cast<std::size_t>(w) + 2 * r);
        for (int y = y0; y < y1; ++y) {
            const float* row = pix.data() + static_cast<std::size_t>(y) * w;
            for (int j = 0; j < w + 2 * r; ++j)
                pad[j] = row[std::clamp(j - r, 0, w - 1)];
            float* acc = hres.data() + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) {
                const float m = pad[static_cast<std::size_t>(r) + x];
                float a = 0.0f;
                for (int i = 1; i <= r; ++i)
                    a += tp[i] * ((pad[static_cast<std::size_t>(r) + x - i] +
                                   pad[static_cast<std::size_t>(r) + x + i]) -
                                  2.0f * m);
                acc[x] = a;
            }
        }
    });

    const float c0 = tp[0];
    parallel_for_rows(h, [&](int y0, int y1) {
        std::vector<float> srow(static_cast<std::size_t>(w));
        for (int y = y0; y < y1; ++y) {
            const float* pc = pix.data() + static_cast<std::size_t>(y) * w;
            const float* ac = hres.data() + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) {
                float a = c0 * ac[x];
                for (int j = 1; j <= r; ++j) {
                    const std::size_t ym =
                        static_cast<std::size_t>(std::max(y - j, 0)) * w;
                    const std::size_t yp =
                        static_cast<std::size_t>(std::min(y + j, h - 1)) * w;
                    a += tp[j] * (((pix[ym + x] + pix[yp + x]) - 2.0f * pc[x]) +
                                  (hres[ym + x] + hres[yp + x]));
                }
                srow[x] = std::clamp(a, mn - pc[x], mx - pc[x]);
            }
            sink(y, srow.data());
        }
    });
#endif
}

std::vector<float> blur_residual(const GrayImage& img, double sigma) {
    std::vector<float> out(img.pixel_count());
    const int w = img.width;
    residual_rows(img, sigma, [&](int y, const float* s) {
        std::memcpy(out.data() + static_cast<std::size_t>(y) * w, s,
                    sizeof(float) * w);
    });
    return out;
}

std::vector<double> blur_plane(const std::vector<double>& plane,
                               int width, int height, double sigma) {
    const int r = gaussian_radius(sigma);
    std::vector<double> taps = gaussian_taps(sigma);
    std::vector<double> tmp(plane.size());
    std::vector<double> out(plane.size());
    for (int y = 0; y < height; ++y) {
        const double* row = plane.data() + static_cast<std::size_t>(y) * width;
        double* dst = tmp.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            double s = taps[0] * row[x];
            for (int i = 1; i <= r; ++i)
                s += taps[i] * (row[std::clamp(x - i, 0, width - 1)] +
                                row[std::clamp(x + i, 0, width - 1)]);
            dst[x] = s;
        }
    }
    for (int y = 0; y < height; ++y) {
        double* dst = out.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            double s = taps[0] * tmp[static_cast<std::size_t>(y) * width + x];
            for (int i = 1; i <= r; ++i) {
                int ym = std::clamp(y - i, 0, height - 1);
                int yp = std::clamp(y + i, 0, height - 1);
                s += taps[i] * (tmp[static_cast<std::size_t>(ym) * width + x] +
                                tmp[static_cast<std::size_t>(yp) * width + x]);
            }
            dst[x] = s;
        }
    }
    return out;
}

} // namespace detail

IlluminationMap gaussian_blur_direct(const GrayImage& img, double sigma) {
    const int w = img.width, h = img.height;
    const int r = detail::gaussian_radius(sigma);

    // Independent formulation on purpose: raw 2-D weights from the bivariate
    // formula, normalized by their own window sum.
    std::vector<double> w2d(static_cast<std::size_t>(2 * r + 1) * (2 * r + 1));
    double z = 0.0;
    for (int j = -r; j <= r; ++j)
        for (int i = -r; i <= r; ++i) {
            double v = std::exp(-(static_cast<double>(i) * i + static_cast<double>(j) * j) /
                                (2.0 * sigma * sigma));
            w2d[static_cast<std::size_t>(j + r) * (2 * r + 1) + (i + r)] = v;
            z += v;
        }

    auto [mn_it, mx_it] = std::minmax_element(img.samples.begin(), img.samples.end());
    const double mn = *mn_it, mx = *mx_it;

    IlluminationMap map;
    map.width = w;
    map.height = h;
    map.sigma = sigma;
    map.samples.resize(img.pixel_count());
    parallel_for_rows(h, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y)
            for (int x = 0; x < w; ++x) {
                double s = 0.0;
                for (int j = -r; j <= r; ++j) {
                    int yy = std::clamp(y + j, 0, h - 1);
                    const std::uint8_t* row = img.samples.data() +
                                              static_cast<std::size_t>(yy) * w;
                    const double* wrow = w2d.data() +
                                         static_cast<std::size_t>(j + r) * (2 * r + 1);
                    for (int i = -r; i <= r; ++i)
                        s += wrow[i + r] * row[std::clamp(x + i, 0, w - 1)];
                }
                map.samples[static_cast<std::size_t>(y) * w + x] =
                    std::clamp(s / z, mn, mx);
            }
    });
    return map;
}

IlluminationMap gaussian_blur_fast(const GrayImage& img, double sigma) {
    std::vector<float> res = detail::blur_residual(img, sigma);
    IlluminationMap map;
    map.width = img.width;
    map.height = img.height;
    map.sigma = sigma;
    map.samples.resize(img.pixel_count());
    for (std::size_t i = 0; i < res.size(); ++i)
        map.samples[i] = static_cast<double>(img.samples[i]) +
                         static_cast<double>(res[i]);
    return map;
}

} // namespace suace
