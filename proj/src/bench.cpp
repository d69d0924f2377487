#include "suace/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <thread>

#include <json.hpp>

#include "suace/clahe.hpp"
#include "suace/enhance.hpp"
#include "suace/hmfil.hpp"

namespace suace {

namespace detail {

namespace {
// Keeps the idle pass from being optimized away.
void sink(const void* p) {
    asm volatile("" : : "g"(p) : "memory");
}
} // namespace

double median_of(std::vector<double> values) {
    if (values.empty())
        throw ParamError("median of empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1)
        return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double measure_median(const std::function<void()>& fn, int frames, int warmup) {
    if (frames < 10)
        throw ParamError("frames must be >= 10");
    if (warmup < 0)
        throw ParamError("warmup must be >= 0");
    for (int i = 0; i < warmup; ++i)
        fn();
    std::vector<double> times;
    times.reserve(frames);
    for (int i = 0; i < frames; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    return median_of(std::move(times));
}

void idle_pass(const GrayImage& img) {
    std::vector<std::uint8_t> copy(img.samples);
    sink(copy.data());
    std::vector<float> real(copy.size());
    for (std::size_t i = 0; i < copy.size(); ++i)
        real[i] = static_cast<float>(copy[i]);
    sink(real.data());
    for (std::size_t i = 0; i < copy.size(); ++i)
        copy[i] = static_cast<std::uint8_t>(real[i]);
    sink(copy.data());
}

std::string machine_description() {
    std::string model = "unknown cpu";
    if (std::FILE* f = std::fopen("/proc/cpuinfo", "r")) {
        char line[512];
        while (std::fgets(line, sizeof line, f)) {
            if (std::strncmp(line, "model name", 10) == 0) {
                const char* colon = std::strchr(line, ':');
                if (colon) {
                    model = colon + 1;
                    while (!model.empty() && (model.front() == ' ' || model.front() == '\t'))
                        model.erase(model.begin());
                    while (!model.empty() && (model.back() == '\n' || model.back() == ' '))
                        model.pop_back();
                }
                break;
            }
        }
        std::fclose(f);
    }
    unsigned cores = std::thread::hardware_concurrency();
    return model + ", " + std::to_string(cores ? cores : 1u) + " cores";
}

} // namespace detail

BenchReport run_bench(const std::string& algorithm, const GrayImage& img,
                      int frames, int warmup) {
    std::function<void()> work;
    if (algorithm == "idle") {
        work = [&img] { detail::idle_pass(img); };
    } else if (algorithm == "suace") {
        work = [&img] {
            GrayImage out = enhance(img, SuaceParams{});
            detail::sink(out.samples.data());
        };
    } else if (algorithm == "clahe") {
        work = [&img] {
            GrayImage out = clahe_enhance(img, ClaheParams{});
            detail::sink(out.samples.data());
        };
    } else if (algorithm == "hmfil") {
        work = [&img] {
            GrayImage out = hmfil_enhance(img, HmfilParams{});
            detail::sink(out.samples.data());
        };
    } else {
        throw ParamError("unknown algorithm '" + algorithm +
                         "' (expected idle, suace, clahe or hmfil)");
    }

    const double median = detail::measure_median(work, frames, warmup);
    // Idle baseline from the same call so relative numbers share conditions.
    const double idle_median =
        algorithm == "idle"
            ? median
            : detail::measure_median([&img] { detail::idle_pass(img); }, frames, warmup);

    BenchReport rep;
    rep.algorithm = algorithm;
    rep.frame_width = img.width;
    rep.frame_height = img.height;
    rep.frames = frames;
    rep.median_frame_time_s = median;
    rep.fps = median > 0.0 ? 1.0 / median : 0.0;
    const double idle_fps = idle_median > 0.0 ? 1.0 / idle_median : 0.0;
    rep.relative_fps_pct = idle_fps > 0.0 ? 100.0 * rep.fps / idle_fps : 0.0;
    if (algorithm == "idle")
        rep.relative_fps_pct = 100.0;
    rep.machine = detail::machine_description();
    return rep;
}

std::string bench_report_to_json(const BenchReport& report) {
    nlohmann::json j{
        {"algorithm", report.algorithm},
        {"width", report.frame_width},
        {"height", report.frame_height},
        {"frames", report.frames},
        {"median_frame_time_s", report.median_frame_time_s},
        {"fps", report.fps},
        {"relative_fps_pct", report.relative_fps_pct},
        {"machine", report.machine},
    };
    return j.dump(2);
}

} // namespace suace
