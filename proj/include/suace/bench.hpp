#pragma once

#include <functional>
#include <string>
#include <vector>

#include "suace/image.hpp"

namespace suace {

struct BenchReport {
    std::string algorithm;
    int frame_width = 0;
    int frame_height = 0;
    int frames = 0;
    double median_frame_time_s = 0.0;
    double fps = 0.0;
    double relative_fps_pct = 0.0; // 100 * fps / fps of the idle baseline
    std::string machine;
};

// Times `frames` runs of the named algorithm ("idle", "suace", "clahe",
// "hmfil") over the given frame at default parameters, after `warmup`
// unmeasured runs. Every run repeats the full per-frame work (illumination
// map, tile mappings, FFT); file I/O is not involved. The idle baseline -- a
// buffer copy plus an 8-bit -> real -> 8-bit conversion pass -- is measured
// within the same call to anchor relative_fps_pct, so benching "idle" itself
// reports exactly 100.
//
// The timing loop owns the calling thread: do not call concurrently.
BenchReport run_bench(const std::string& algorithm, const GrayImage& img,
                      int frames, int warmup);

// JSON object with the stable field names downstream tooling parses.
std::string bench_report_to_json(const BenchReport& report);

namespace detail {

// Median of the values (interpolating the middle pair for even counts).
double median_of(std::vector<double> values);

// Per-call wall-clock timing core: runs fn warmup times, then `frames`
// measured times, returning the median seconds per call.
double measure_median(const std::function<void()>& fn, int frames, int warmup);

// The idle workload, shared by run_bench and tests.
void idle_pass(const GrayImage& img);

// CPU model plus core count, best effort.
std::string machine_description();

} // namespace detail

} // namespace suace
