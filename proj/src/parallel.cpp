#include "suace/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace suace {

namespace {
std::atomic<int> g_thread_override{0};

int threads_from_env() {
    const char* raw = std::getenv("SUACE_THREADS");
    if (!raw || !*raw)
        return 1;
    char* end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 0)
        return 1;
    if (v == 0)
        return 1;
    unsigned hw = std::thread::hardware_concurrency();
    long cap = hw ? static_cast<long>(hw) * 4 : 64;
    return static_cast<int>(v > cap ? cap : v);
}
} // namespace

int worker_thread_count() {
    int forced = g_thread_override.load(std::memory_order_relaxed);
    if (forced > 0)
        return forced;
    return threads_from_env();
}

void set_thread_override(int threads) {
    g_thread_override.store(threads < 0 ? 0 : threads, std::memory_order_relaxed);
}

void parallel_for_rows(int rows, const std::function<void(int, int)>& fn) {
    if (rows <= 0)
        return;
    int workers = worker_thread_count();
    if (workers > rows)
        workers = rows;
    if (workers <= 1) {
        fn(0, rows);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    int base = rows / workers;
    int extra = rows % workers;
    int y = 0;
    for (int i = 0; i < workers; ++i) {
        int len = base + (i < extra ? 1 : 0);
        int y0 = y, y1 = y + len;
        y = y1;
        pool.emplace_back([&fn, y0, y1] { fn(y0, y1); });
    }
    for (auto& t : pool)
        t.join();
}

} // namespace suace
