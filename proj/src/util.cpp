#include "hjdg/util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hjdg {

namespace {

int default_threads() {
    if (const char* env = std::getenv("HJDG_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int> g_threads{0};  // 0 = not overridden

}  // namespace

void set_num_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int num_threads() {
    int n = g_threads.load();
    return n > 0 ? n : default_threads();
}

void parallel_for(int n, const std::function<void(int, int)>& fn) {
    if (n <= 0) return;
    const int workers = std::min(num_threads(), n);
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

double uniform01_from_bits(std::uint64_t bits) {
    // Top 53 bits -> [0,1) with full double resolution.
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace hjdg
