// Small shared utilities: thread control, deterministic RNG helpers, formatting.
#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace hjdg {

// Worker count used by parallel_for. 0 restores the default
// (HJDG_THREADS environment variable, else hardware concurrency).
void set_num_threads(int n);
int num_threads();

// Runs fn(begin, end) over a static partition of [0, n).
// Results are deterministic as long as chunks write to disjoint slots.
void parallel_for(int n, const std::function<void(int, int)>& fn);

// Uniform double in [0, 1) from a raw 64-bit engine output. The mapping is
// pinned here so meshes built from a seed are bit-identical across platforms.
double uniform01_from_bits(std::uint64_t bits);

// Shortest round-trip decimal formatting for doubles ("%.17g").
std::string format_double(double v);

}  // namespace hjdg
