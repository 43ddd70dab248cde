#pragma once

/// Deterministic chunked parallelism. A scan over [begin, end) is split into
/// contiguous chunks; each chunk is mapped in parallel, then folded strictly
/// in index order. Every observable outcome (witnesses, budget accounting)
/// is produced by the sequential fold, so results are identical for any
/// worker count, including 0/1.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nilclean {

/// Worker count: NILCLEAN_THREADS env var wins (0 means sequential),
/// otherwise hardware concurrency clamped to 8.
inline unsigned resolve_thread_count() {
    if (const char* env = std::getenv("NILCLEAN_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env) {
            if (v <= 0) return 1;
            return static_cast<unsigned>(v > 64 ? 64 : v);
        }
    }
    unsigned hc = std::thread::hardware_concurrency();
    if (hc == 0) return 1;
    return hc > 8 ? 8u : hc;
}

namespace detail {

template <class R, class Map>
void map_range(std::vector<R>& out, std::uint64_t lo, std::uint64_t hi, unsigned threads,
               const Map& map) {
    const std::uint64_t count = hi - lo;
    if (threads <= 1 || count < 512) {
        for (std::uint64_t i = lo; i < hi; ++i) out[i - lo] = map(i);
        return;
    }
    const std::uint64_t stripe = (count + threads - 1) / threads;
    std::vector<std::thread> crew;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t a = lo + stripe * t;
        if (a >= hi) break;
        const std::uint64_t b = a + stripe < hi ? a + stripe : hi;
        crew.emplace_back([&, a, b] {
            try {
                for (std::uint64_t i = a; i < b; ++i) out[i - lo] = map(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : crew) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

/// map: uint64_t -> R, pure. fold: (uint64_t index, R&) -> bool, called in
/// ascending index order; returning false stops the scan after the current
/// element. Exceptions from map or fold propagate.
template <class R, class Map, class Fold>
void chunked_scan(std::uint64_t begin, std::uint64_t end, const Map& map, const Fold& fold,
                  std::uint64_t chunk_hint = 0) {
    if (begin >= end) return;
    const unsigned threads = resolve_thread_count();
    std::uint64_t chunk = chunk_hint;
    if (chunk == 0) {
        chunk = (end - begin) / (std::uint64_t{threads} * 4);
        if (chunk < 1024) chunk = 1024;
        if (chunk > (std::uint64_t{1} << 20)) chunk = std::uint64_t{1} << 20;
    }
    std::vector<R> buffer;
    for (std::uint64_t lo = begin; lo < end; lo += chunk) {
        const std::uint64_t hi = lo + chunk < end ? lo + chunk : end;
        buffer.resize(hi - lo);
        detail::map_range(buffer, lo, hi, threads, map);
        for (std::uint64_t i = lo; i < hi; ++i) {
            if (!fold(i, buffer[i - lo])) return;
        }
    }
}

}  // namespace nilclean
