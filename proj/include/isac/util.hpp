/**
 * util.hpp — small shared utilities: deterministic parallel-for, float
 * formatting for byte-stable CSV/report output, and atomic file writes.
 */

#ifndef ISAC_UTIL_HPP
#define ISAC_UTIL_HPP

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "isac/errors.hpp"

namespace isac {

/* ================================================================== */
/*  Parallelism                                                        */
/* ================================================================== */

/**
 * Worker count: the ISAC_REGION_THREADS environment variable caps
 * parallelism; 0 or unset means auto (hardware concurrency).
 */
inline unsigned thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("ISAC_REGION_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return hw;
}

/**
 * Run f(i) for i in [0, n) on `threads` workers (≤ 0 → thread_count()).
 * Indices are statically sliced; each index writes only its own output
 * slot, so results are identical for any worker count.
 */
template <class F>
inline void parallel_for(std::size_t n, F&& f, int threads = -1) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : thread_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) f(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

/* ================================================================== */
/*  Output formatting                                                  */
/* ================================================================== */

/**
 * Fixed-width scientific float: 12 significant digits ("%.11e").
 * Shortest-round-trip printing is deliberately avoided so that emitted
 * CSVs are diffable column-aligned and byte-deterministic.
 */
inline std::string format_float(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return std::string(buf);
}

/* ================================================================== */
/*  Atomic file output                                                 */
/* ================================================================== */

/**
 * Write `content` to `path` atomically: the data goes to a temporary
 * sibling first and is renamed into place, so a failed run never leaves a
 * partial output file behind.
 */
inline void atomic_write_text(const std::filesystem::path& path,
                              const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename temporary onto '" + path.string() + "'");
    }
}

} // namespace isac

#endif // ISAC_UTIL_HPP
