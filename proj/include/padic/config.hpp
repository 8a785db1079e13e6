#pragma once

#include <cstdlib>
#include <string>
#include <thread>

#include "padic/common.hpp"

namespace padic {

enum class OutputFormat { json, csv };

struct RunConfig {
    // Hard budget on enumeration work: candidate points for brute force,
    // frontier size times offset-block size per level for lifting.
    u64 maxCandidates = 1'000'000'000;
    u64 maxFrontier = 1'000'000'000;
    // 0 means auto (env override, then hardware concurrency).
    unsigned workers = 0;
    OutputFormat output = OutputFormat::json;
    u64 seed = 12345;
    // CRT composition: when the closed form is unavailable at some prime
    // (p <= n), fall back to brute force there instead of refusing.
    bool allowFallback = true;

    unsigned resolved_workers() const {
        if (const char* env = std::getenv("PADIC_COUNT_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<unsigned>(v);
        }
        if (workers >= 1) return workers;
        unsigned hc = std::thread::hardware_concurrency();
        return hc >= 1 ? hc : 1;
    }
};

}  // namespace padic
