#pragma once

#include <cstdint>

#include "skydiag/types.hpp"

namespace skydiag {

enum class Distribution { Inde, Corr, Anti };

Distribution distribution_from_string(const std::string& s);
const char* to_string(Distribution d);

struct GenConfig {
    Distribution dist = Distribution::Inde;
    long long n = 0;
    int dim = 2;
    long long domain = 1024;  // per-axis size s, values in [0, s)
    // Distinct mode replaces per-axis values by their rank, so no two
    // points share a coordinate on any axis; the domain becomes [0, n).
    bool distinct = false;
    std::uint64_t seed = 0;
};

// Deterministic for a fixed config. CORR draws a base value per point and
// jitters it per axis; ANTI spreads a jittered near-constant total across
// the axes; jitter width is s/10 in both cases.
Dataset generate(const GenConfig& cfg);

}  // namespace skydiag
