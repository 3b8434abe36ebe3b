#include "skydiag/gen.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace skydiag {

Distribution distribution_from_string(const std::string& s) {
    if (s == "inde") return Distribution::Inde;
    if (s == "corr") return Distribution::Corr;
    if (s == "anti") return Distribution::Anti;
    throw std::invalid_argument("unknown distribution '" + s + "'");
}

const char* to_string(Distribution d) {
    switch (d) {
        case Distribution::Inde: return "inde";
        case Distribution::Corr: return "corr";
        case Distribution::Anti: return "anti";
    }
    return "inde";
}

namespace {

// mt19937_64 with a fixed bounding scheme, so streams are reproducible
// independent of the standard library's distribution implementations.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }

    long long below(long long bound) {
        return static_cast<long long>(next() % static_cast<std::uint64_t>(bound));
    }

    // Uniform in [-width, width].
    long long jitter(long long width) { return below(2 * width + 1) - width; }
};

long long clamp_domain(long long v, long long s) { return std::clamp<long long>(v, 0, s - 1); }

void rank_transform(Dataset& ds) {
    const std::size_t n = ds.points.size();
    std::vector<std::size_t> order(n);
    for (int a = 0; a < ds.dim; ++a) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            Coord ci = ds.points[i].coords[a], cj = ds.points[j].coords[a];
            if (ci != cj) return ci < cj;
            return i < j;
        });
        for (std::size_t r = 0; r < n; ++r)
            ds.points[order[r]].coords[a] = static_cast<Coord>(r);
    }
}

}  // namespace

Dataset generate(const GenConfig& cfg) {
    if (cfg.n < 0 || cfg.dim < 2 || (!cfg.distinct && cfg.domain < 1))
        throw std::invalid_argument("generate: need n >= 0, d >= 2, s >= 1");
    if (cfg.distinct && cfg.n > (1ll << 31))
        throw std::invalid_argument("generate: distinct mode cannot rank that many points");

    const long long s = cfg.distinct ? std::max<long long>(4 * std::max<long long>(cfg.n, 1), 1024)
                                     : cfg.domain;
    const long long jw = std::max<long long>(1, s / 10);
    Rng rng(cfg.seed);

    Dataset ds;
    ds.dim = cfg.dim;
    ds.points.reserve(static_cast<std::size_t>(cfg.n));
    std::vector<long long> weights(cfg.dim);
    for (long long i = 0; i < cfg.n; ++i) {
        Point p;
        p.id = static_cast<PointId>(i);
        p.coords.resize(cfg.dim);
        switch (cfg.dist) {
            case Distribution::Inde:
                for (int a = 0; a < cfg.dim; ++a) p.coords[a] = rng.below(s);
                break;
            case Distribution::Corr: {
                long long base = rng.below(s);
                for (int a = 0; a < cfg.dim; ++a)
                    p.coords[a] = clamp_domain(base + rng.jitter(jw), s);
                break;
            }
            case Distribution::Anti: {
                long long total = cfg.dim * (s - 1) / 2 + rng.jitter(jw);
                long long wsum = 0;
                for (int a = 0; a < cfg.dim; ++a) wsum += weights[a] = 1 + rng.below(1000);
                for (int a = 0; a < cfg.dim; ++a) {
                    long long share = total * weights[a] / wsum;
                    p.coords[a] = clamp_domain(share + rng.jitter(jw), s);
                }
                break;
            }
        }
        ds.points.push_back(std::move(p));
    }

    if (cfg.distinct) {
        rank_transform(ds);
        ds.domain = std::vector<Coord>(cfg.dim, std::max<Coord>(cfg.n, 1));
    } else {
        ds.domain = std::vector<Coord>(cfg.dim, cfg.domain);
    }
    return ds;
}

}  // namespace skydiag
