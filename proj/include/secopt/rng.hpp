#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>

namespace secopt {

// Deterministic random stream: xoshiro256++ seeded through splitmix64.
// Implemented by hand (rather than <random> distributions) so that draws are
// bit-identical across standard libraries, which the reproducibility
// guarantees of the benchmark harness rely on.
//
// Independent sub-streams are derived by hashing a (master seed, path) tuple;
// see derive(). Distinct paths give statistically independent streams.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    // Stream keyed by master seed plus an arbitrary integer path, e.g.
    // derive(seed, {kChannelRealm, realization, link_id}).
    static RngStream derive(std::uint64_t master, std::initializer_list<std::uint64_t> path);

    std::uint64_t next_u64();

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    double gauss();                         // N(0, 1), Box-Muller
    std::complex<double> cgauss();          // CN(0, 1): variance 1/2 per component

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Path tags used when deriving sub-streams, kept in one place so that
// producers and tests agree on stream identities.
namespace rng_realm {
inline constexpr std::uint64_t channel = 0x01;
inline constexpr std::uint64_t scheme  = 0x02;
inline constexpr std::uint64_t selftest = 0x03;
} // namespace rng_realm

} // namespace secopt
