#pragma once

#include <cumcal/tail.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cumcal {

// Per-path extremes of simulated standard Brownian motion on [0, 1].
struct BrownianExtremes
{
    std::vector<double> max_abs;
    std::vector<double> range;

    auto paths() const noexcept -> std::size_t { return max_abs.size(); }
    auto values(TailKind kind) const noexcept -> std::vector<double> const&
    {
        return kind == TailKind::max_abs ? max_abs : range;
    }
};

struct SimulationConfig
{
    std::size_t paths = 1'000'000;
    std::size_t steps = 4096;
    std::uint64_t seed = 0;
};

/*
    Simulates Gaussian random walks with increments of variance 1/steps and records max |B| and max B - min B.

    Each step's excursion beyond its endpoints is sampled from the exact Brownian-bridge extreme distribution whenever
    the step ends within six step-deviations of the running extreme; elsewhere the bridge cannot move the extreme
    except with probability below exp(-72). This removes the O(steps^-1/2) downward bias of the plain walk.

    Path i draws only from a stream seeded by (seed, i), so the OpenMP and serial kernels agree bit for bit.
    Throws ValidationError unless paths >= 1 and steps >= 1.
*/
auto simulate_extremes(SimulationConfig const& config) -> BrownianExtremes;

// Single-threaded reference for simulate_extremes.
auto simulate_extremes_serial(SimulationConfig const& config) -> BrownianExtremes;

struct OracleEstimate
{
    double estimate;  // fraction of paths whose functional exceeds x
    double std_error; // binomial standard error sqrt(p (1 - p) / paths)
    double mean;      // sample mean of the functional
};

auto exceedance(BrownianExtremes const& sample, TailKind kind, double x) -> OracleEstimate;

// Simulates and evaluates one exceedance. Requires paths >= 1e4 and steps >= 1e3.
auto mc_oracle(TailKind kind, double x, SimulationConfig const& config) -> OracleEstimate;

} // namespace cumcal
