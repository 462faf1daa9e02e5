#include <cumcal/brownian_mc.hpp>
#include <cumcal/errors.hpp>
#include <cumcal/rng.hpp>

#include <boost/random/normal_distribution.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cumcal {

namespace {

auto check(SimulationConfig const& config) -> void
{
    if (config.paths < 1 || config.steps < 1) throw ValidationError{"simulation needs at least one path and one step"};
}

struct PathExtremes
{
    double max_abs;
    double range;
};

auto simulate_path(std::uint64_t seed, std::size_t path, std::size_t steps) -> PathExtremes
{
    SplitMix64 engine{derive_seed(seed, {path})};
    boost::random::normal_distribution<double> normal;

    auto const dt = 1.0 / static_cast<double>(steps);
    auto const sd = std::sqrt(dt);
    auto const reach = 6.0 * sd;

    double position = 0.0;
    double highest = 0.0;
    double lowest = 0.0;
    for (std::size_t step = 0; step < steps; ++step)
    {
        auto const start = position;
        position += sd * normal(engine);
        auto const delta = position - start;

        // Extremes of a Brownian bridge from start to position over dt:
        // max = (a + b + sqrt((b - a)^2 - 2 dt log U)) / 2, and symmetrically for the min.
        if (std::max(start, position) > highest - reach)
        {
            auto const spread = std::sqrt(delta * delta - 2.0 * dt * std::log(engine.open_uniform()));
            highest = std::max(highest, 0.5 * (start + position + spread));
        }
        if (std::min(start, position) < lowest + reach)
        {
            auto const spread = std::sqrt(delta * delta - 2.0 * dt * std::log(engine.open_uniform()));
            lowest = std::min(lowest, 0.5 * (start + position - spread));
        }
    }
    return {std::max(highest, -lowest), highest - lowest};
}

auto allocate(std::size_t paths) -> BrownianExtremes
{
    return {std::vector<double>(paths), std::vector<double>(paths)};
}

} // namespace

auto simulate_extremes(SimulationConfig const& config) -> BrownianExtremes
{
    check(config);
    auto result = allocate(config.paths);
    auto const paths = static_cast<std::int64_t>(config.paths);

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < paths; ++i)
    {
        auto const path = static_cast<std::size_t>(i);
        auto const extremes = simulate_path(config.seed, path, config.steps);
        result.max_abs[path] = extremes.max_abs;
        result.range[path] = extremes.range;
    }
    return result;
}

auto simulate_extremes_serial(SimulationConfig const& config) -> BrownianExtremes
{
    check(config);
    auto result = allocate(config.paths);
    for (std::size_t path = 0; path < config.paths; ++path)
    {
        auto const extremes = simulate_path(config.seed, path, config.steps);
        result.max_abs[path] = extremes.max_abs;
        result.range[path] = extremes.range;
    }
    return result;
}

auto exceedance(BrownianExtremes const& sample, TailKind kind, double x) -> OracleEstimate
{
    auto const& values = sample.values(kind);
    if (values.empty()) throw ValidationError{"no simulated paths"};

    auto const count = static_cast<double>(values.size());
    auto const above = std::ranges::count_if(values, [x](double v) { return v > x; });
    auto const p = static_cast<double>(above) / count;
    auto const mean = std::accumulate(values.begin(), values.end(), 0.0) / count;
    return {p, std::sqrt(p * (1.0 - p) / count), mean};
}

auto mc_oracle(TailKind kind, double x, SimulationConfig const& config) -> OracleEstimate
{
    if (config.paths < 10'000 || config.steps < 1'000)
        throw ValidationError{fmt::format("oracle needs paths >= 10000 and steps >= 1000 (got {}, {})", config.paths,
                                          config.steps)};
    return exceedance(simulate_extremes(config), kind, x);
}

} // namespace cumcal
