#pragma once

#include <cumcal/dataset.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cumcal {

enum class GridKind
{
    equispaced,    // k/n
    squared,       // (k/n)^2
    square_rooted, // sqrt(k/n)
};

auto to_string(GridKind kind) -> std::string_view;
// Accepts "equispaced", "squared" and "sqrt".
auto parse_grid_kind(std::string_view text) -> GridKind;

struct ScoreGrid
{
    GridKind kind = GridKind::equispaced;
    std::size_t n = 1;
};

// Scores k/n for k = 1..n, then squared or square-rooted per the grid kind. Strictly increasing inside (0, 1].
auto make_scores(ScoreGrid const& grid) -> std::vector<double>;

// Ground-truth probability of success r(s).
class CalibrationFunction
{
public:
    enum class Kind
    {
        perfect,        // r(s) = s
        sine_perturbed, // r(s) = s + amplitude * sin(2 pi frequency s)
    };

    static auto perfect() -> CalibrationFunction;
    // Throws ValidationError if r leaves [0, 1] on a 10^4-point grid.
    static auto sine_perturbed(double amplitude, int frequency) -> CalibrationFunction;
    // "perfect" or "sine:amp=A,freq=W".
    static auto parse(std::string_view text) -> CalibrationFunction;

    auto operator()(double s) const noexcept -> double;

    auto kind() const noexcept -> Kind { return kind_; }
    auto amplitude() const noexcept -> double { return amplitude_; }
    auto frequency() const noexcept -> int { return frequency_; }
    auto label() const -> std::string;

private:
    CalibrationFunction(Kind kind, double amplitude, int frequency) noexcept
        : kind_{kind}, amplitude_{amplitude}, frequency_{frequency}
    {}

    Kind kind_;
    double amplitude_;
    int frequency_;
};

// The imperfect calibration used by the experiments: r(s) = s + 0.1 sin(4 pi s).
auto default_miscalibration() -> CalibrationFunction;

struct SynthConfig
{
    ScoreGrid grid;
    CalibrationFunction calibration = CalibrationFunction::perfect();
    std::uint64_t seed = 0;
};

/*
    Draws R_k ~ Bernoulli(r(S_k)) independently. The draw for index k depends only on (seed, k), so a dataset is
    reproducible regardless of how generation is split across threads.

    Scores must be strictly increasing in [0, 1]; throws ValidationError otherwise or if r(s) leaves [0, 1].
*/
auto draw_responses(std::span<double const> scores, CalibrationFunction const& cal, std::uint64_t seed) -> Dataset;

auto synthesize(SynthConfig const& config) -> Dataset;

struct AlternativeLimits
{
    double ece2_limit;
    double ecce_mad_limit;
    double ecce_r_limit;
    std::size_t draws_per_bin;
};

/*
    Large-n limits for uniformly distributed scores and fixed draws per bin nu:

        ece2     -> int_0^1 (r - s)^2 ds + int_0^1 r (1 - r) / nu ds
        ecce_mad -> max_t |G(t)|,  ecce_r -> max_t G(t) - min_t G(t),  G(t) = int_0^t (r(s) - s) ds

    Integrals use adaptive Gauss-Kronrod quadrature; extrema of G are taken at the roots of r(t) - t and the
    endpoints. Throws ValidationError for grids other than equispaced.
*/
auto alternative_limits(CalibrationFunction const& cal, GridKind grid, std::size_t draws_per_bin) -> AlternativeLimits;

} // namespace cumcal
