#include <cumcal/errors.hpp>
#include <cumcal/rng.hpp>
#include <cumcal/synth.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace cumcal {

auto to_string(GridKind kind) -> std::string_view
{
    switch (kind)
    {
    case GridKind::equispaced: return "equispaced";
    case GridKind::squared: return "squared";
    case GridKind::square_rooted: return "sqrt";
    }
    return "unknown";
}

auto parse_grid_kind(std::string_view text) -> GridKind
{
    if (text == "equispaced") return GridKind::equispaced;
    if (text == "squared") return GridKind::squared;
    if (text == "sqrt") return GridKind::square_rooted;
    throw ValidationError{fmt::format("unknown score grid '{}'", text)};
}

auto make_scores(ScoreGrid const& grid) -> std::vector<double>
{
    if (grid.n < 1) throw ValidationError{"score grid needs n >= 1"};
    std::vector<double> scores(grid.n);
    auto const n = static_cast<double>(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k)
    {
        auto const s = static_cast<double>(k + 1) / n;
        switch (grid.kind)
        {
        case GridKind::equispaced: scores[k] = s; break;
        case GridKind::squared: scores[k] = s * s; break;
        case GridKind::square_rooted: scores[k] = std::sqrt(s); break;
        }
    }
    return scores;
}

auto CalibrationFunction::perfect() -> CalibrationFunction { return {Kind::perfect, 0.0, 1}; }

auto CalibrationFunction::sine_perturbed(double amplitude, int frequency) -> CalibrationFunction
{
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
        throw ValidationError{fmt::format("sine amplitude {} must be a finite non-negative number", amplitude)};
    if (frequency < 1) throw ValidationError{fmt::format("sine frequency {} must be a positive integer", frequency)};

    CalibrationFunction cal{Kind::sine_perturbed, amplitude, frequency};
    constexpr int samples = 10'000;
    for (int i = 0; i <= samples; ++i)
    {
        auto const r = cal(static_cast<double>(i) / samples);
        if (r < 0.0 || r > 1.0)
            throw ValidationError{fmt::format("sine:amp={},freq={} leaves [0, 1] (r = {})", amplitude, frequency, r)};
    }
    return cal;
}

namespace {

auto parse_number(std::string_view text, auto& value, std::string_view what) -> void
{
    auto const [end, error] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (error != std::errc{} || end != text.data() + text.size())
        throw ValidationError{fmt::format("invalid {} '{}'", what, text)};
}

} // namespace

auto CalibrationFunction::parse(std::string_view text) -> CalibrationFunction
{
    if (text == "perfect") return perfect();

    constexpr std::string_view prefix = "sine:";
    if (!text.starts_with(prefix)) throw ValidationError{fmt::format("unknown calibration '{}'", text)};
    text.remove_prefix(prefix.size());

    double amplitude = -1.0;
    int frequency = 0;
    bool have_amplitude = false;
    bool have_frequency = false;
    while (!text.empty())
    {
        auto const comma = text.find(',');
        auto const item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);

        auto const equals = item.find('=');
        if (equals == std::string_view::npos) throw ValidationError{fmt::format("malformed calibration field '{}'", item)};
        auto const key = item.substr(0, equals);
        auto const value = item.substr(equals + 1);
        if (key == "amp")
        {
            parse_number(value, amplitude, "amplitude");
            have_amplitude = true;
        }
        else if (key == "freq")
        {
            parse_number(value, frequency, "frequency");
            have_frequency = true;
        }
        else
            throw ValidationError{fmt::format("unknown calibration field '{}'", key)};
    }
    if (!have_amplitude || !have_frequency) throw ValidationError{"sine calibration needs amp= and freq="};
    return sine_perturbed(amplitude, frequency);
}

auto CalibrationFunction::operator()(double s) const noexcept -> double
{
    if (kind_ == Kind::perfect) return s;
    return s + amplitude_ * std::sin(2.0 * std::numbers::pi * frequency_ * s);
}

auto CalibrationFunction::label() const -> std::string
{
    if (kind_ == Kind::perfect) return "perfect";
    return fmt::format("sine:amp={},freq={}", amplitude_, frequency_);
}

auto default_miscalibration() -> CalibrationFunction { return CalibrationFunction::sine_perturbed(0.1, 2); }

auto draw_responses(std::span<double const> scores, CalibrationFunction const& cal, std::uint64_t seed) -> Dataset
{
    std::vector<Sample> samples;
    samples.reserve(scores.size());
    for (std::size_t k = 0; k < scores.size(); ++k)
    {
        auto const probability = cal(scores[k]);
        if (!(probability >= 0.0 && probability <= 1.0))
            throw ValidationError{
                fmt::format("row {}: r({}) = {} is not a probability", k + 1, scores[k], probability)};
        samples.push_back({scores[k], counter_uniform(seed, k) < probability ? 1 : 0});
    }
    return Dataset{std::move(samples)};
}

auto synthesize(SynthConfig const& config) -> Dataset
{
    return draw_responses(make_scores(config.grid), config.calibration, config.seed);
}

namespace {

constexpr double quadrature_tolerance = 1e-12;

template <typename F>
auto integrate(F f, double a, double b) -> double
{
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, quadrature_tolerance);
}

// Roots of r(t) - t inside (0, 1), located on a fine grid and refined by bisection.
auto stationary_points(CalibrationFunction const& cal) -> std::vector<double>
{
    auto const gap = [&cal](double t) { return cal(t) - t; };
    constexpr int cells = 10'000;

    std::vector<double> roots;
    for (int i = 0; i < cells; ++i)
    {
        auto const a = static_cast<double>(i) / cells;
        auto const b = static_cast<double>(i + 1) / cells;
        auto const ga = gap(a);
        auto const gb = gap(b);
        if (ga == 0.0)
            roots.push_back(a);
        else if (ga * gb < 0.0)
        {
            auto const [lo, hi] = boost::math::tools::bisect(gap, a, b, boost::math::tools::eps_tolerance<double>{50});
            roots.push_back(0.5 * (lo + hi));
        }
    }
    roots.push_back(1.0);
    return roots;
}

} // namespace

auto alternative_limits(CalibrationFunction const& cal, GridKind grid, std::size_t draws_per_bin) -> AlternativeLimits
{
    if (grid != GridKind::equispaced)
        throw ValidationError{fmt::format("analytic limits are only available for the equispaced grid, not '{}'",
                                          to_string(grid))};
    if (draws_per_bin < 1) throw ValidationError{"draws per bin must be at least 1"};

    auto const nu = static_cast<double>(draws_per_bin);
    auto const bias = integrate([&cal](double s) { return (cal(s) - s) * (cal(s) - s); }, 0.0, 1.0);
    auto const variance = integrate([&cal](double s) { return cal(s) * (1.0 - cal(s)); }, 0.0, 1.0);

    // G is piecewise monotone between consecutive stationary points; accumulate it piece by piece.
    double highest = 0.0;
    double lowest = 0.0;
    double running = 0.0;
    double previous = 0.0;
    for (auto const t : stationary_points(cal))
    {
        running += integrate([&cal](double s) { return cal(s) - s; }, previous, t);
        previous = t;
        highest = std::max(highest, running);
        lowest = std::min(lowest, running);
    }

    return {bias + variance / nu, std::max(highest, -lowest), highest - lowest, draws_per_bin};
}

} // namespace cumcal
