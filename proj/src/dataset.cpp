#include <cumcal/dataset.hpp>
#include <cumcal/errors.hpp>
#include <cumcal/rng.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace cumcal {

auto validate_pair(RawPair const& pair, std::size_t position, std::string_view unit) -> void
{
    auto const [score, response] = pair;
    if (!(score >= 0.0 && score <= 1.0))
        throw ValidationError{fmt::format("{} {}: score {} is outside [0, 1]", unit, position, score)};
    if (response != 0 && response != 1)
        throw ValidationError{fmt::format("{} {}: response {} is not 0 or 1", unit, position, response)};
}

Dataset::Dataset(std::vector<Sample> samples) : samples_{std::move(samples)}
{
    if (samples_.empty()) throw ValidationError{"empty dataset"};
    for (std::size_t k = 0; k < samples_.size(); ++k)
    {
        validate_pair({samples_[k].score, samples_[k].response}, k + 1);
        if (k > 0 && !(samples_[k - 1].score < samples_[k].score))
            throw ValidationError{fmt::format("row {}: scores are not strictly increasing", k + 1)};
    }
}

auto Dataset::scores() const -> std::vector<double>
{
    std::vector<double> result(samples_.size());
    std::ranges::transform(samples_, result.begin(), &Sample::score);
    return result;
}

auto Dataset::responses() const -> std::vector<int>
{
    std::vector<int> result(samples_.size());
    std::ranges::transform(samples_, result.begin(), &Sample::response);
    return result;
}

namespace {

// Spreads a run of `count` tied samples at `value` over distinct scores in (lower, upper).
auto spread_ties(std::span<Sample> run, double value, double lower_room, double upper_room) -> void
{
    auto const count = run.size();
    auto const gaps = static_cast<double>(count - 1);

    auto step = tie_jitter * std::max(value, tie_jitter);
    auto const wanted = gaps * step;
    auto down = std::min(wanted / 2, lower_room);
    auto up = std::min(wanted - down, upper_room);
    down = std::min(wanted - up, lower_room);
    step = (down + up) / gaps;

    auto const start = value - down;
    for (std::size_t i = 0; i < count; ++i) run[i].score = std::clamp(start + static_cast<double>(i) * step, 0.0, 1.0);

    for (std::size_t i = 1; i < count; ++i)
        if (!(run[i - 1].score < run[i].score))
            throw ValidationError{fmt::format("cannot separate {} tied scores at {}", count, value)};
}

} // namespace

auto canonicalize(std::span<RawPair const> raw, std::uint64_t seed) -> Dataset
{
    if (raw.empty()) throw ValidationError{"empty dataset"};

    std::vector<Sample> samples;
    samples.reserve(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k)
    {
        validate_pair(raw[k], k + 1);
        samples.push_back({raw[k].first, raw[k].second});
    }
    // Stable so that the shuffle below is the only source of tie order.
    std::ranges::stable_sort(samples, {}, &Sample::score);

    // Collect the runs first: spreading one run must not see already-jittered neighbours.
    struct Run
    {
        std::size_t begin, end;
        double lower_room, upper_room;
    };
    std::vector<Run> runs;
    for (std::size_t begin = 0; begin < samples.size();)
    {
        auto const value = samples[begin].score;
        auto end = begin + 1;
        while (end < samples.size() && samples[end].score == value) ++end;
        if (end - begin > 1)
        {
            auto const lower_room = begin == 0 ? value : (value - samples[begin - 1].score) / 4;
            auto const upper_room = end == samples.size() ? 1.0 - value : (samples[end].score - value) / 4;
            runs.push_back({begin, end, lower_room, upper_room});
        }
        begin = end;
    }

    for (auto const [begin, end, lower_room, upper_room] : runs)
    {
        auto const value = samples[begin].score;

        std::span<Sample> run{samples.data() + begin, end - begin};
        SplitMix64 engine{derive_seed(seed, {begin})};
        std::ranges::shuffle(run, engine);
        spread_ties(run, value, lower_room, upper_room);
    }
    return Dataset{std::move(samples)};
}

} // namespace cumcal
