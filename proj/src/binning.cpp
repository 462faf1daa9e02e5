#include <cumcal/binning.hpp>
#include <cumcal/errors.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace cumcal {

auto to_string(BinStrategy strategy) -> std::string_view
{
    switch (strategy)
    {
    case BinStrategy::equispaced: return "equispaced";
    case BinStrategy::equal_count: return "equal-count";
    }
    return "unknown";
}

auto parse_bin_strategy(std::string_view text) -> BinStrategy
{
    if (text == "equispaced") return BinStrategy::equispaced;
    if (text == "equal-count") return BinStrategy::equal_count;
    throw ValidationError{fmt::format("unknown binning strategy '{}'", text)};
}

namespace {

auto summarize(std::span<Sample const> bin, double weight) -> BinSummary
{
    double score_sum = 0.0;
    double response_sum = 0.0;
    for (auto const& sample : bin)
    {
        score_sum += sample.score;
        response_sum += sample.response;
    }
    auto const count = static_cast<double>(bin.size());
    return {bin.front().score, weight, score_sum / count, response_sum / count, bin.size()};
}

auto equispaced_bins(std::span<Sample const> samples, std::size_t m) -> std::vector<BinSummary>
{
    auto const bin_of = [m](double score) {
        auto const j = static_cast<std::size_t>(std::floor(score * static_cast<double>(m)));
        return std::min(j, m - 1);
    };

    std::vector<BinSummary> bins;
    auto const weight = 1.0 / static_cast<double>(m);
    for (std::size_t begin = 0; begin < samples.size();)
    {
        auto const j = bin_of(samples[begin].score);
        auto end = begin + 1;
        while (end < samples.size() && bin_of(samples[end].score) == j) ++end;
        bins.push_back(summarize(samples.subspan(begin, end - begin), weight));
        begin = end;
    }
    return bins;
}

auto equal_count_bins(std::span<Sample const> samples, std::size_t m) -> std::vector<BinSummary>
{
    auto const n = samples.size();
    auto const per_bin = n / m;

    std::vector<BinSummary> bins;
    bins.reserve(m);
    for (std::size_t j = 0; j < m; ++j)
    {
        auto const begin = j * per_bin;
        auto const end = j + 1 == m ? n : begin + per_bin;
        auto const next_left = j + 1 == m ? 1.0 : samples[end].score;
        bins.push_back(summarize(samples.subspan(begin, end - begin), next_left - samples[begin].score));
    }
    return bins;
}

} // namespace

auto assign_bins(Dataset const& ds, BinningSpec const& spec) -> std::vector<BinSummary>
{
    if (spec.m < 1) throw ValidationError{"number of bins must be at least 1"};
    if (spec.m > ds.size()) throw ValidationError{fmt::format("more bins than samples ({} > {})", spec.m, ds.size())};

    switch (spec.strategy)
    {
    case BinStrategy::equispaced: return equispaced_bins(ds.samples(), spec.m);
    case BinStrategy::equal_count: return equal_count_bins(ds.samples(), spec.m);
    }
    throw ValidationError{"unknown binning strategy"};
}

} // namespace cumcal
