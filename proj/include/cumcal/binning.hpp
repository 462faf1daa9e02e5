#pragma once

#include <cumcal/dataset.hpp>

#include <cstddef>
#include <string_view>
#include <vector>

namespace cumcal {

enum class BinStrategy
{
    equispaced,  // bins of equal width in score; Riemann weight 1/m
    equal_count, // bins of equal occupancy; Riemann weight is the gap to the next bin's first score
};

auto to_string(BinStrategy strategy) -> std::string_view;
// Accepts "equispaced" and "equal-count"; throws ValidationError otherwise.
auto parse_bin_strategy(std::string_view text) -> BinStrategy;

struct BinningSpec
{
    BinStrategy strategy = BinStrategy::equal_count;
    std::size_t m = 1;

    friend auto operator==(BinningSpec const&, BinningSpec const&) -> bool = default;
};

struct BinSummary
{
    double left_score;   // smallest score in the bin
    double weight;       // Riemann weight of the bin
    double avg_score;
    double avg_response;
    std::size_t count;
};

/*
    Partitions the dataset into bins and averages each one.

    Equispaced: bin j covers [(j-1)/m, j/m), the last bin is closed at 1, empty bins are dropped and every emitted
    bin weighs 1/m. EqualCount: the first m-1 bins take floor(n/m) consecutive samples each and the last bin takes
    the rest; bin j weighs (first score of bin j+1) - (first score of bin j), with 1 standing in past the last bin.

    Throws ValidationError for m < 1 or m > n.
*/
auto assign_bins(Dataset const& ds, BinningSpec const& spec) -> std::vector<BinSummary>;

} // namespace cumcal
