#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace cumcal {

// One observation: a predicted probability of success and the observed binary outcome.
struct Sample
{
    double score;
    int response;

    friend auto operator==(Sample const&, Sample const&) -> bool = default;
};

using RawPair = std::pair<double, int>;

/*
    Samples sorted strictly ascending by score.

    Construction validates every invariant, so any Dataset in hand has n >= 1, scores in [0, 1], responses in {0, 1}
    and strictly increasing scores. Use canonicalize() to build one from unsorted or tied input.
*/
class Dataset
{
public:
    // Throws ValidationError unless the samples already satisfy every invariant.
    explicit Dataset(std::vector<Sample> samples);

    auto size() const noexcept -> std::size_t { return samples_.size(); }
    auto samples() const noexcept -> std::span<Sample const> { return samples_; }
    auto operator[](std::size_t k) const noexcept -> Sample const& { return samples_[k]; }

    auto scores() const -> std::vector<double>;
    auto responses() const -> std::vector<int>;

    friend auto operator==(Dataset const&, Dataset const&) -> bool = default;

private:
    std::vector<Sample> samples_;
};

// Relative spacing used to separate tied scores.
inline constexpr double tie_jitter = 1e-8;

/*
    Sorts raw pairs by score and separates ties.

    Each run of equal scores is placed in a random order (driven by seed) and spread over consecutive values about
    tie_jitter * score apart, shrunk where needed so the run stays inside [0, 1] and well clear of its distinct
    neighbours. Pairs whose scores are already distinct keep their exact values.
*/
auto canonicalize(std::span<RawPair const> raw, std::uint64_t seed) -> Dataset;

// Throws ValidationError naming the 1-based position (e.g. "row 3" or "line 3") if the pair is out of range.
auto validate_pair(RawPair const& pair, std::size_t position, std::string_view unit = "row") -> void;

} // namespace cumcal
