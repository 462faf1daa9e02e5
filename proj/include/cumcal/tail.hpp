#pragma once

#include <cumcal/metrics.hpp>

#include <string_view>

namespace cumcal {

enum class TailKind
{
    max_abs, // max_{0<=t<=1} |B(t)|
    range,   // max B - min B over [0, 1]
};

auto to_string(TailKind kind) -> std::string_view;

struct TailResult
{
    double p;                // P(functional > x)
    int terms_used;
    double truncation_bound; // bound on the omitted remainder of the series
};

/*
    Tail probabilities of Brownian-motion functionals on [0, 1].

    Both use a pair of series: a theta-function expansion of the distribution function for small x and a
    reflection-principle expansion in Gaussian upper tails for large x, switching at tail_crossover. Summation
    stops once the next term drops below 1e-16 relative to the result.

    max_abs, small x:  1 - (4/pi) sum_{k>=0} (-1)^k/(2k+1) exp(-(2k+1)^2 pi^2 / (8x^2))
    max_abs, large x:  4 sum_{k>=1} (-1)^{k+1} Q((2k-1)x)
    range, small x:    1 - sum_{j>=0} (8/x^2 + 8/((2j+1)^2 pi^2)) exp(-(2j+1)^2 pi^2 / (2x^2))
    range, large x:    8 sum_{k>=1} (-1)^{k+1} k Q(kx)

    where Q is the standard normal upper tail. Throws ValidationError for negative or non-finite x.
*/
auto tail_maxabs(double x) -> TailResult;
auto tail_range(double x) -> TailResult;
auto tail(TailKind kind, double x) -> TailResult;

inline constexpr double tail_crossover = 1.0;

// Series evaluated on a chosen side of the crossover; exposed for the agreement tests.
auto tail_maxabs_small_x(double x) -> TailResult;
auto tail_maxabs_large_x(double x) -> TailResult;
auto tail_range_small_x(double x) -> TailResult;
auto tail_range_large_x(double x) -> TailResult;

// Standard normal upper tail.
auto normal_upper_tail(double x) -> double;

struct NullConstants
{
    double mean_maxabs; // sqrt(pi/2)
    double mean_range;  // 2 sqrt(2/pi)
};

auto expected_null_constants() -> NullConstants;

// Asymptotic P-values for ECCE-MAD / sigma_n and ECCE-R / sigma_n.
auto brownian_tails() -> TailFunctions;

} // namespace cumcal
