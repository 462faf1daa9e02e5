#pragma once

#include <cumcal/binning.hpp>
#include <cumcal/dataset.hpp>

#include <functional>
#include <vector>

namespace cumcal {

// Binned empirical calibration errors.
struct EceReport
{
    double ece1; // sum of weight * |avg_response - avg_score|
    double ece2; // sum of weight * (avg_response - avg_score)^2
    BinningSpec spec;
    std::vector<BinSummary> bins;
};

auto ece(Dataset const& ds, BinningSpec const& spec) -> EceReport;

// C_0 = 0, C_k = (1/n) * sum_{j <= k} (R_j - S_j).
struct CumulativeCurve
{
    std::vector<double> values;    // n + 1 entries
    std::vector<double> abscissas; // k / n

    auto n() const noexcept -> std::size_t { return values.size() - 1; }
};

// Accumulated with compensated summation.
auto cumulative_curve(Dataset const& ds) -> CumulativeCurve;

// Null standard deviation of C_n: sqrt(sum S_j (1 - S_j)) / n. Throws ValidationError when every score is 0 or 1.
auto sigma_n(Dataset const& ds) -> double;

// Maps a normalized statistic to its tail probability.
struct TailFunctions
{
    std::function<double(double)> maxabs;
    std::function<double(double)> range;
};

struct EcceReport
{
    double ecce_mad;
    double ecce_r;
    double sigma_n;
    double mad_normalized;
    double r_normalized;
    double p_mad;
    double p_r;
};

// ECCE-MAD = max_{k >= 1} |C_k|, ECCE-R = max C_k - min C_k over k >= 0, both normalized by sigma_n and passed
// through the tail functions.
auto ecce(Dataset const& ds, TailFunctions const& tails) -> EcceReport;
auto ecce(CumulativeCurve const& curve, double sigma, TailFunctions const& tails) -> EcceReport;

// Brute-force max over contiguous index intervals I of |sum_{j in I} (R_j - S_j)| / n. O(n^2); equals ECCE-R.
auto max_interval_miscalibration(Dataset const& ds) -> double;

} // namespace cumcal
