#pragma once

#include <cumcal/binning.hpp>
#include <cumcal/dataset.hpp>
#include <cumcal/synth.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cumcal {

struct SeriesKey
{
    std::string metric;      // ece1, ece2, ecce_mad, ecce_r, ecce_mad_normalized, ecce_r_normalized
    std::string grid;        // empty for sweeps over a given dataset
    std::string strategy;    // binning strategy, empty for cumulative metrics
    std::string calibration; // empty for sweeps over a given dataset

    // Non-empty parts joined by '/', e.g. "ece2/equispaced/equal-count/perfect".
    auto name() const -> std::string;

    friend auto operator==(SeriesKey const&, SeriesKey const&) -> bool = default;
};

struct Series
{
    SeriesKey key;
    std::vector<double> values;

    friend auto operator==(Series const&, Series const&) -> bool = default;
};

struct SweepResult
{
    std::vector<std::size_t> axis; // bin counts or sample sizes
    std::vector<Series> series;    // each the same length as axis
    std::size_t realizations = 1;

    // Throws std::out_of_range if absent.
    auto find(SeriesKey const& key) const -> Series const&;

    friend auto operator==(SweepResult const&, SweepResult const&) -> bool = default;
};

// ece1 and ece2 for every bin count under both strategies. Every bin count must lie in [1, n].
auto sweep_bins(Dataset const& ds, std::span<std::size_t const> bin_counts) -> SweepResult;

struct SweepFamily
{
    std::vector<GridKind> grids{GridKind::equispaced, GridKind::squared, GridKind::square_rooted};
    std::vector<CalibrationFunction> calibrations{CalibrationFunction::perfect(), default_miscalibration()};
};

struct SweepNConfig
{
    SweepFamily family;
    std::vector<std::size_t> sizes{8192, 16384, 32768, 65536, 131072};
    std::size_t realizations = 9;
    std::size_t draws_per_bin = 16;
    std::uint64_t seed = 0;
};

/*
    For each sample size, grid and calibration, averages over the realizations: ece1 and ece2 with equal-count bins of
    draws_per_bin samples each, ECCE-MAD, ECCE-R and both normalized by sigma_n.

    Realization i uses the dataset seed derive_seed(seed, {i}) for every size, grid and calibration. Runs the
    (size, grid, calibration, realization) cells in parallel and reduces them in index order.
    Throws ValidationError if sizes are not strictly ascending or draws_per_bin does not divide every size.
*/
auto sweep_n(SweepNConfig const& config) -> SweepResult;

// Single-threaded reference for sweep_n; produces an identical result.
auto sweep_n_serial(SweepNConfig const& config) -> SweepResult;

// One reliability-diagram polyline: (avg_score, avg_response) per bin.
struct DiagramCurve
{
    std::vector<double> avg_score;
    std::vector<double> avg_response;

    friend auto operator==(DiagramCurve const&, DiagramCurve const&) -> bool = default;
};

auto diagram_curve(std::span<BinSummary const> bins) -> DiagramCurve;

struct BootstrapBand
{
    std::vector<DiagramCurve> curves;
    BinningSpec spec;
    double confidence = 0.95; // nominal coverage of 20 curves

    friend auto operator==(BootstrapBand const&, BootstrapBand const&) -> bool = default;
};

/*
    Resamples the n pairs with replacement, re-canonicalizes (separating duplicated scores) and re-bins with the same
    spec, once per curve. Curve c depends only on (seed, c).
*/
auto bootstrap_band(Dataset const& ds, BinningSpec const& spec, std::size_t curves, std::uint64_t seed)
    -> BootstrapBand;

} // namespace cumcal
