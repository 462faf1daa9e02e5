#include <cumcal/errors.hpp>
#include <cumcal/experiments.hpp>
#include <cumcal/metrics.hpp>
#include <cumcal/rng.hpp>

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace cumcal {

auto SeriesKey::name() const -> std::string
{
    std::string result = metric;
    for (auto const* part : {&grid, &strategy, &calibration})
        if (!part->empty()) result += "/" + *part;
    return result;
}

auto SweepResult::find(SeriesKey const& key) const -> Series const&
{
    for (auto const& entry : series)
        if (entry.key == key) return entry;
    throw std::out_of_range{fmt::format("no series named '{}'", key.name())};
}

auto sweep_bins(Dataset const& ds, std::span<std::size_t const> bin_counts) -> SweepResult
{
    if (bin_counts.empty()) throw ValidationError{"no bin counts given"};

    SweepResult result;
    result.axis.assign(bin_counts.begin(), bin_counts.end());
    for (auto const strategy : {BinStrategy::equispaced, BinStrategy::equal_count})
    {
        Series l1{{"ece1", "", std::string{to_string(strategy)}, ""}, {}};
        Series l2{{"ece2", "", std::string{to_string(strategy)}, ""}, {}};
        for (auto const m : bin_counts)
        {
            auto const report = ece(ds, {strategy, m});
            l1.values.push_back(report.ece1);
            l2.values.push_back(report.ece2);
        }
        result.series.push_back(std::move(l1));
        result.series.push_back(std::move(l2));
    }
    return result;
}

namespace {

constexpr std::array metric_names{"ece1", "ece2", "ecce_mad", "ecce_r", "ecce_mad_normalized", "ecce_r_normalized"};
using CellMetrics = std::array<double, metric_names.size()>;

struct Cell
{
    std::size_t size_index, grid_index, calibration_index, realization;
};

class SweepPlan
{
public:
    explicit SweepPlan(SweepNConfig const& config) : config_{config}
    {
        if (config.sizes.empty()) throw ValidationError{"no sample sizes given"};
        if (config.realizations < 1) throw ValidationError{"realizations must be at least 1"};
        if (config.draws_per_bin < 1) throw ValidationError{"draws per bin must be at least 1"};
        if (config.family.grids.empty() || config.family.calibrations.empty())
            throw ValidationError{"sweep family needs at least one grid and one calibration"};
        for (std::size_t i = 0; i < config.sizes.size(); ++i)
        {
            auto const n = config.sizes[i];
            if (n < config.draws_per_bin || n % config.draws_per_bin != 0)
                throw ValidationError{fmt::format("draws per bin {} does not divide size {}", config.draws_per_bin, n)};
            if (i > 0 && !(config.sizes[i - 1] < n)) throw ValidationError{"sizes must be strictly ascending"};
        }
    }

    auto cell_count() const noexcept -> std::size_t
    {
        return config_.sizes.size() * config_.family.grids.size() * config_.family.calibrations.size() *
               config_.realizations;
    }

    // Realization index varies fastest.
    auto cell(std::size_t index) const noexcept -> Cell
    {
        Cell c{};
        c.realization = index % config_.realizations;
        index /= config_.realizations;
        c.calibration_index = index % config_.family.calibrations.size();
        index /= config_.family.calibrations.size();
        c.grid_index = index % config_.family.grids.size();
        c.size_index = index / config_.family.grids.size();
        return c;
    }

    auto evaluate(std::size_t index) const -> CellMetrics
    {
        auto const c = cell(index);
        auto const n = config_.sizes[c.size_index];
        auto const ds = synthesize({{config_.family.grids[c.grid_index], n},
                                    config_.family.calibrations[c.calibration_index],
                                    derive_seed(config_.seed, {c.realization})});
        auto const binned = ece(ds, {BinStrategy::equal_count, n / config_.draws_per_bin});
        auto const cumulative = ecce(ds, TailFunctions{});
        return {binned.ece1,          binned.ece2,
                cumulative.ecce_mad,  cumulative.ecce_r,
                cumulative.mad_normalized, cumulative.r_normalized};
    }

    auto reduce(std::vector<CellMetrics> const& cells) const -> SweepResult
    {
        SweepResult result;
        result.axis = config_.sizes;
        result.realizations = config_.realizations;

        auto const& family = config_.family;
        auto const per_size = family.grids.size() * family.calibrations.size() * config_.realizations;
        for (std::size_t g = 0; g < family.grids.size(); ++g)
            for (std::size_t cal = 0; cal < family.calibrations.size(); ++cal)
                for (std::size_t metric = 0; metric < metric_names.size(); ++metric)
                {
                    Series series;
                    series.key = {metric_names[metric], std::string{to_string(family.grids[g])},
                                  metric < 2 ? std::string{to_string(BinStrategy::equal_count)} : std::string{},
                                  family.calibrations[cal].label()};
                    for (std::size_t s = 0; s < config_.sizes.size(); ++s)
                    {
                        auto const first = s * per_size + (g * family.calibrations.size() + cal) * config_.realizations;
                        double total = 0.0;
                        for (std::size_t r = 0; r < config_.realizations; ++r) total += cells[first + r][metric];
                        series.values.push_back(total / static_cast<double>(config_.realizations));
                    }
                    result.series.push_back(std::move(series));
                }
        return result;
    }

private:
    SweepNConfig const& config_;
};

} // namespace

auto sweep_n(SweepNConfig const& config) -> SweepResult
{
    SweepPlan const plan{config};
    std::vector<CellMetrics> cells(plan.cell_count());
    auto const count = static_cast<std::int64_t>(cells.size());

    // Exceptions cannot cross the OpenMP region; keep the first one and rethrow after the loop.
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i)
    {
        try
        {
            cells[static_cast<std::size_t>(i)] = plan.evaluate(static_cast<std::size_t>(i));
        }
        catch (...)
        {
#pragma omp critical(cumcal_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    return plan.reduce(cells);
}

auto sweep_n_serial(SweepNConfig const& config) -> SweepResult
{
    SweepPlan const plan{config};
    std::vector<CellMetrics> cells(plan.cell_count());
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = plan.evaluate(i);
    return plan.reduce(cells);
}

auto diagram_curve(std::span<BinSummary const> bins) -> DiagramCurve
{
    DiagramCurve curve;
    for (auto const& bin : bins)
    {
        curve.avg_score.push_back(bin.avg_score);
        curve.avg_response.push_back(bin.avg_response);
    }
    return curve;
}

auto bootstrap_band(Dataset const& ds, BinningSpec const& spec, std::size_t curves, std::uint64_t seed)
    -> BootstrapBand
{
    if (curves < 1) throw ValidationError{"bootstrap needs at least one curve"};
    // Validates the binning against n up front; every resample has the same n.
    static_cast<void>(assign_bins(ds, spec));

    auto const n = ds.size();
    BootstrapBand band{std::vector<DiagramCurve>(curves), spec};
    for (std::size_t c = 0; c < curves; ++c)
    {
        auto const draw_seed = derive_seed(seed, {c, 0});
        std::vector<RawPair> resample(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            auto const pick = std::min(static_cast<std::size_t>(counter_uniform(draw_seed, i) * static_cast<double>(n)), n - 1);
            resample[i] = {ds[pick].score, ds[pick].response};
        }
        auto const canonical = canonicalize(resample, derive_seed(seed, {c, 1}));
        band.curves[c] = diagram_curve(assign_bins(canonical, spec));
    }
    return band;
}

} // namespace cumcal
