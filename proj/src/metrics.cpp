#include <cumcal/errors.hpp>
#include <cumcal/metrics.hpp>

#include <algorithm>
#include <cmath>

namespace cumcal {

namespace {

// Kahan-Babuska (Neumaier) summation.
class CompensatedSum
{
public:
    auto operator+=(double value) noexcept -> CompensatedSum&
    {
        auto const t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            compensation_ += (sum_ - t) + value;
        else
            compensation_ += (value - t) + sum_;
        sum_ = t;
        return *this;
    }

    auto value() const noexcept -> double { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

} // namespace

auto ece(Dataset const& ds, BinningSpec const& spec) -> EceReport
{
    auto bins = assign_bins(ds, spec);
    CompensatedSum l1;
    CompensatedSum l2;
    for (auto const& bin : bins)
    {
        auto const gap = bin.avg_response - bin.avg_score;
        l1 += bin.weight * std::abs(gap);
        l2 += bin.weight * gap * gap;
    }
    return {l1.value(), l2.value(), spec, std::move(bins)};
}

auto cumulative_curve(Dataset const& ds) -> CumulativeCurve
{
    auto const n = ds.size();
    auto const scale = 1.0 / static_cast<double>(n);

    CumulativeCurve curve;
    curve.values.resize(n + 1);
    curve.abscissas.resize(n + 1);
    CompensatedSum running;
    for (std::size_t k = 1; k <= n; ++k)
    {
        running += static_cast<double>(ds[k - 1].response) - ds[k - 1].score;
        curve.values[k] = running.value() / static_cast<double>(n);
        curve.abscissas[k] = static_cast<double>(k) * scale;
    }
    curve.abscissas[n] = 1.0;
    return curve;
}

auto sigma_n(Dataset const& ds) -> double
{
    CompensatedSum variance;
    for (auto const& sample : ds.samples()) variance += sample.score * (1.0 - sample.score);
    auto const total = variance.value();
    if (!(total > 0.0)) throw ValidationError{"degenerate scores: sigma_n is zero"};
    return std::sqrt(total) / static_cast<double>(ds.size());
}

auto ecce(CumulativeCurve const& curve, double sigma, TailFunctions const& tails) -> EcceReport
{
    if (!(sigma > 0.0)) throw ValidationError{"degenerate scores: sigma_n is zero"};

    double mad = 0.0;
    double highest = 0.0;
    double lowest = 0.0;
    for (auto const value : curve.values)
    {
        mad = std::max(mad, std::abs(value));
        highest = std::max(highest, value);
        lowest = std::min(lowest, value);
    }

    EcceReport report{};
    report.ecce_mad = mad;
    report.ecce_r = highest - lowest;
    report.sigma_n = sigma;
    report.mad_normalized = report.ecce_mad / sigma;
    report.r_normalized = report.ecce_r / sigma;
    report.p_mad = tails.maxabs ? tails.maxabs(report.mad_normalized) : 1.0;
    report.p_r = tails.range ? tails.range(report.r_normalized) : 1.0;
    return report;
}

auto ecce(Dataset const& ds, TailFunctions const& tails) -> EcceReport
{
    return ecce(cumulative_curve(ds), sigma_n(ds), tails);
}

auto max_interval_miscalibration(Dataset const& ds) -> double
{
    auto const n = ds.size();
    double best = 0.0;
    for (std::size_t first = 0; first < n; ++first)
    {
        CompensatedSum total;
        for (std::size_t last = first; last < n; ++last)
        {
            total += static_cast<double>(ds[last].response) - ds[last].score;
            best = std::max(best, std::abs(total.value()));
        }
    }
    return best / static_cast<double>(n);
}

} // namespace cumcal
