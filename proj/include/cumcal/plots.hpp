#pragma once

#include <cumcal/binning.hpp>
#include <cumcal/experiments.hpp>
#include <cumcal/metrics.hpp>

#include <optional>
#include <span>
#include <string>

namespace cumcal {

enum class PlotKind
{
    reliability,
    cumulative,
    sweep_lines,
};

struct PlotSpec
{
    std::string title;
    double width = 640;
    double height = 480;
    std::string x_label;
    std::string y_label;
    PlotKind kind = PlotKind::reliability;
};

// Maps data coordinates into the pixel box of a plot, optionally with a base-10 logarithmic x-axis.
struct PlotFrame
{
    double left, top, right, bottom; // pixel box
    double x_min, x_max, y_min, y_max;
    bool log_x = false;

    auto px(double x) const -> double;
    auto py(double y) const -> double;
};

// Pixel box for a canvas of the PlotSpec's size (the sweep plot also reserves a legend column on the right).
auto plot_frame(PlotSpec const& spec, double x_min, double x_max, double y_min, double y_max, bool log_x = false)
    -> PlotFrame;

/*
    Average response against average score per bin, joined by straight segments and marked, over the diagonal.
    Bootstrap curves, when given, are drawn beneath in light gray. Axes are fixed to [0, 1] on both sides.
*/
auto reliability_diagram(std::span<BinSummary const> bins, BootstrapBand const* band, PlotSpec const& spec)
    -> std::string;

/*
    C_k against k/n with a horizontal line at zero and a scale triangle at the origin: apex at (0, 0), vertical base
    from -2 sigma to +2 sigma, so sigma is a quarter of the triangle's height. The y-range is symmetric and covers
    max(|C_k|, 2 sigma). Long curves keep the first, lowest, highest and last point of every pixel column.
    When a report is supplied its ECCE values and P-values go into the legend.
*/
auto cumulative_plot(CumulativeCurve const& curve, double sigma, PlotSpec const& spec,
                     std::optional<EcceReport> const& report = std::nullopt) -> std::string;

// Legend line for a report, e.g. "ECCE-MAD = 0.03306/σₙ = 111.7 (P = 3.8e-05)".
auto ecce_legend(EcceReport const& report) -> std::vector<std::string>;

// One line per series with a legend entry each; logarithmic x-axis once the axis spans a decade or more.
auto sweep_plot(SweepResult const& result, PlotSpec const& spec) -> std::string;

// True when sweep_plot would use a logarithmic x-axis for this axis.
auto uses_log_axis(std::span<std::size_t const> axis) -> bool;

} // namespace cumcal
