#include <cumcal/errors.hpp>
#include <cumcal/plots.hpp>
#include <cumcal/svg.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace cumcal {

namespace {

constexpr double margin_left = 70;
constexpr double margin_right = 20;
constexpr double margin_top = 40;
constexpr double margin_bottom = 55;
constexpr double legend_column = 260;
constexpr double legend_row = 13;

constexpr auto axis_style = "stroke:black;stroke-width:1";
constexpr auto band_style = "stroke:#c8c8c8;stroke-width:1";

auto validate(PlotSpec const& spec) -> void
{
    if (!(spec.width > 0 && spec.height > 0) || !std::isfinite(spec.width) || !std::isfinite(spec.height))
        throw ValidationError{"plot dimensions must be positive"};
    if (spec.width <= margin_left + margin_right + legend_column * (spec.kind == PlotKind::sweep_lines) ||
        spec.height <= margin_top + margin_bottom)
        throw ValidationError{fmt::format("plot of {}x{} pixels is too small", spec.width, spec.height)};
}

// Round-number ticks covering [lo, hi].
auto linear_ticks(double lo, double hi) -> std::vector<double>
{
    auto const raw = (hi - lo) / 5.0;
    auto const magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    auto step = magnitude;
    for (auto const factor : {1.0, 2.0, 5.0, 10.0})
        if (factor * magnitude >= raw)
        {
            step = factor * magnitude;
            break;
        }

    std::vector<double> ticks;
    for (auto tick = std::ceil(lo / step - 1e-9) * step; tick <= hi + 1e-9 * step; tick += step)
        ticks.push_back(std::abs(tick) < 1e-12 * step ? 0.0 : tick);
    return ticks;
}

auto tick_label(double value) -> std::string { return fmt::format("{:.4g}", value); }

auto draw_frame(svg::Document& doc, PlotFrame const& frame, PlotSpec const& spec, std::span<double const> x_ticks,
                std::span<double const> y_ticks) -> void
{
    doc.rect({frame.left, frame.top}, frame.right - frame.left, frame.bottom - frame.top, "frame",
             "fill:none;stroke:black;stroke-width:1");
    for (auto const x : x_ticks)
    {
        auto const px = frame.px(x);
        doc.line({px, frame.bottom}, {px, frame.bottom + 5}, "tick", axis_style);
        doc.text({px, frame.bottom + 18}, tick_label(x), "tick-label", "middle");
    }
    for (auto const y : y_ticks)
    {
        auto const py = frame.py(y);
        doc.line({frame.left - 5, py}, {frame.left, py}, "tick", axis_style);
        doc.text({frame.left - 8, py + 4}, tick_label(y), "tick-label", "end");
    }
    doc.text({0.5 * (frame.left + frame.right), margin_top - 15}, spec.title, "title", "middle");
    doc.text({0.5 * (frame.left + frame.right), frame.bottom + 40}, spec.x_label, "axis-label", "middle");
    doc.text({18, 0.5 * (frame.top + frame.bottom)}, spec.y_label, "axis-label", "middle", -90.0);
}

auto to_pixels(PlotFrame const& frame, std::span<double const> xs, std::span<double const> ys)
    -> std::vector<svg::Point>
{
    std::vector<svg::Point> points;
    points.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::isfinite(xs[i]) && std::isfinite(ys[i])) points.emplace_back(frame.px(xs[i]), frame.py(ys[i]));
    return points;
}

// Keeps first, min, max and last of each pixel column, in their original order.
auto thin_polyline(std::vector<svg::Point> const& points, double columns) -> std::vector<svg::Point>
{
    if (points.size() <= static_cast<std::size_t>(4 * columns)) return points;

    std::vector<svg::Point> kept;
    for (std::size_t begin = 0; begin < points.size();)
    {
        auto const column = std::floor(points[begin].first);
        auto end = begin;
        auto low = begin;
        auto high = begin;
        while (end < points.size() && std::floor(points[end].first) == column)
        {
            if (points[end].second < points[low].second) low = end;
            if (points[end].second > points[high].second) high = end;
            ++end;
        }
        std::array picks{begin, std::min(low, high), std::max(low, high), end - 1};
        for (std::size_t i = 0; i < picks.size(); ++i)
            if (i == 0 || picks[i] != picks[i - 1]) kept.push_back(points[picks[i]]);
        begin = end;
    }
    return kept;
}

auto format_p(double p) -> std::string { return p == 0.0 ? "0" : fmt::format("{:.2g}", p); }

} // namespace

auto PlotFrame::px(double x) const -> double
{
    auto const t = log_x ? (std::log10(x) - std::log10(x_min)) / (std::log10(x_max) - std::log10(x_min))
                         : (x - x_min) / (x_max - x_min);
    return left + t * (right - left);
}

auto PlotFrame::py(double y) const -> double { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); }

auto plot_frame(PlotSpec const& spec, double x_min, double x_max, double y_min, double y_max, bool log_x) -> PlotFrame
{
    auto const right = spec.width - margin_right - (spec.kind == PlotKind::sweep_lines ? legend_column : 0.0);
    return {margin_left, margin_top, right, spec.height - margin_bottom, x_min, x_max, y_min, y_max, log_x};
}

auto reliability_diagram(std::span<BinSummary const> bins, BootstrapBand const* band, PlotSpec const& spec)
    -> std::string
{
    validate(spec);
    if (bins.empty()) throw ValidationError{"reliability diagram needs at least one bin"};

    auto const frame = plot_frame(spec, 0.0, 1.0, 0.0, 1.0);
    svg::Document doc{spec.width, spec.height};
    auto const ticks = linear_ticks(0.0, 1.0);
    draw_frame(doc, frame, spec, ticks, ticks);

    if (band != nullptr)
        for (auto const& curve : band->curves)
            doc.polyline(to_pixels(frame, curve.avg_score, curve.avg_response), "bootstrap", band_style);

    doc.line({frame.px(0.0), frame.py(0.0)}, {frame.px(1.0), frame.py(1.0)}, "diagonal",
             "stroke:black;stroke-width:1;stroke-dasharray:4,3");

    auto const main = diagram_curve(bins);
    auto const points = to_pixels(frame, main.avg_score, main.avg_response);
    doc.polyline(points, "reliability", "stroke:#1f4e9c;stroke-width:1.5");
    for (auto const& point : points) doc.circle(point, 2.5, "marker", "fill:#1f4e9c");
    return doc.str();
}

auto ecce_legend(EcceReport const& report) -> std::vector<std::string>
{
    return {fmt::format("ECCE-MAD = {:.4g}/σₙ = {:.4g} (P = {})", report.ecce_mad, report.mad_normalized,
                        format_p(report.p_mad)),
            fmt::format("ECCE-R = {:.4g}/σₙ = {:.4g} (P = {})", report.ecce_r, report.r_normalized,
                        format_p(report.p_r))};
}

auto cumulative_plot(CumulativeCurve const& curve, double sigma, PlotSpec const& spec,
                     std::optional<EcceReport> const& report) -> std::string
{
    validate(spec);
    if (curve.values.size() < 2 || curve.values.size() != curve.abscissas.size())
        throw ValidationError{"cumulative curve needs n + 1 >= 2 matching values and abscissas"};
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError{"sigma must be positive"};

    double extent = 2.0 * sigma;
    for (auto const value : curve.values) extent = std::max(extent, std::abs(value));
    extent *= 1.1;

    auto const frame = plot_frame(spec, 0.0, 1.0, -extent, extent);
    svg::Document doc{spec.width, spec.height};
    auto const y_ticks = linear_ticks(-extent, extent);
    draw_frame(doc, frame, spec, linear_ticks(0.0, 1.0), y_ticks);

    doc.line({frame.px(0.0), frame.py(0.0)}, {frame.px(1.0), frame.py(0.0)}, "zero", "stroke:#808080;stroke-width:1");

    auto const base_x = 0.04;
    std::array<svg::Point, 3> const triangle{svg::Point{frame.px(0.0), frame.py(0.0)},
                                             svg::Point{frame.px(base_x), frame.py(-2.0 * sigma)},
                                             svg::Point{frame.px(base_x), frame.py(2.0 * sigma)}};
    doc.polygon(triangle, "scale-triangle", "fill:none;stroke:black;stroke-width:1");

    auto const points = to_pixels(frame, curve.abscissas, curve.values);
    doc.polyline(thin_polyline(points, frame.right - frame.left), "cumulative", "stroke:#1f4e9c;stroke-width:1.2");

    if (report)
    {
        auto const lines = ecce_legend(*report);
        for (std::size_t i = 0; i < lines.size(); ++i)
            doc.text({frame.left + 8, frame.top + 16 + 15 * static_cast<double>(i)}, lines[i], "legend");
    }
    return doc.str();
}

auto uses_log_axis(std::span<std::size_t const> axis) -> bool
{
    if (axis.empty()) return false;
    auto const [lo, hi] = std::ranges::minmax(axis);
    return lo > 0 && static_cast<double>(hi) >= 10.0 * static_cast<double>(lo);
}

auto sweep_plot(SweepResult const& result, PlotSpec const& spec) -> std::string
{
    PlotSpec canvas = spec;
    canvas.kind = PlotKind::sweep_lines;
    validate(canvas);
    if (result.axis.empty() || result.series.empty()) throw ValidationError{"sweep plot needs a non-empty result"};
    for (auto const& series : result.series)
        if (series.values.size() != result.axis.size())
            throw ValidationError{fmt::format("series '{}' does not match the axis length", series.key.name())};

    auto const log_x = uses_log_axis(result.axis);
    auto const [axis_lo, axis_hi] = std::ranges::minmax(result.axis);
    auto x_min = static_cast<double>(axis_lo);
    auto x_max = static_cast<double>(axis_hi);
    if (x_min == x_max)
    {
        x_min = log_x ? x_min / 2 : x_min - 1;
        x_max = log_x ? x_max * 2 : x_max + 1;
    }

    auto y_min = std::numeric_limits<double>::infinity();
    auto y_max = -std::numeric_limits<double>::infinity();
    for (auto const& series : result.series)
        for (auto const value : series.values)
            if (std::isfinite(value))
            {
                y_min = std::min(y_min, value);
                y_max = std::max(y_max, value);
            }
    if (!std::isfinite(y_min)) throw ValidationError{"sweep plot has no finite values"};
    auto const pad = y_max > y_min ? 0.05 * (y_max - y_min) : std::max(std::abs(y_max) * 0.1, 1e-3);
    y_min -= pad;
    y_max += pad;

    // Grow the canvas downward if the legend needs more rows than fit.
    auto const legend_height = margin_top + legend_row * static_cast<double>(result.series.size()) + 10;
    canvas.height = std::max(canvas.height, legend_height);
    auto const frame = plot_frame(canvas, x_min, x_max, y_min, y_max, log_x);
    svg::Document doc{canvas.width, canvas.height};

    std::vector<double> x_ticks;
    if (log_x)
        for (auto const value : result.axis) x_ticks.push_back(static_cast<double>(value));
    else
        x_ticks = linear_ticks(x_min, x_max);
    draw_frame(doc, frame, canvas, x_ticks, linear_ticks(y_min, y_max));

    static constexpr std::array palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    static constexpr std::array dashes{"", "stroke-dasharray:6,3;", "stroke-dasharray:2,2;", "stroke-dasharray:8,3,2,3;"};

    std::vector<double> xs;
    for (auto const value : result.axis) xs.push_back(static_cast<double>(value));
    for (std::size_t i = 0; i < result.series.size(); ++i)
    {
        auto const style = fmt::format("stroke:{};stroke-width:1.5;{}", palette[i % palette.size()],
                                       dashes[(i / palette.size()) % dashes.size()]);
        doc.polyline(to_pixels(frame, xs, result.series[i].values), "series", style);

        auto const row = frame.top + legend_row * static_cast<double>(i) + 8;
        doc.line({frame.right + 12, row - 4}, {frame.right + 36, row - 4}, "legend-swatch", style);
        doc.text({frame.right + 40, row}, result.series[i].key.name(), "legend");
    }
    return doc.str();
}

} // namespace cumcal
