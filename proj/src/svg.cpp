#include <cumcal/svg.hpp>

#include <fmt/format.h>

namespace cumcal::svg {

auto escape(std::string_view text) -> std::string
{
    std::string out;
    out.reserve(text.size());
    for (auto const c : text)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

namespace {

auto points_attribute(std::span<Point const> points) -> std::string
{
    std::string out;
    for (auto const& [x, y] : points)
    {
        if (!out.empty()) out += ' ';
        fmt::format_to(std::back_inserter(out), "{:.2f},{:.2f}", x, y);
    }
    return out;
}

} // namespace

Document::Document(double width, double height) : width_{width}, height_{height} {}

auto Document::line(Point from, Point to, std::string_view cls, std::string_view style) -> void
{
    fmt::format_to(std::back_inserter(body_), "<line class=\"{}\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" style=\"{}\"/>\n",
                   cls, from.first, from.second, to.first, to.second, style);
}

auto Document::polyline(std::span<Point const> points, std::string_view cls, std::string_view style) -> void
{
    fmt::format_to(std::back_inserter(body_), "<polyline class=\"{}\" points=\"{}\" style=\"fill:none;{}\"/>\n", cls,
                   points_attribute(points), style);
}

auto Document::polygon(std::span<Point const> points, std::string_view cls, std::string_view style) -> void
{
    fmt::format_to(std::back_inserter(body_), "<polygon class=\"{}\" points=\"{}\" style=\"{}\"/>\n", cls,
                   points_attribute(points), style);
}

auto Document::circle(Point center, double radius, std::string_view cls, std::string_view style) -> void
{
    fmt::format_to(std::back_inserter(body_), "<circle class=\"{}\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" style=\"{}\"/>\n",
                   cls, center.first, center.second, radius, style);
}

auto Document::rect(Point corner, double width, double height, std::string_view cls, std::string_view style) -> void
{
    fmt::format_to(std::back_inserter(body_),
                   "<rect class=\"{}\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" style=\"{}\"/>\n", cls,
                   corner.first, corner.second, width, height, style);
}

auto Document::text(Point at, std::string_view content, std::string_view cls, std::string_view anchor, double rotate)
    -> void
{
    auto const transform =
        rotate == 0.0 ? std::string{}
                      : fmt::format(" transform=\"rotate({:.2f} {:.2f} {:.2f})\"", rotate, at.first, at.second);
    fmt::format_to(std::back_inserter(body_), "<text class=\"{}\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"{}\"{}>{}</text>\n",
                   cls, at.first, at.second, anchor, transform, escape(content));
}

auto Document::str() const -> std::string
{
    return fmt::format("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                       "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
                       "viewBox=\"0 0 {0:.0f} {1:.0f}\" style=\"font-family:sans-serif;font-size:12px\">\n"
                       "<rect class=\"background\" x=\"0\" y=\"0\" width=\"{0:.0f}\" height=\"{1:.0f}\" style=\"fill:white\"/>\n"
                       "{2}</svg>\n",
                       width_, height_, body_);
}

} // namespace cumcal::svg
