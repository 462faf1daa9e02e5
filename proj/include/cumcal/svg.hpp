#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace cumcal::svg {

using Point = std::pair<double, double>;

auto escape(std::string_view text) -> std::string;

// Minimal SVG 1.1 writer. Coordinates are printed with two decimals so output is byte-stable.
class Document
{
public:
    Document(double width, double height);

    auto width() const noexcept -> double { return width_; }
    auto height() const noexcept -> double { return height_; }

    auto line(Point from, Point to, std::string_view cls, std::string_view style) -> void;
    auto polyline(std::span<Point const> points, std::string_view cls, std::string_view style) -> void;
    auto polygon(std::span<Point const> points, std::string_view cls, std::string_view style) -> void;
    auto circle(Point center, double radius, std::string_view cls, std::string_view style) -> void;
    auto rect(Point corner, double width, double height, std::string_view cls, std::string_view style) -> void;
    // anchor is start, middle or end; rotate is in degrees about the anchor point.
    auto text(Point at, std::string_view content, std::string_view cls, std::string_view anchor = "start",
              double rotate = 0.0) -> void;

    auto str() const -> std::string;

private:
    double width_;
    double height_;
    std::string body_;
};

} // namespace cumcal::svg
