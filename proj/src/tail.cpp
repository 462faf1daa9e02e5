#include <cumcal/errors.hpp>
#include <cumcal/tail.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cumcal {

namespace {

constexpr double relative_tolerance = 1e-16;
constexpr int max_terms = 200;

auto check_argument(double x) -> void
{
    if (!std::isfinite(x)) throw ValidationError{"tail probability argument must be finite"};
    if (x < 0.0) throw ValidationError{fmt::format("tail probability argument {} is negative", x)};
}

// Sums term(0), term(1), ... until the remainder bound remainder_scale * |next term| falls below the tolerance
// relative to target(sum). For alternating series with shrinking terms remainder_scale is 1.
template <typename Term, typename Target>
auto sum_series(Term term, Target target, double remainder_scale = 1.0) -> TailResult
{
    double sum = 0.0;
    for (int k = 0; k < max_terms; ++k)
    {
        auto const next = term(k);
        auto const bound = remainder_scale * std::abs(next);
        auto const p = std::clamp(target(sum), 0.0, 1.0);
        if (bound <= relative_tolerance * std::max(p, 1e-300)) return {p, k, bound};
        sum += next;
    }
    return {std::clamp(target(sum), 0.0, 1.0), max_terms, remainder_scale * std::abs(term(max_terms))};
}

} // namespace

auto to_string(TailKind kind) -> std::string_view
{
    return kind == TailKind::max_abs ? "max_abs" : "range";
}

auto normal_upper_tail(double x) -> double { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

auto tail_maxabs_small_x(double x) -> TailResult
{
    check_argument(x);
    if (x == 0.0) return {1.0, 0, 0.0};
    using std::numbers::pi;
    auto const term = [x](int k) {
        auto const odd = 2.0 * k + 1.0;
        auto const sign = k % 2 == 0 ? 1.0 : -1.0;
        return sign * (4.0 / pi) / odd * std::exp(-odd * odd * pi * pi / (8.0 * x * x));
    };
    return sum_series(term, [](double cdf) { return 1.0 - cdf; });
}

auto tail_maxabs_large_x(double x) -> TailResult
{
    check_argument(x);
    if (x == 0.0) return {1.0, 0, 0.0};
    auto const term = [x](int k) {
        auto const sign = k % 2 == 0 ? 1.0 : -1.0;
        return sign * 4.0 * normal_upper_tail((2.0 * k + 1.0) * x);
    };
    return sum_series(term, [](double tail) { return tail; });
}

auto tail_range_small_x(double x) -> TailResult
{
    check_argument(x);
    if (x == 0.0) return {1.0, 0, 0.0};
    using std::numbers::pi;
    // Positive terms, each far below half the previous one, so the next term bounds the remainder within 2x.
    auto const term = [x](int j) {
        auto const odd = 2.0 * j + 1.0;
        auto const a = odd * odd * pi * pi;
        return (8.0 / (x * x) + 8.0 / a) * std::exp(-a / (2.0 * x * x));
    };
    return sum_series(term, [](double cdf) { return 1.0 - cdf; }, 2.0);
}

auto tail_range_large_x(double x) -> TailResult
{
    check_argument(x);
    if (x == 0.0) return {1.0, 0, 0.0};
    auto const term = [x](int k) {
        auto const multiple = k + 1.0;
        auto const sign = k % 2 == 0 ? 1.0 : -1.0;
        return sign * 8.0 * multiple * normal_upper_tail(multiple * x);
    };
    return sum_series(term, [](double tail) { return tail; });
}

auto tail_maxabs(double x) -> TailResult
{
    return x < tail_crossover ? tail_maxabs_small_x(x) : tail_maxabs_large_x(x);
}

auto tail_range(double x) -> TailResult
{
    return x < tail_crossover ? tail_range_small_x(x) : tail_range_large_x(x);
}

auto tail(TailKind kind, double x) -> TailResult
{
    return kind == TailKind::max_abs ? tail_maxabs(x) : tail_range(x);
}

auto expected_null_constants() -> NullConstants
{
    using std::numbers::pi;
    return {std::sqrt(pi / 2.0), 2.0 * std::sqrt(2.0 / pi)};
}

auto brownian_tails() -> TailFunctions
{
    return {[](double x) { return tail_maxabs(x).p; }, [](double x) { return tail_range(x).p; }};
}

} // namespace cumcal
