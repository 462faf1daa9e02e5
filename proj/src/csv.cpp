#include <cumcal/csv.hpp>
#include <cumcal/errors.hpp>

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace cumcal {

namespace {

auto trim(std::string_view text) -> std::string_view
{
    auto const first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    auto const last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

template <typename T>
auto parse_field(std::string_view field, std::size_t line, std::string_view what) -> T
{
    field = trim(field);
    T value{};
    auto const [end, error] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || error != std::errc{} || end != field.data() + field.size())
        throw ValidationError{fmt::format("line {}: {} '{}' is not a number", line, what, field)};
    return value;
}

} // namespace

auto parse_csv(std::string_view text) -> std::vector<RawPair>
{
    std::vector<RawPair> pairs;
    std::size_t line_number = 0;
    bool have_header = false;
    while (!text.empty())
    {
        auto const newline = text.find('\n');
        auto const line = trim(text.substr(0, newline));
        text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
        ++line_number;

        if (!have_header)
        {
            if (line != "score,response")
                throw ValidationError{fmt::format("line {}: expected header 'score,response'", line_number)};
            have_header = true;
            continue;
        }
        if (line.empty()) continue;

        auto const comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw ValidationError{fmt::format("line {}: expected two comma-separated fields", line_number)};
        auto const score = parse_field<double>(line.substr(0, comma), line_number, "score");
        auto const response = parse_field<int>(line.substr(comma + 1), line_number, "response");

        RawPair const pair{score, response};
        validate_pair(pair, line_number, "line");
        pairs.push_back(pair);
    }
    if (!have_header) throw ValidationError{"line 1: expected header 'score,response'"};
    return pairs;
}

auto read_csv(std::filesystem::path const& path) -> std::vector<RawPair>
{
    std::ifstream in{path, std::ios::binary};
    if (!in) throw IoError{fmt::format("cannot open '{}' for reading", path.string())};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError{fmt::format("failed reading '{}'", path.string())};
    return parse_csv(buffer.view());
}

auto format_csv(std::span<RawPair const> pairs) -> std::string
{
    std::string out = "score,response\n";
    for (auto const& [score, response] : pairs) fmt::format_to(std::back_inserter(out), "{:.17g},{}\n", score, response);
    return out;
}

auto write_csv(std::span<RawPair const> pairs, std::filesystem::path const& path) -> void
{
    for (std::size_t k = 0; k < pairs.size(); ++k) validate_pair(pairs[k], k + 1);
    write_file_atomic(path, format_csv(pairs));
}

auto to_pairs(Dataset const& ds) -> std::vector<RawPair>
{
    std::vector<RawPair> pairs;
    pairs.reserve(ds.size());
    for (auto const& sample : ds.samples()) pairs.emplace_back(sample.score, sample.response);
    return pairs;
}

auto format_sweep_csv(SweepResult const& result) -> std::string
{
    std::string out = "axis";
    for (auto const& series : result.series) out += "," + series.key.name();
    out += '\n';
    for (std::size_t i = 0; i < result.axis.size(); ++i)
    {
        out += std::to_string(result.axis[i]);
        for (auto const& series : result.series) fmt::format_to(std::back_inserter(out), ",{}", series.values.at(i));
        out += '\n';
    }
    return out;
}

auto write_file_atomic(std::filesystem::path const& path, std::string_view contents) -> void
{
    auto temporary = path;
    temporary += ".tmp";
    {
        std::ofstream out{temporary, std::ios::binary | std::ios::trunc};
        if (!out) throw IoError{fmt::format("cannot open '{}' for writing", path.string())};
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out)
        {
            out.close();
            std::error_code ignored;
            std::filesystem::remove(temporary, ignored);
            throw IoError{fmt::format("failed writing '{}'", path.string())};
        }
    }
    std::error_code error;
    std::filesystem::rename(temporary, path, error);
    if (error)
    {
        std::error_code ignored;
        std::filesystem::remove(temporary, ignored);
        throw IoError{fmt::format("cannot move output into '{}': {}", path.string(), error.message())};
    }
}

} // namespace cumcal
