#pragma once

#include <cumcal/metrics.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cumcal {

inline constexpr auto tool_version = "0.1.0";

struct EceSection
{
    BinStrategy strategy;
    std::size_t m;
    double ece1;
    double ece2;
};

struct Provenance
{
    std::string source; // input path or synthetic configuration
    std::uint64_t seed = 0;
    std::string tool_version = cumcal::tool_version;
};

// Either the ECCE statistics or the reason they could not be computed.
struct EcceSection
{
    std::optional<EcceReport> report;
    std::string error;
};

struct ReportDocument
{
    std::size_t n = 0;
    std::vector<EceSection> ece_sections;
    std::optional<EcceSection> ecce_section;
    Provenance provenance;
};

// Runs ecce() and captures a degenerate sigma_n as an error section.
auto ecce_section(Dataset const& ds, TailFunctions const& tails) -> EcceSection;

// Field names match the struct members. Throws ValidationError when neither section is present.
auto to_json(ReportDocument const& doc) -> nlohmann::ordered_json;
auto report_from_json(nlohmann::ordered_json const& json) -> ReportDocument;

} // namespace cumcal
