#include <cumcal/errors.hpp>
#include <cumcal/report.hpp>

namespace cumcal {

auto ecce_section(Dataset const& ds, TailFunctions const& tails) -> EcceSection
{
    try
    {
        return {ecce(ds, tails), {}};
    }
    catch (ValidationError const& error)
    {
        return {std::nullopt, error.what()};
    }
}

auto to_json(ReportDocument const& doc) -> nlohmann::ordered_json
{
    if (doc.ece_sections.empty() && !doc.ecce_section)
        throw ValidationError{"report needs an ece or an ecce section"};

    nlohmann::ordered_json json;
    json["n"] = doc.n;
    if (!doc.ece_sections.empty())
    {
        auto& sections = json["ece_sections"] = nlohmann::ordered_json::array();
        for (auto const& section : doc.ece_sections)
            sections.push_back({{"strategy", to_string(section.strategy)},
                                {"m", section.m},
                                {"ece1", section.ece1},
                                {"ece2", section.ece2}});
    }
    if (doc.ecce_section)
    {
        if (auto const& report = doc.ecce_section->report)
            json["ecce_section"] = {{"ecce_mad", report->ecce_mad},
                                    {"ecce_r", report->ecce_r},
                                    {"sigma_n", report->sigma_n},
                                    {"mad_normalized", report->mad_normalized},
                                    {"r_normalized", report->r_normalized},
                                    {"p_mad", report->p_mad},
                                    {"p_r", report->p_r}};
        else
            json["ecce_section"] = {{"error", doc.ecce_section->error}};
    }
    json["provenance"] = {{"source", doc.provenance.source},
                          {"seed", doc.provenance.seed},
                          {"tool_version", doc.provenance.tool_version}};
    return json;
}

auto report_from_json(nlohmann::ordered_json const& json) -> ReportDocument
{
    ReportDocument doc;
    doc.n = json.at("n").get<std::size_t>();
    if (json.contains("ece_sections"))
        for (auto const& section : json.at("ece_sections"))
            doc.ece_sections.push_back({parse_bin_strategy(section.at("strategy").get<std::string>()),
                                        section.at("m").get<std::size_t>(), section.at("ece1").get<double>(),
                                        section.at("ece2").get<double>()});
    if (json.contains("ecce_section"))
    {
        auto const& section = json.at("ecce_section");
        if (section.contains("error"))
            doc.ecce_section = EcceSection{std::nullopt, section.at("error").get<std::string>()};
        else
            doc.ecce_section = EcceSection{
                EcceReport{section.at("ecce_mad").get<double>(), section.at("ecce_r").get<double>(),
                           section.at("sigma_n").get<double>(), section.at("mad_normalized").get<double>(),
                           section.at("r_normalized").get<double>(), section.at("p_mad").get<double>(),
                           section.at("p_r").get<double>()},
                {}};
    }
    auto const& provenance = json.at("provenance");
    doc.provenance = {provenance.at("source").get<std::string>(), provenance.at("seed").get<std::uint64_t>(),
                      provenance.at("tool_version").get<std::string>()};
    return doc;
}

} // namespace cumcal
