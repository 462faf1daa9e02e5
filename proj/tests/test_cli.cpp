#include "test_support.hpp"

#include <cumcal/cli.hpp>

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace cumcal;
using cumcal::testing::ScratchDir;
using cumcal::testing::read_text;
using cumcal::testing::write_text;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

auto run(std::vector<std::string> const& args) -> Run
{
    std::ostringstream out;
    std::ostringstream err;
    auto const code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

auto file_count(std::filesystem::path const& dir) -> std::size_t
{
    std::size_t count = 0;
    for ([[maybe_unused]] auto const& entry : std::filesystem::directory_iterator{dir}) ++count;
    return count;
}

} // namespace

TEST_CASE("synthetic miscalibration is detected by the cumulative report")
{
    ScratchDir dir{"cli-synth"};
    auto const data = (dir / "d.csv").string();
    auto const report = (dir / "r.json").string();
    REQUIRE(run({"synth", "--n", "32768", "--grid", "sqrt", "--calibration", "sine:amp=0.1,freq=2", "--seed", "1",
                 "--output", data})
                .code == 0);
    auto const result = run({"cumulative", "--input", data, "--json", report});
    REQUIRE(result.code == 0);
    auto const json = nlohmann::json::parse(read_text(report));
    CHECK(json.at("n") == 32768);
    CHECK(json.at("ecce_section").at("p_mad").get<double>() < 1e-3);
    CHECK(json.at("provenance").at("source") == data);
}

TEST_CASE("compute on a single row")
{
    ScratchDir dir{"cli-one"};
    write_text(dir / "one.csv", "score,response\n0.5,1\n");
    auto const report = (dir / "r.json").string();
    auto const result = run({"compute", "--input", (dir / "one.csv").string(), "--bins", "1", "--json", report});
    REQUIRE(result.code == 0);
    auto const json = nlohmann::json::parse(read_text(report));
    CHECK(json.at("ece_sections").at(0).at("ece1").get<double>() == doctest::Approx(0.5));
    CHECK(json.at("ecce_section").at("ecce_mad").get<double>() == doctest::Approx(0.5));
    CHECK(result.out.find("ecce_mad: 0.5") != std::string::npos);
}

TEST_CASE("validation errors exit 1 with usage")
{
    ScratchDir dir{"cli-validation"};
    write_text(dir / "one.csv", "score,response\n0.5,1\n");
    auto const input = (dir / "one.csv").string();

    auto const zero = run({"compute", "--input", input, "--bins", "0"});
    CHECK(zero.code == 1);
    CHECK(zero.err.find("--bins") != std::string::npos);
    CHECK(zero.err.find("Usage") != std::string::npos);

    auto const unknown = run({"frobnicate"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("Usage") != std::string::npos);

    CHECK(run({"compute", "--input", input, "--bins", "1", "--colour", "red"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"compute", "--input", input, "--bins", "2"}).code == 1);
    CHECK(run({"compute", "--input", input, "--bins", "1", "--strategy", "quantile"}).code == 1);
    CHECK(run({"synth", "--n", "10", "--grid", "cubic", "--calibration", "perfect", "--seed", "1", "--output",
               (dir / "x.csv").string()})
              .code == 1);
    CHECK(run({"synth", "--n", "10", "--grid", "squared", "--calibration", "sine:amp=0.9,freq=2", "--seed", "1",
               "--output", (dir / "x.csv").string()})
              .code == 1);
    CHECK(run({"sweep-n", "--sizes", "100,200"}).code == 1);
    CHECK(run({"sweep-n", "--sizes", "96,64", "--seed", "1"}).code == 1);

    write_text(dir / "bad.csv", "score,response\n0.3,2\n");
    auto const bad = run({"compute", "--input", (dir / "bad.csv").string(), "--bins", "1"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("line 2") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(dir / "x.csv"));
}

TEST_CASE("I/O errors exit 2")
{
    ScratchDir dir{"cli-io"};
    auto const missing = run({"compute", "--input", (dir / "missing.csv").string(), "--bins", "1"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("missing.csv") != std::string::npos);

    write_text(dir / "one.csv", "score,response\n0.5,1\n");
    CHECK(run({"compute", "--input", (dir / "one.csv").string(), "--bins", "1", "--json",
               (dir / "nowhere" / "r.json").string()})
              .code == 2);
}

TEST_CASE("failed commands leave no files behind")
{
    ScratchDir dir{"cli-partial"};
    write_text(dir / "two.csv", "score,response\n0.25,1\n0.75,0\n");
    auto const input = (dir / "two.csv").string();
    auto const before = file_count(dir.path());

    CHECK(run({"sweep-bins", "--input", input, "--bins", "1,3", "--csv", (dir / "s.csv").string(), "--svg",
               (dir / "s.svg").string()})
              .code == 1);
    CHECK(run({"reliability", "--input", input, "--bins", "5", "--svg", (dir / "r.svg").string()}).code == 1);
    CHECK(run({"sweep-n", "--sizes", "32,48", "--draws-per-bin", "16", "--realizations", "0", "--seed", "1", "--csv",
               (dir / "n.csv").string()})
              .code == 1);

    write_text(dir / "flat.csv", "score,response\n0,0\n1,1\n");
    CHECK(run({"cumulative", "--input", (dir / "flat.csv").string(), "--svg", (dir / "c.svg").string(), "--json",
               (dir / "c.json").string()})
              .code == 1);
    CHECK(file_count(dir.path()) == before + 1);
}

TEST_CASE("every subcommand is deterministic")
{
    ScratchDir dir{"cli-determinism"};
    auto const outputs = [&](std::string const& tag) {
        auto const path = [&](std::string const& name) { return (dir / (tag + "-" + name)).string(); };
        REQUIRE(run({"synth", "--n", "3000", "--grid", "squared", "--calibration", "sine:amp=0.1,freq=2", "--seed",
                     "9", "--output", path("d.csv")})
                    .code == 0);
        // Append ties so the seeded tie order matters.
        auto data = read_text(path("d.csv"));
        for (int k = 0; k < 20; ++k) data += k % 2 ? "0.5,1\n" : "0.5,0\n";
        write_text(path("d.csv"), data);
        auto const input = path("d.csv");
        REQUIRE(run({"compute", "--input", input, "--bins", "10", "--strategy", "equal-count", "--seed", "3", "--json",
                     path("c.json")})
                    .code == 0);
        REQUIRE(run({"cumulative", "--input", input, "--seed", "3", "--svg", path("k.svg"), "--json", path("k.json")})
                    .code == 0);
        REQUIRE(run({"reliability", "--input", input, "--bins", "10", "--seed", "3", "--svg", path("r.svg")}).code ==
                0);
        REQUIRE(run({"sweep-bins", "--input", input, "--bins", "4,8,16", "--seed", "3", "--csv", path("b.csv"),
                     "--svg", path("b.svg")})
                    .code == 0);
        REQUIRE(run({"sweep-n", "--sizes", "64,128", "--realizations", "2", "--draws-per-bin", "16", "--seed", "5",
                     "--csv", path("n.csv"), "--svg", path("n.svg")})
                    .code == 0);
        std::vector<std::string> contents;
        for (auto const* name : {"d.csv", "c.json", "k.svg", "k.json", "r.svg", "b.csv", "b.svg", "n.csv", "n.svg"})
            contents.push_back(read_text(path(name)));
        return contents;
    };
    auto const first = outputs("a");
    auto const second = outputs("b");
    for (auto const& text : first) CHECK_FALSE(text.empty());
    // The JSON reports name their input path, which differs between the two runs.
    for (std::size_t i = 0; i < first.size(); ++i)
        if (i != 1 && i != 3) CHECK(first[i] == second[i]);
    auto strip = [](std::string const& text) {
        auto json = nlohmann::ordered_json::parse(text);
        json["provenance"].erase("source");
        return json.dump();
    };
    CHECK(strip(first[1]) == strip(second[1]));
    CHECK(strip(first[3]) == strip(second[3]));
}
