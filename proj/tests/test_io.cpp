#include <random>
#include <regex>

#include "doctest.h"

#include "allee/errors.hpp"
#include "allee/io.hpp"

using namespace allee;
using namespace allee::io;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

// Checks that every opened element is closed in order.
bool balanced_xml(const std::string& text) {
    std::vector<std::string> stack;
    const std::regex tag(R"(<(/?)([a-zA-Z]+)[^>]*?(/?)>)");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), tag); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        if (m[1] == "/") {
            if (stack.empty() || stack.back() != m[2]) return false;
            stack.pop_back();
        } else if (m[3] != "/") {
            stack.push_back(m[2]);
        }
    }
    return stack.empty();
}

}  // namespace

TEST_CASE("numbers round-trip exactly") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double v = U(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(parse_number(number(v)) == v);
    }
    CHECK(parse_number(number(0.1)) == 0.1);
    CHECK_THROWS_AS(parse_number("1.5x"), DomainError);
    CHECK_THROWS_AS(parse_number(""), DomainError);
}

TEST_CASE("CSV format") {
    const CsvTable t{{"a", "b"}, {{"1", "2"}, {"3", ""}}};
    const std::string text = to_csv(t);
    CHECK(text == "a,b\n1,2\n3,\n");
    const CsvTable back = parse_csv(text);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.column("b") == 1);
    CHECK_THROWS_AS(back.column("c"), DomainError);
    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), DomainError);
    CHECK_THROWS_AS(parse_csv(""), DomainError);
}

TEST_CASE("equilibria table") {
    const auto rows = classify_all({1, 0.12, 1, 0.1});
    const CsvTable t = equilibria_table(rows);
    REQUIRE(t.rows.size() == 6);
    const std::size_t label = t.column("label"), kind = t.column("kind"), x = t.column("x");
    CHECK(t.rows[0][label] == "E2");
    CHECK(t.rows[0][kind] == "SN");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(parse_number(t.rows[k][x]) == rows[k].equilibrium.point.x);
        CHECK(parse_number(t.rows[k][t.column("det")]) == rows[k].classification.eigen.det);
    }
    const CsvTable back = parse_csv(to_csv(t));
    CHECK(back.rows == t.rows);
}

TEST_CASE("thresholds table leaves absent values empty") {
    const CsvTable t = thresholds_table(thresholds({1, 0.3, 1, 0.1}));
    bool saw_empty = false;
    for (const auto& r : t.rows)
        if (r[0] == "B") saw_empty = r[1].empty();
    CHECK(saw_empty);
    const Json j = to_json(thresholds({1, 0.3, 1, 0.1}));
    CHECK(j.at("B").is_null());
}

TEST_CASE("census CSV round trip") {
    std::vector<CensusCell> cells;
    for (int i = 0; i < 6; ++i)
        cells.push_back({static_cast<std::size_t>(i), -1e-3 + i * 3.3e-4, 1e-3 / 3 * i, i % 3, i == 4,
                         static_cast<Regime>(i)});
    const auto back = read_census(parse_csv(to_csv(census_table(cells))));
    REQUIRE(back.size() == cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        CHECK(back[k].index == cells[k].index);
        CHECK(back[k].eta1 == cells[k].eta1);
        CHECK(back[k].eta2 == cells[k].eta2);
        CHECK(back[k].equilibrium_count == cells[k].equilibrium_count);
        CHECK(back[k].cycle_found == cells[k].cycle_found);
        CHECK(back[k].regime == cells[k].regime);
    }
}

TEST_CASE("trajectory CSV round trip") {
    const Trajectory t = integrate({1, 0.12, 1, 0.1}, {0.5, 0.3}, {});
    const CsvTable table = trajectory_table(t);
    CHECK(table.header == std::vector<std::string>{"t", "x", "y"});
    const Trajectory back = read_trajectory(parse_csv(to_csv(table)));
    REQUIRE(back.samples.size() == t.samples.size());
    for (std::size_t k = 0; k < t.samples.size(); ++k) {
        CHECK(back.samples[k].t == t.samples[k].t);
        CHECK(back.samples[k].z == t.samples[k].z);
    }
}

TEST_CASE("portrait long-format table") {
    PortraitSpec spec{0.1, 0.9, 0.1, 0.9, 2, 2, 5, Direction::Both};
    const auto runs = portrait({1, 0.12, 1, 0.1}, spec);
    const CsvTable t = portrait_table(runs);
    std::size_t total = 0;
    for (const auto& r : runs) total += r.trajectory.samples.size();
    CHECK(t.rows.size() == total);
    CHECK(t.rows.front()[t.column("seed")] == "0");
    CHECK(t.rows.back()[t.column("seed")] == "3");
}

TEST_CASE("parameters JSON round trip") {
    const ModelParams p{1.2345678901234567, 0.1, 2.0 / 3, 0.3};
    CHECK(params_from_json(Json::parse(dump(to_json(p)))) == p);
}

TEST_CASE("Hopf report JSON round trip") {
    const ModelParams p{1, 0.12, 0.5, 0.1};
    HopfReport r = first_lyapunov(p, *find_label(all_equilibria(p), Label::E8));
    r.evidence = hopf_evidence(p, *find_label(all_equilibria(p), Label::E8), r.critical.s_critical,
                               r.critical.dtrace_ds, r.terms.sigma, 0.02);
    const std::string text = dump(to_json(r));
    CHECK(text.back() == '\n');
    const HopfReport back = hopf_from_json(Json::parse(text));
    CHECK(dump(to_json(back)) == text);
    CHECK(back.terms.sigma == r.terms.sigma);
    REQUIRE(back.evidence);
    CHECK(back.evidence->consistent == r.evidence->consistent);
    const Json j = Json::parse(text);
    CHECK(j.at("evidence").at("plus").at("kind") == "cycle");
    CHECK(j.at("evidence").at("minus").at("kind") == "none");
}

TEST_CASE("BT report JSON round trip") {
    const BTReport r = bt_unfold(1, 0.1, 1e-4, -2e-4);
    const std::string text = dump(to_json(r));
    const BTReport back = bt_from_json(Json::parse(text));
    CHECK(dump(to_json(back)) == text);
    CHECK(back.l00 == r.l00);
    CHECK(back.stages.size() == r.stages.size());
    CHECK(back.stages[3].coefficients[3].value == r.stages[3].coefficients[3].value);
}

TEST_CASE("SVG output is well formed") {
    const PortraitSpec spec{0.05, 1, 0, 1, 3, 3, 20, Direction::Both};
    const auto runs = portrait({1, 0.12, 1, 0.1}, spec);
    const std::string svg = portrait_svg(spec, runs);
    CHECK(balanced_xml(svg));
    CHECK(count(svg, "<polyline") == runs.size());
    CHECK(svg.find("nan") == std::string::npos);

    const auto e1 = linspace(-1e-3, 1e-3, 3), e2 = linspace(-1e-3, 1e-3, 2);
    std::vector<CensusCell> cells;
    for (std::size_t k = 0; k < 6; ++k) cells.push_back({k, e1[k / 2], e2[k % 2], 1, false, Regime::Single});
    const std::string census = census_svg(e1, e2, cells);
    CHECK(balanced_xml(census));
    CHECK(count(census, "<rect") == 6 + 2);  // background, frame, cells

    const std::vector<SweepAxis> axes{parse_axis("h:0.2:0.3:11")};
    const std::string sw = sweep_svg(axes, sweep({1, 0.1, 1, 0.1}, axes));
    CHECK(balanced_xml(sw));
    CHECK(count(sw, "<rect") == 11 + 2);
}
