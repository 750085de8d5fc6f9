#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "allee/bifurcation.hpp"
#include "allee/classification.hpp"
#include "allee/dynamics.hpp"
#include "allee/equilibria.hpp"
#include "allee/sweep.hpp"

namespace allee::io {

using Json = nlohmann::ordered_json;

// Shortest text that reads back to the same double.
std::string number(double v);
double parse_number(std::string_view text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column; throws DomainError when absent.
    std::size_t column(std::string_view name) const;
};

// Comma separated, header row, LF line endings. Fields never need quoting.
std::string to_csv(const CsvTable& t);
CsvTable parse_csv(std::string_view text);

// ---------------------------------------------------------------- tables

struct ClassifiedEquilibrium {
    Equilibrium equilibrium;
    Classification classification;
};

std::vector<ClassifiedEquilibrium> classify_all(const ModelParams& p);

CsvTable equilibria_table(const std::vector<ClassifiedEquilibrium>& rows);
CsvTable thresholds_table(const Thresholds& t);
CsvTable saddle_node_table(const SaddleNodeReport& r);
CsvTable hopf_table(const HopfReport& r);
CsvTable bt_table(const BTReport& r);
CsvTable census_table(const std::vector<CensusCell>& cells);
CsvTable trajectory_table(const Trajectory& t);
CsvTable portrait_table(const std::vector<PortraitTrajectory>& runs);
CsvTable sweep_table(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows);

std::vector<CensusCell> read_census(const CsvTable& t);
Trajectory read_trajectory(const CsvTable& t);

// ------------------------------------------------------------------ JSON

Json to_json(const ModelParams& p);
Json to_json(const std::vector<ClassifiedEquilibrium>& rows);
Json to_json(const Thresholds& t);
Json to_json(const SaddleNodeReport& r);
Json to_json(const HopfReport& r);
Json to_json(const BTReport& r);
Json to_json(const std::vector<StageCheck>& checks);
Json to_json(const std::vector<CensusCell>& cells);
Json to_json(const std::vector<PortraitTrajectory>& runs);
Json to_json(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows);

ModelParams params_from_json(const Json& j);
HopfReport hopf_from_json(const Json& j);
BTReport bt_from_json(const Json& j);

// Two-space indented, trailing newline.
std::string dump(const Json& j);

// ------------------------------------------------------------------- SVG

std::string portrait_svg(const PortraitSpec& spec, const std::vector<PortraitTrajectory>& runs);
std::string census_svg(const std::vector<double>& eta1, const std::vector<double>& eta2,
                       const std::vector<CensusCell>& cells);
std::string sweep_svg(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows);

}  // namespace allee::io
