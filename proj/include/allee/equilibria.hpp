#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "allee/model.hpp"

namespace allee {

enum class Branch { Boundary, AlleeLine, Diagonal };
enum class Label { E1 = 1, E2, E3, E4, E5, E6, E7, E8, E9 };

std::string_view branch_name(Branch b);  // "boundary", "allee_line", "diagonal"
std::string_view label_name(Label l);    // "E1".."E9"
Branch parse_branch(std::string_view text);
Label parse_label(std::string_view text);

struct Alias {
    Label label;
    Branch branch;
    bool operator==(const Alias&) const = default;
};

struct Equilibrium {
    State point;
    Branch branch = Branch::Boundary;
    Label label = Label::E1;
    int multiplicity = 1;
    // Labels of coincident equilibria from other branches, in branch order.
    std::vector<Alias> aliases;

    // "E5" or "E5/E8" when branches coincide.
    std::string name() const;
    bool has_label(Label l) const;
};

struct Thresholds {
    double A = 0;
    double delta1 = 0;
    std::optional<double> B;
    double C = 0;
    double delta2 = 0;
    std::optional<double> D;
    double h1 = 0;
    double h2 = 0.25;
    double h3 = 0;
    std::optional<double> s1, s2, s3;
};

// |delta| <= band(scale) counts as a zero discriminant.
double discriminant_band(double scale);

Thresholds thresholds(const ModelParams& p);

// Solvers append human-readable notes (e.g. discarded roots) to `notes` when given.
std::vector<Equilibrium> solve_boundary(const ModelParams& p, std::vector<std::string>* notes = nullptr);
std::vector<Equilibrium> solve_allee_line(const ModelParams& p, std::vector<std::string>* notes = nullptr);
std::vector<Equilibrium> solve_diagonal(const ModelParams& p, std::vector<std::string>* notes = nullptr);
std::vector<Equilibrium> all_equilibria(const ModelParams& p, std::vector<std::string>* notes = nullptr);

std::optional<Equilibrium> find_label(const std::vector<Equilibrium>& list, Label l);

}  // namespace allee
