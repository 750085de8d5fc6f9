#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "allee/model.hpp"

namespace allee {

// One swept parameter: `param:lo:hi:steps` with param in {q, h, s, m}.
struct SweepAxis {
    char param = 'h';
    double lo = 0, hi = 0;
    int steps = 1;
};

SweepAxis parse_axis(std::string_view text);

struct SweepRow {
    ModelParams params;
    std::array<int, 3> branch_counts{};  // boundary, allee_line, diagonal
    int total = 0;
    std::string kinds;  // "E2:SN;E3:SA;..." in label order
    std::string error;  // non-empty when the point violates ModelParams invariants
};

// Rows in row-major axis order (last axis fastest).
std::vector<SweepRow> sweep(const ModelParams& base, const std::vector<SweepAxis>& axes, unsigned workers = 0);

}  // namespace allee
