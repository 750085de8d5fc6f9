#include "allee/sweep.hpp"

#include <charconv>

#include "allee/bifurcation.hpp"
#include "allee/classification.hpp"
#include "allee/equilibria.hpp"
#include "allee/errors.hpp"
#include "allee/parallel.hpp"

namespace allee {

namespace {

double parse_number(std::string_view t, std::string_view what) {
    double v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw DomainError("malformed axis " + std::string(what) + " '" + std::string(t) + "'");
    return v;
}

double& slot(ModelParams& p, char c) {
    switch (c) {
    case 'q': return p.q;
    case 'h': return p.h;
    case 's': return p.s;
    default: return p.m;
    }
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= text.size(); ++k)
        if (k == text.size() || text[k] == ':') {
            parts.push_back(text.substr(start, k - start));
            start = k + 1;
        }
    if (parts.size() != 4) throw DomainError("axis must read param:lo:hi:steps");
    if (parts[0].size() != 1 || std::string_view("qhsm").find(parts[0][0]) == std::string_view::npos)
        throw DomainError("axis parameter must be one of q, h, s, m");
    SweepAxis a;
    a.param = parts[0][0];
    a.lo = parse_number(parts[1], "bound");
    a.hi = parse_number(parts[2], "bound");
    int steps = 0;
    const auto res = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), steps);
    if (res.ec != std::errc() || res.ptr != parts[3].data() + parts[3].size())
        throw DomainError("malformed axis steps '" + std::string(parts[3]) + "'");
    if (steps < 1) throw DomainError("axis steps must be at least 1");
    if (steps == 1 && a.lo != a.hi) throw DomainError("a one-step axis needs lo == hi");
    a.steps = steps;
    return a;
}

std::vector<SweepRow> sweep(const ModelParams& base, const std::vector<SweepAxis>& axes, unsigned workers) {
    if (axes.empty() || axes.size() > 2) throw DomainError("sweep takes one or two axes");
    if (axes.size() == 2 && axes[0].param == axes[1].param) throw DomainError("sweep axes must differ");
    std::vector<std::vector<double>> values;
    for (const SweepAxis& a : axes) values.push_back(linspace(a.lo, a.hi, a.steps));
    const std::size_t inner = axes.size() == 2 ? values[1].size() : 1;
    std::vector<SweepRow> rows(values[0].size() * inner);
    parallel_for(rows.size(), [&](std::size_t k) {
        SweepRow& row = rows[k];
        row.params = base;
        slot(row.params, axes[0].param) = values[0][k / inner];
        if (axes.size() == 2) slot(row.params, axes[1].param) = values[1][k % inner];
        try {
            row.params.validate();
        } catch (const DomainError& e) {
            row.error = e.what();
            return;
        }
        for (const Equilibrium& e : all_equilibria(row.params)) {
            row.branch_counts[static_cast<int>(e.branch)]++;
            row.total++;
            if (!row.kinds.empty()) row.kinds += ';';
            row.kinds += e.name();
            row.kinds += ':';
            row.kinds += kind_code(classify(row.params, e).kind);
        }
    }, workers);
    return rows;
}

}  // namespace allee
