#include "allee/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace allee {

namespace {

constexpr double kCoincidence = 1e-10;

struct Roots {
    int count = 0;  // 0, 1 (double root) or 2
    double hi = 0, lo = 0;
};

// Roots of x^2 - S x + P = 0 with S > 0, P > 0; the discriminant is passed in
// so that callers can use the algebraically cheapest form.
Roots quadratic(double S, double P, double disc, double scale) {
    Roots r;
    if (disc < -discriminant_band(scale)) return r;
    if (std::abs(disc) <= discriminant_band(scale)) {
        r.count = 1;
        r.hi = r.lo = S / 2;
        return r;
    }
    r.count = 2;
    r.hi = (S + std::sqrt(disc)) / 2;
    r.lo = P / r.hi;
    return r;
}

bool keep_root(double x, Label label, std::vector<std::string>* notes) {
    if (x > 0) return true;
    if (notes) notes->push_back(std::string(label_name(label)) + " discarded: x <= 0 after rounding");
    return false;
}

Equilibrium make(State z, Branch b, Label l, int mult) {
    Equilibrium e;
    e.point = z;
    e.branch = b;
    e.label = l;
    e.multiplicity = mult;
    return e;
}

}  // namespace

std::string_view branch_name(Branch b) {
    switch (b) {
    case Branch::Boundary: return "boundary";
    case Branch::AlleeLine: return "allee_line";
    case Branch::Diagonal: return "diagonal";
    }
    return "?";
}

std::string_view label_name(Label l) {
    static const char* names[] = {"E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9"};
    return names[static_cast<int>(l) - 1];
}

Branch parse_branch(std::string_view t) {
    if (t == "boundary") return Branch::Boundary;
    if (t == "allee_line") return Branch::AlleeLine;
    if (t == "diagonal") return Branch::Diagonal;
    throw DomainError("unknown branch '" + std::string(t) + "'");
}

Label parse_label(std::string_view t) {
    if (t.size() == 2 && t[0] == 'E' && t[1] >= '1' && t[1] <= '9') return static_cast<Label>(t[1] - '0');
    throw DomainError("unknown equilibrium label '" + std::string(t) + "'");
}

std::string Equilibrium::name() const {
    std::string out(label_name(label));
    for (const auto& a : aliases) {
        out += '/';
        out += label_name(a.label);
    }
    return out;
}

bool Equilibrium::has_label(Label l) const {
    if (label == l) return true;
    return std::any_of(aliases.begin(), aliases.end(), [l](const Alias& a) { return a.label == l; });
}

double discriminant_band(double scale) { return 1e-10 * std::max(1.0, std::abs(scale)); }

Thresholds thresholds(const ModelParams& p) {
    p.validate();
    const double q = p.q, h = p.h, s = p.s, m = p.m;
    (void)s;
    Thresholds t;
    t.A = 1 - q * m;
    t.delta1 = t.A * t.A - 4 * h;
    if (t.delta1 >= 0) t.B = std::sqrt(t.delta1);
    t.C = 1 / (q + 1);
    t.delta2 = t.C * (t.C - 4 * h);
    if (t.delta2 >= 0) t.D = std::sqrt(t.delta2);
    t.h1 = m - (q + 1) * m * m;
    t.h2 = 0.25;
    t.h3 = 1 / (4 * (q + 1));
    if (m != 2 * h) t.s1 = (4 * h - 1) / (2 * (m - 2 * h));

    const Roots diag = quadratic(t.C, h * t.C, t.delta2, std::max(t.C * t.C, 4 * h * t.C));
    if (diag.count == 2) {
        const double x8 = diag.hi, x9 = diag.lo;
        if (m != x8) t.s2 = (2 * x8 + q * x8 - 1) / (m - x8);
        if (m != x9) t.s3 = (2 * x9 + q * x9 - 1) / (m - x9);
    }
    return t;
}

std::vector<Equilibrium> solve_boundary(const ModelParams& p, std::vector<std::string>* notes) {
    p.validate();
    const double disc = 1 - 4 * p.h;
    const Roots r = quadratic(1.0, p.h, disc, std::max(1.0, 4 * p.h));
    std::vector<Equilibrium> out;
    if (r.count == 1) {
        if (keep_root(r.hi, Label::E1, notes)) out.push_back(make({r.hi, 0}, Branch::Boundary, Label::E1, 2));
    } else if (r.count == 2) {
        if (keep_root(r.hi, Label::E2, notes)) out.push_back(make({r.hi, 0}, Branch::Boundary, Label::E2, 1));
        if (keep_root(r.lo, Label::E3, notes)) out.push_back(make({r.lo, 0}, Branch::Boundary, Label::E3, 1));
    }
    return out;
}

std::vector<Equilibrium> solve_allee_line(const ModelParams& p, std::vector<std::string>* notes) {
    p.validate();
    const double A = 1 - p.q * p.m;
    std::vector<Equilibrium> out;
    if (A <= 0) return out;
    const double disc = A * A - 4 * p.h;
    const Roots r = quadratic(A, p.h, disc, std::max(A * A, 4 * p.h));
    if (r.count == 1) {
        if (keep_root(r.hi, Label::E4, notes)) out.push_back(make({r.hi, p.m}, Branch::AlleeLine, Label::E4, 2));
    } else if (r.count == 2) {
        if (keep_root(r.hi, Label::E5, notes)) out.push_back(make({r.hi, p.m}, Branch::AlleeLine, Label::E5, 1));
        if (keep_root(r.lo, Label::E6, notes)) out.push_back(make({r.lo, p.m}, Branch::AlleeLine, Label::E6, 1));
    }
    return out;
}

std::vector<Equilibrium> solve_diagonal(const ModelParams& p, std::vector<std::string>* notes) {
    p.validate();
    const double C = 1 / (p.q + 1);
    const double disc = C * (C - 4 * p.h);
    const Roots r = quadratic(C, p.h * C, disc, std::max(C * C, 4 * p.h * C));
    std::vector<Equilibrium> out;
    if (r.count == 1) {
        // The double root is C/2; it coincides with the closed form 2h because
        // C/2 - 2h = disc/(2C) vanishes on this path up to the band.
        if (std::abs(disc) <= 2e-12 * C && std::abs(C / 2 - 2 * p.h) > 1e-12)
            throw std::logic_error("double diagonal root inconsistent with x = 2h");
        if (keep_root(r.hi, Label::E7, notes)) out.push_back(make({r.hi, r.hi}, Branch::Diagonal, Label::E7, 2));
    } else if (r.count == 2) {
        if (keep_root(r.hi, Label::E8, notes)) out.push_back(make({r.hi, r.hi}, Branch::Diagonal, Label::E8, 1));
        if (keep_root(r.lo, Label::E9, notes)) out.push_back(make({r.lo, r.lo}, Branch::Diagonal, Label::E9, 1));
    }
    return out;
}

std::vector<Equilibrium> all_equilibria(const ModelParams& p, std::vector<std::string>* notes) {
    std::vector<Equilibrium> found = solve_boundary(p, notes);
    for (auto* solver : {&solve_allee_line, &solve_diagonal}) {
        for (Equilibrium& e : solver(p, notes)) {
            auto same = std::find_if(found.begin(), found.end(), [&](const Equilibrium& f) {
                return std::abs(f.point.x - e.point.x) <= kCoincidence && std::abs(f.point.y - e.point.y) <= kCoincidence;
            });
            if (same == found.end()) {
                found.push_back(std::move(e));
            } else {
                same->aliases.push_back({e.label, e.branch});
                same->multiplicity = std::max(same->multiplicity, e.multiplicity);
            }
        }
    }
    return found;
}

std::optional<Equilibrium> find_label(const std::vector<Equilibrium>& list, Label l) {
    for (const auto& e : list)
        if (e.has_label(l)) return e;
    return std::nullopt;
}

}  // namespace allee
