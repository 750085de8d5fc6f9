#include "allee/model.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>

namespace allee {

double Mat2::frobenius() const { return std::sqrt(a * a + b * b + c * c + d * d); }

void DimensionalParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive");
    };
    positive(r, "r");
    positive(K, "K");
    positive(q_dim, "q_dim");
    positive(b, "b");
    positive(s_dim, "s_dim");
    positive(m_dim, "m_dim");
    positive(h_dim, "h_dim");
}

void ModelParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive");
    };
    positive(q, "q");
    positive(h, "h");
    positive(s, "s");
    if (!(m > 0 && m < 1)) throw DomainError("m must lie in (0, 1)");
}

double Taylor3::eval(double u, double v) const {
    double total = 0;
    for (int n = 3; n >= 0; --n)
        for (int j = 0; j <= n; ++j)
            total += c_[index(n - j, j)] * std::pow(u, n - j) * std::pow(v, j);
    return total;
}

ModelParams nondimensionalize(const DimensionalParams& p) {
    p.validate();
    // x = X/K, y = Y/(bK), t = r*T.
    ModelParams out;
    out.q = p.b * p.q_dim * p.K / p.r;
    out.h = p.h_dim / (p.K * p.r);
    out.s = p.s_dim * p.b * p.K / p.r;
    out.m = p.m_dim / (p.b * p.K);
    out.validate();
    return out;
}

Vec2 vector_field(const ModelParams& p, State z) {
    if (!(z.x > 0)) throw DomainError("x must be positive");
    auto f = field_expression(p.q, p.h, p.s, p.m, z.x, z.y);
    return {f[0], f[1]};
}

Vec2 dimensional_field(const DimensionalParams& p, double X, double Y) {
    if (!(X > 0)) throw DomainError("x must be positive");
    return {p.r * X * (1 - X / p.K) - p.q_dim * X * Y - p.h_dim,
            p.s_dim * Y * (1 - Y / (p.b * X)) * (Y - p.m_dim)};
}

Jet3 jet3(const ModelParams& p, State z) {
    if (!(z.x > 0)) throw DomainError("x must be positive");
    const double x = z.x, y = z.y, q = p.q, s = p.s, m = p.m;
    Jet3 j;
    j.at = z;
    const Vec2 f = vector_field(p, z);

    j.a(0, 0) = f[0];
    j.a(1, 0) = 1 - 2 * x - q * y;
    j.a(0, 1) = -q * x;
    j.a(2, 0) = -1;
    j.a(1, 1) = -q;

    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    const double y2 = y * y, y3 = y2 * y;
    j.b(0, 0) = f[1];
    j.b(1, 0) = s * (y3 - m * y2) / x2;
    j.b(0, 1) = s * (2 * y - m + (2 * m * y - 3 * y2) / x);
    j.b(2, 0) = -s * (y3 - m * y2) / x3;
    j.b(1, 1) = s * (3 * y2 - 2 * m * y) / x2;
    j.b(0, 2) = s * (1 + (m - 3 * y) / x);
    j.b(3, 0) = s * (y3 - m * y2) / x4;
    j.b(2, 1) = s * (2 * m * y - 3 * y2) / x3;
    j.b(1, 2) = s * (3 * y - m) / x2;
    j.b(0, 3) = -s / x;
    return j;
}

std::string format_params(const ModelParams& p) {
    return fmt::format("q={},h={},s={},m={}", p.q, p.h, p.s, p.m);
}

ModelParams parse_params(std::string_view text) {
    ModelParams p;
    bool seen[4] = {false, false, false, false};
    while (!text.empty()) {
        const auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw DomainError("malformed parameter entry '" + std::string(item) + "'");
        const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
        double v = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || ptr != value.data() + value.size())
            throw DomainError("malformed number for " + std::string(key));
        int slot = key == "q" ? 0 : key == "h" ? 1 : key == "s" ? 2 : key == "m" ? 3 : -1;
        if (slot < 0) throw DomainError("unknown parameter '" + std::string(key) + "'");
        if (seen[slot]) throw DomainError("duplicate parameter '" + std::string(key) + "'");
        seen[slot] = true;
        (slot == 0 ? p.q : slot == 1 ? p.h : slot == 2 ? p.s : p.m) = v;
    }
    for (int i = 0; i < 4; ++i)
        if (!seen[i]) throw DomainError(std::string("missing parameter ") + "qhsm"[i]);
    p.validate();
    return p;
}

}  // namespace allee
