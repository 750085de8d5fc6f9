#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner. Nothing here calls the closed forms under test.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "allee/classification.hpp"
#include "allee/equilibria.hpp"
#include "allee/model.hpp"

namespace oracle {

using allee::Jet3;
using allee::Kind;
using allee::ModelParams;
using allee::State;

using quad = __float128;

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// ------------------------------------------------------------ finite differences

// One-dimensional central stencils for derivative orders 0..3: (offset, weight).
inline std::vector<std::pair<int, double>> stencil(int order) {
    switch (order) {
    case 0: return {{0, 1.0}};
    case 1: return {{-1, -0.5}, {1, 0.5}};
    case 2: return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
    default: return {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}};
    }
}

// d^{i+j} F_k / dx^i dy^j by tensor-product central differences in __float128.
inline quad fd_partial_raw(const ModelParams& p, State z, int k, int i, int j, quad h) {
    quad total = 0;
    for (auto [ox, wx] : stencil(i))
        for (auto [oy, wy] : stencil(j)) {
            const quad x = quad(z.x) + ox * h, y = quad(z.y) + oy * h;
            const auto f = allee::field_expression<quad>(p.q, p.h, p.s, p.m, x, y);
            total += quad(wx) * quad(wy) * f[k];
        }
    quad scale = 1;
    for (int n = 0; n < i + j; ++n) scale *= h;
    return total / scale;
}

// Central differences carry an O(step^2) truncation error, which near the
// x -> 0 singularity (derivatives growing like 1/x^n) exceeds 1e-6 at step
// 1e-4. One Richardson step with step/2 removes it.
inline double fd_partial(const ModelParams& p, State z, int k, int i, int j, double step) {
    const quad coarse = fd_partial_raw(p, z, k, i, j, quad(step));
    const quad fine = fd_partial_raw(p, z, k, i, j, quad(step) / 2);
    return static_cast<double>((4 * fine - coarse) / 3);
}

inline double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Taylor coefficient of u^i v^j; step `first` for first order, `higher` otherwise.
inline double fd_coefficient(const ModelParams& p, State z, int k, int i, int j, double higher = 1e-4,
                             double first = 1e-5) {
    if (i + j == 0) {
        const auto f = allee::field_expression<quad>(p.q, p.h, p.s, p.m, quad(z.x), quad(z.y));
        return static_cast<double>(f[k]);
    }
    const double step = i + j == 1 ? first : higher;
    return fd_partial(p, z, k, i, j, step) / (factorial(i) * factorial(j));
}

inline Jet3 fd_jet(const ModelParams& p, State z, double higher = 1e-4, double first = 1e-5) {
    Jet3 j;
    j.at = z;
    for (int n = 0; n <= 3; ++n)
        for (int b = 0; b <= n; ++b) {
            j.a(n - b, b) = fd_coefficient(p, z, 0, n - b, b, higher, first);
            j.b(n - b, b) = fd_coefficient(p, z, 1, n - b, b, higher, first);
        }
    return j;
}

// ------------------------------------------------------------------- eigen

inline std::array<std::complex<double>, 2> eigenvalues(const allee::Mat2& J) {
    // Characteristic polynomial through a complex square root, no case split.
    const std::complex<double> tr = J.a + J.d, det = J.a * J.d - J.b * J.c;
    const std::complex<double> r = std::sqrt(tr * tr - 4.0 * det);
    return {(tr + r) / 2.0, (tr - r) / 2.0};
}

// Hyperbolic type from eigenvalues, or nullopt when a real part is tiny.
inline std::optional<Kind> hyperbolic_kind(const allee::Mat2& J, double band) {
    const auto ev = eigenvalues(J);
    const double r1 = ev[0].real(), r2 = ev[1].real();
    if (std::abs(r1) <= band || std::abs(r2) <= band) return std::nullopt;
    const bool complex_pair = std::abs(ev[0].imag()) > band;
    if (r1 * r2 < 0) return Kind::Saddle;
    if (r1 < 0) return complex_pair ? Kind::StableFocus : Kind::StableNode;
    return complex_pair ? Kind::UnstableFocus : Kind::UnstableNode;
}

// ------------------------------------------------------------ first Lyapunov

// Projection formula for the first Lyapunov coefficient of a planar weak
// focus: l1 = Re[<p, C(q,q,qb)> - 2<p, B(q, A^-1 B(q,qb))> + <p, B(qb, (2iw - A)^-1 B(q,q))>] / (2w).
inline double projection_l1(const Jet3& jet) {
    using cx = std::complex<double>;
    using V = std::array<cx, 2>;
    const allee::Mat2 A = jet.jacobian();
    const double w = std::sqrt(A.a * A.d - A.b * A.c);
    const cx I(0, 1);
    // A q = i w q with q = (b, i w - a).
    const V q{cx(A.b), I * w - A.a};
    // A^T p = -i w p: p proportional to (i w + d... ) solved directly.
    V p{cx(A.c), -I * w - A.a};  // satisfies (A^T + i w) p = 0 up to scaling when tr = 0
    {
        // Verify and otherwise fall back to the other row.
        const cx r0 = A.a * p[0] + A.c * p[1] + I * w * p[0];
        if (std::abs(r0) > 1e-9 * (1 + std::abs(p[0]) + std::abs(p[1]))) p = V{-I * w - A.d, cx(A.b)};
    }
    auto dot = [](const V& a, const V& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; };
    const cx norm = dot(p, q);
    p = V{p[0] / std::conj(norm), p[1] / std::conj(norm)};

    auto B = [&](const V& x, const V& y) {
        auto comp = [&](const allee::Taylor3& c) {
            return 2.0 * c(2, 0) * x[0] * y[0] + c(1, 1) * (x[0] * y[1] + x[1] * y[0]) + 2.0 * c(0, 2) * x[1] * y[1];
        };
        return V{comp(jet.a), comp(jet.b)};
    };
    auto C = [&](const V& x, const V& y, const V& z) {
        auto comp = [&](const allee::Taylor3& c) {
            return 6.0 * c(3, 0) * x[0] * y[0] * z[0] +
                   2.0 * c(2, 1) * (x[0] * y[0] * z[1] + x[0] * y[1] * z[0] + x[1] * y[0] * z[0]) +
                   2.0 * c(1, 2) * (x[0] * y[1] * z[1] + x[1] * y[0] * z[1] + x[1] * y[1] * z[0]) +
                   6.0 * c(0, 3) * x[1] * y[1] * z[1];
        };
        return V{comp(jet.a), comp(jet.b)};
    };
    auto solve = [](cx a, cx b, cx c, cx d, const V& r) {
        const cx det = a * d - b * c;
        return V{(d * r[0] - b * r[1]) / det, (a * r[1] - c * r[0]) / det};
    };
    const V qb{std::conj(q[0]), std::conj(q[1])};
    const V Bqqb = B(q, qb);
    const V Ainv = solve(A.a, A.b, A.c, A.d, Bqqb);
    const V Bqq = B(q, q);
    const V R = solve(2.0 * I * w - A.a, cx(-A.b), cx(-A.c), 2.0 * I * w - A.d, Bqq);
    const cx total = dot(p, C(q, q, qb)) - 2.0 * dot(p, B(q, Ainv)) + dot(p, B(qb, R));
    return total.real() / (2 * w);
}

// ------------------------------------------------------------ exact thresholds

using Rat = boost::rational<long long>;

inline std::optional<Rat> exact_sqrt(Rat r) {
    if (r < 0) return std::nullopt;
    auto isqrt = [](long long n) -> std::optional<long long> {
        long long k = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(n))));
        for (long long c = std::max(0LL, k - 2); c <= k + 2; ++c)
            if (c * c == n) return c;
        return std::nullopt;
    };
    const auto n = isqrt(r.numerator()), d = isqrt(r.denominator());
    if (!n || !d) return std::nullopt;
    return Rat(*n, *d);
}

struct ExactThresholds {
    Rat A, delta1, C, delta2, h1, h3;
    std::optional<Rat> D, s2, s3;
};

inline ExactThresholds exact_thresholds(Rat q, Rat h, Rat m) {
    ExactThresholds t;
    t.A = 1 - q * m;
    t.delta1 = t.A * t.A - 4 * h;
    t.C = 1 / (q + 1);
    t.delta2 = t.C * t.C - 4 * h / (q + 1);
    t.h1 = m - (q + 1) * m * m;
    t.h3 = 1 / (4 * (q + 1));
    t.D = exact_sqrt(t.delta2);
    if (t.D && t.delta2 > 0) {
        const Rat x8 = (t.C + *t.D) / 2, x9 = (t.C - *t.D) / 2;
        if (m != x8) t.s2 = (2 * x8 + q * x8 - 1) / (m - x8);
        if (m != x9) t.s3 = (2 * x9 + q * x9 - 1) / (m - x9);
    }
    return t;
}

inline double to_double(Rat r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

// ------------------------------------------------------ theorem-region sampling

struct Box {
    double q_lo = 0.1, q_hi = 5, h_lo = 0.005, h_hi = 0.5, s_lo = 0.1, s_hi = 5, m_lo = 0.02, m_hi = 0.95;
};

// One case of a theorem: a sampler that proposes points (possibly pinning a
// parameter to an equality), a hypothesis filter, and the expected outcome.
struct TheoremCase {
    std::string name;
    std::function<ModelParams(std::mt19937_64&)> propose;
    std::function<bool(const ModelParams&)> hypothesis;
    std::function<bool(const ModelParams&, std::string&)> holds;  // fills a diagnostic on failure
};

struct CaseResult {
    std::string name;
    int sampled = 0, passed = 0;
    std::string first_failure;
};

inline CaseResult run_case(const TheoremCase& c, int samples, std::uint64_t seed, long max_attempts = 5'000'000) {
    std::mt19937_64 rng(seed);
    CaseResult r{c.name};
    for (long attempt = 0; attempt < max_attempts && r.sampled < samples; ++attempt) {
        const ModelParams p = c.propose(rng);
        if (!(p.q > 0 && p.h > 0 && p.s > 0 && p.m > 0 && p.m < 1)) continue;
        if (!c.hypothesis(p)) continue;
        ++r.sampled;
        std::string why;
        if (c.holds(p, why))
            ++r.passed;
        else if (r.first_failure.empty())
            r.first_failure = allee::format_params(p) + ": " + why;
    }
    return r;
}

// Relative separation from a boundary so float rounding cannot flip a case.
constexpr double kMargin = 1e-6;

std::vector<TheoremCase> theorem_cases();

}  // namespace oracle
