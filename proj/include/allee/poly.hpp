#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace allee {

// Bivariate polynomial in (u, v) truncated at total degree 3.
class Poly3 {
public:
    static constexpr int kDegree = 3;
    static constexpr int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }

    Poly3() = default;
    Poly3(double constant) { c_[0] = constant; }  // NOLINT: implicit on purpose, mirrors scalar arithmetic
    static Poly3 u() { Poly3 p; p(1, 0) = 1; return p; }
    static Poly3 v() { Poly3 p; p(0, 1) = 1; return p; }

    double& operator()(int i, int j) { return c_[index(i, j)]; }
    double operator()(int i, int j) const { return i + j > kDegree ? 0.0 : c_[index(i, j)]; }

    double eval(double u, double v) const {
        double total = 0;
        for (int n = kDegree; n >= 0; --n)
            for (int j = 0; j <= n; ++j) total += (*this)(n - j, j) * std::pow(u, n - j) * std::pow(v, j);
        return total;
    }

    friend Poly3 operator+(Poly3 a, const Poly3& b) {
        for (int k = 0; k < 10; ++k) a.c_[k] += b.c_[k];
        return a;
    }
    friend Poly3 operator-(Poly3 a, const Poly3& b) {
        for (int k = 0; k < 10; ++k) a.c_[k] -= b.c_[k];
        return a;
    }
    friend Poly3 operator-(Poly3 a) {
        for (double& x : a.c_) x = -x;
        return a;
    }
    friend Poly3 operator*(const Poly3& a, const Poly3& b) {
        Poly3 out;
        for (int n1 = 0; n1 <= kDegree; ++n1)
            for (int j1 = 0; j1 <= n1; ++j1) {
                const double ca = a(n1 - j1, j1);
                if (ca == 0) continue;
                for (int n2 = 0; n1 + n2 <= kDegree; ++n2)
                    for (int j2 = 0; j2 <= n2; ++j2) out(n1 - j1 + n2 - j2, j1 + j2) += ca * b(n2 - j2, j2);
            }
        return out;
    }
    // Division through the truncated geometric series; needs a nonzero constant term.
    friend Poly3 operator/(const Poly3& a, const Poly3& b) {
        const double b0 = b(0, 0);
        if (b0 == 0) throw std::domain_error("Poly3 division by a series without constant term");
        const Poly3 t = (b - Poly3(b0)) * Poly3(1 / b0);
        Poly3 inv(1.0), power(1.0);
        for (int k = 1; k <= kDegree; ++k) {
            power = power * (-t);
            inv = inv + power;
        }
        return a * inv * Poly3(1 / b0);
    }

    // Coefficient-wise maximum difference over total degrees <= max_degree.
    double max_gap(const Poly3& other, int max_degree) const {
        double g = 0;
        for (int n = 0; n <= max_degree; ++n)
            for (int j = 0; j <= n; ++j) g = std::max(g, std::abs((*this)(n - j, j) - other(n - j, j)));
        return g;
    }

private:
    std::array<double, 10> c_{};
};

// P(Z1, Z2) for a polynomial P and polynomial arguments.
inline Poly3 compose(const Poly3& P, const Poly3& Z1, const Poly3& Z2) {
    std::array<Poly3, 4> p1{Poly3(1.0)}, p2{Poly3(1.0)};
    for (int k = 1; k <= 3; ++k) {
        p1[k] = p1[k - 1] * Z1;
        p2[k] = p2[k - 1] * Z2;
    }
    Poly3 out;
    for (int n = 0; n <= 3; ++n)
        for (int j = 0; j <= n; ++j)
            if (P(n - j, j) != 0) out = out + Poly3(P(n - j, j)) * p1[n - j] * p2[j];
    return out;
}

}  // namespace allee
