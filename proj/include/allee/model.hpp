#pragma once

#include <array>
#include <string>
#include <string_view>

#include "allee/errors.hpp"

namespace allee {

using Vec2 = std::array<double, 2>;

// 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 0, b = 0, c = 0, d = 0;

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    double frobenius() const;
    Mat2 transpose() const { return {a, c, b, d}; }
    Vec2 operator*(const Vec2& v) const { return {a * v[0] + b * v[1], c * v[0] + d * v[1]}; }
};

// Parameters of the dimensional model
//   X' = rX(1 - X/K) - qXY - h,   Y' = sY(1 - Y/(bX))(Y - m).
struct DimensionalParams {
    double r = 1, K = 1, q_dim = 1, b = 1, s_dim = 1, m_dim = 0.1, h_dim = 0.1;

    void validate() const;
};

// Dimensionless parameters of
//   x' = x(1 - x) - qxy - h,   y' = s y (1 - y/x)(y - m).
struct ModelParams {
    double q = 1, h = 0.1, s = 1, m = 0.1;

    void validate() const;
    bool operator==(const ModelParams&) const = default;
};

// Point of the open quadrant x > 0, y >= 0.
struct State {
    double x = 0, y = 0;
    bool operator==(const State&) const = default;
};

// Taylor coefficients c_ij (coefficient of u^i v^j) for i + j <= 3.
class Taylor3 {
public:
    double& operator()(int i, int j) { return c_[index(i, j)]; }
    double operator()(int i, int j) const { return c_[index(i, j)]; }
    double eval(double u, double v) const;

    static constexpr int index(int i, int j) {
        const int n = i + j;
        return n * (n + 1) / 2 + j;
    }

private:
    std::array<double, 10> c_{};
};

// Value, Jacobian and Taylor coefficients of the shifted field
// (u, v) -> F(z + (u, v)). a(i,j) belongs to the x-equation, b(i,j) to the
// y-equation; a(0,0), b(0,0) hold the field value.
struct Jet3 {
    State at;
    Taylor3 a, b;

    Vec2 value() const { return {a(0, 0), b(0, 0)}; }
    Mat2 jacobian() const { return {a(1, 0), a(0, 1), b(1, 0), b(0, 1)}; }
};

// The field is written once, generic in the scalar type, so that test oracles
// can evaluate it in extended precision.
template <class T>
std::array<T, 2> field_expression(T q, T h, T s, T m, T x, T y) {
    return {x * (T(1) - x) - q * x * y - h, s * y * (T(1) - y / x) * (y - m)};
}

ModelParams nondimensionalize(const DimensionalParams& p);

Vec2 vector_field(const ModelParams& p, State z);

// Right-hand side of the dimensional model at (X, Y).
Vec2 dimensional_field(const DimensionalParams& p, double X, double Y);

Jet3 jet3(const ModelParams& p, State z);

// Flat key-value form "q=...,h=...,s=...,m=..." in shortest round-trip notation.
std::string format_params(const ModelParams& p);
ModelParams parse_params(std::string_view text);

}  // namespace allee
