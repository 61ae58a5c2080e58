#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace thetarough {

using cplx = std::complex<double>;

struct Vec2 {
    double v1 = 0.0, v2 = 0.0;

    Vec2& operator+=(const Vec2& o) { v1 += o.v1; v2 += o.v2; return *this; }
    Vec2& operator-=(const Vec2& o) { v1 -= o.v1; v2 -= o.v2; return *this; }
    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator-(const Vec2& a) { return {-a.v1, -a.v2}; }
    friend Vec2 operator*(double s, const Vec2& a) { return {s * a.v1, s * a.v2}; }
    friend Vec2 operator*(const Vec2& a, double s) { return s * a; }

    double norm() const { return std::hypot(v1, v2); }
    static Vec2 of(cplx z) { return {z.real(), z.imag()}; }
};

// row-major: m[i][j]
struct Mat2 {
    double m11 = 0.0, m12 = 0.0, m21 = 0.0, m22 = 0.0;

    double operator()(int i, int j) const {
        if (i == 0) return j == 0 ? m11 : m12;
        return j == 0 ? m21 : m22;
    }
    Mat2& operator+=(const Mat2& o) { m11 += o.m11; m12 += o.m12; m21 += o.m21; m22 += o.m22; return *this; }
    Mat2& operator-=(const Mat2& o) { m11 -= o.m11; m12 -= o.m12; m21 -= o.m21; m22 -= o.m22; return *this; }
    friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
    friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
    friend Mat2 operator-(const Mat2& a) { return {-a.m11, -a.m12, -a.m21, -a.m22}; }
    friend Mat2 operator*(double s, const Mat2& a) { return {s * a.m11, s * a.m12, s * a.m21, s * a.m22}; }
    friend Mat2 operator*(const Mat2& a, double s) { return s * a; }
    friend Vec2 operator*(const Mat2& a, const Vec2& x) {
        return {a.m11 * x.v1 + a.m12 * x.v2, a.m21 * x.v1 + a.m22 * x.v2};
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }

    Mat2 transpose() const { return {m11, m21, m12, m22}; }
    double det() const { return m11 * m22 - m12 * m21; }
    double frobenius() const { return std::sqrt(m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22); }
    double max_abs() const {
        return std::max(std::max(std::abs(m11), std::abs(m12)), std::max(std::abs(m21), std::abs(m22)));
    }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

inline Mat2 outer(const Vec2& a, const Vec2& b) {
    return {a.v1 * b.v1, a.v1 * b.v2, a.v2 * b.v1, a.v2 * b.v2};
}

// e(t) = exp(2 pi i t), argument reduced mod 1 first
inline cplx expi2pi(double t) {
    const double r = t - std::floor(t);
    const double a = 2.0 * std::numbers::pi * r;
    return {std::cos(a), std::sin(a)};
}

inline double frac(double t) { return t - std::floor(t); }

// symplectic form
inline double omega(const Vec2& a, const Vec2& b) { return a.v1 * b.v2 - a.v2 * b.v1; }

}  // namespace thetarough
