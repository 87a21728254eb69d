#pragma once

#include <cmath>
#include <complex>

namespace secsp {

// Planar point/vector. Identified with a complex number where rotations
// and the Levi-Civita square are involved.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}
    explicit Vec2(std::complex<double> z) : x(z.real()), y(z.imag()) {}

    std::complex<double> cplx() const { return {x, y}; }

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double c) const { return {c * x, c * y}; }
    Vec2 operator/(double c) const { return {x / c, y / c}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double c) { x *= c; y *= c; return *this; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    double arg() const { return std::atan2(y, x); }

    // Multiplication by i (rotation by +pi/2).
    Vec2 perp() const { return {-y, x}; }

    Vec2 rotated(double theta) const {
        const double c = std::cos(theta), s = std::sin(theta);
        return {c * x - s * y, s * x + c * y};
    }

    Vec2 unit() const {
        const double n = norm();
        return {x / n, y / n};
    }
};

inline Vec2 operator*(double c, Vec2 v) { return v * c; }

// Complex product interpreted in R^2.
inline Vec2 cmul(Vec2 a, Vec2 b) { return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x}; }
inline Vec2 conj(Vec2 a) { return {a.x, -a.y}; }

}  // namespace secsp
