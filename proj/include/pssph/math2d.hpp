#pragma once

#include <cmath>

namespace pssph {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
inline Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double norm(Vec2 v) { return std::sqrt(norm2(v)); }

/// Symmetric 2x2 tensor (stress, strain, strain rate).
struct Sym2 {
    double xx = 0.0;
    double yy = 0.0;
    double xy = 0.0;
};

inline Sym2 operator+(Sym2 a, Sym2 b) { return {a.xx + b.xx, a.yy + b.yy, a.xy + b.xy}; }
inline Sym2 operator-(Sym2 a, Sym2 b) { return {a.xx - b.xx, a.yy - b.yy, a.xy - b.xy}; }
inline Sym2 operator*(double s, Sym2 t) { return {s * t.xx, s * t.yy, s * t.xy}; }
inline Sym2& operator+=(Sym2& a, Sym2 b) { a.xx += b.xx; a.yy += b.yy; a.xy += b.xy; return a; }

inline Vec2 mul(Sym2 t, Vec2 v) {
    return {t.xx * v.x + t.xy * v.y, t.xy * v.x + t.yy * v.y};
}

inline double trace(Sym2 t) { return t.xx + t.yy; }

/// Full contraction a_ab * b_ab.
inline double ddot(Sym2 a, Sym2 b) {
    return a.xx * b.xx + a.yy * b.yy + 2.0 * a.xy * b.xy;
}

struct Principal2 {
    double max;
    double min;
};

/// Eigenvalues of a symmetric 2x2 tensor, max >= min.
inline Principal2 principal_values(Sym2 t) {
    const double mean = 0.5 * (t.xx + t.yy);
    const double r = std::sqrt(0.25 * (t.xx - t.yy) * (t.xx - t.yy) + t.xy * t.xy);
    return {mean + r, mean - r};
}

/// Jaumann spin contribution W*s - s*W for planar spin rate w = W_xy.
inline Sym2 spin_rotation_rate(Sym2 s, double w) {
    return {2.0 * w * s.xy, -2.0 * w * s.xy, w * (s.yy - s.xx)};
}

}  // namespace pssph
