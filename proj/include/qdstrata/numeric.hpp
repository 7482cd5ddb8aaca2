#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdstrata {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Input that cannot be parsed (files, stratum strings, flags).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally fine input rejected on mathematical grounds
// (empty stratum, violated precondition, failed validation).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    Rational x, y;

    Vec2() = default;
    Vec2(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(const Rational& t) const { return {x * t, y * t}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
    bool is_zero() const { return x == 0 && y == 0; }
};

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rational norm2(const Vec2& a) { return a.x * a.x + a.y * a.y; }
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }

inline bool same_direction(const Vec2& a, const Vec2& b) {
    return cross(a, b) == 0 && dot(a, b) > 0;
}
inline bool parallel(const Vec2& a, const Vec2& b) { return cross(a, b) == 0; }

// Lexicographically positive representative of {v, -v}.
inline Vec2 canonical_sign(const Vec2& v) {
    if (v.x > 0 || (v.x == 0 && v.y > 0)) return v;
    return -v;
}

// Is ray r strictly inside the CCW arc from ray a to ray b?  The arc is the
// one swept rotating a counterclockwise until first reaching b (length in
// (0,2pi)); a and b must not point the same way.
inline bool strictly_inside_ccw(const Vec2& a, const Vec2& b, const Vec2& r) {
    if (same_direction(r, a) || same_direction(r, b)) return false;
    Rational ab = cross(a, b);
    if (ab > 0) return cross(a, r) > 0 && cross(r, b) > 0;
    if (ab < 0) return cross(a, r) > 0 || cross(r, b) > 0;
    // b opposite to a: half-plane arc
    return cross(a, r) > 0;
}

// Number of rays of the line {m, -m} met while rotating CCW from a to b,
// counting the arc half-open (a, b].  Used to accumulate angles in pi units.
inline int line_crossings_in_arc(const Vec2& a, const Vec2& b, const Vec2& m) {
    int n = 0;
    const Vec2 mm = -m;
    if (same_direction(m, b) || strictly_inside_ccw(a, b, m)) ++n;
    if (same_direction(mm, b) || strictly_inside_ccw(a, b, mm)) ++n;
    return n;
}

// One corner of a rotation fan: sweeps CCW from ray `out` to ray `in`,
// both emanating from the apex; angle strictly between 0 and 2pi.
struct CornerFan {
    Vec2 out, in;
};

// Total angle of a concatenated fan, in pi units.  The measuring line m must
// not contain the fan's first or last ray; corners are measured in their own
// charts (gluing sign flips preserve the line {m,-m}).
inline long long fan_angle_pi_units(const std::vector<CornerFan>& corners, const Vec2& m) {
    long long total = 0;
    for (const auto& c : corners) total += line_crossings_in_arc(c.out, c.in, m);
    return total;
}

inline std::string rational_to_string(const Rational& r) {
    Integer num = boost::multiprecision::numerator(r);
    Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::string vec2_to_string(const Vec2& v) {
    return "(" + rational_to_string(v.x) + "," + rational_to_string(v.y) + ")";
}

}  // namespace qdstrata
