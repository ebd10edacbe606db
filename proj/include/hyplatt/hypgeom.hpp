#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hyplatt/errors.hpp"

namespace hyplatt {

// Point of the upper half-plane, y > 0.
struct Point {
    double x{0.0};
    double y{1.0};

    Point() = default;
    Point(double x_, double y_) : x(x_), y(y_) {
        if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0))
            throw numeric_error("Point requires finite coordinates with y > 0");
    }
};

inline bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }

// Parses the CLI form "x,y".
Point parse_point(std::string_view s);

// Integer matrix (a b; c d) with det 1, canonically signed so that each
// object represents the PSL(2,Z) class {+g, -g}: c > 0, or c = 0 and d > 0.
struct GroupElement {
    long long a{1}, b{0}, c{0}, d{1};

    static GroupElement make(long long a, long long b, long long c, long long d);
    static GroupElement identity() { return {}; }

    GroupElement inverse() const { return make(d, -b, -c, a); }
    bool is_canonical() const { return c > 0 || (c == 0 && d > 0); }
    // Squared Frobenius norm a^2+b^2+c^2+d^2, exact.
    long long norm2() const { return a * a + b * b + c * c + d * d; }
};

GroupElement operator*(const GroupElement& g, const GroupElement& h);
bool operator==(const GroupElement& g, const GroupElement& h);
std::ostream& operator<<(std::ostream& os, const GroupElement& g);

// u(z,w) = |z-w|^2 / (4 Im z Im w), symmetric, zero iff z = w.
double pair_invariant(const Point& z, const Point& w);

// cosh of hyperbolic distance: 2u + 1.
double cosh_distance(const Point& z, const Point& w);

// Moebius action (a z + b)/(c z + d).
Point mobius(const GroupElement& g, const Point& z);

// 4 u(z, g w) + 2 = 2 cosh rho(z, g w).  Exact integer arithmetic when
// z = w = i, where it equals a^2+b^2+c^2+d^2.
double frobenius_value(const GroupElement& g, const Point& z, const Point& w);

} // namespace hyplatt
