#include "hyplatt/hypgeom.hpp"

#include <charconv>
#include <ostream>

namespace hyplatt {

Point parse_point(std::string_view s) {
    auto comma = s.find(',');
    if (comma == std::string_view::npos)
        throw validation_error("point must have the form \"x,y\"");
    double x = 0.0, y = 0.0;
    auto first = s.substr(0, comma);
    auto second = s.substr(comma + 1);
    auto r1 = std::from_chars(first.data(), first.data() + first.size(), x);
    auto r2 = std::from_chars(second.data(), second.data() + second.size(), y);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
        r1.ptr != first.data() + first.size() || r2.ptr != second.data() + second.size())
        throw validation_error("could not parse point \"" + std::string(s) + "\"");
    if (!(y > 0.0))
        throw validation_error("point must have y > 0");
    return Point(x, y);
}

GroupElement GroupElement::make(long long a, long long b, long long c, long long d) {
    if (a * d - b * c != 1)
        throw validation_error("matrix must have determinant 1");
    if (c < 0 || (c == 0 && d < 0)) {
        a = -a; b = -b; c = -c; d = -d;
    }
    GroupElement g;
    g.a = a; g.b = b; g.c = c; g.d = d;
    return g;
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    return GroupElement::make(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                              g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d);
}

bool operator==(const GroupElement& g, const GroupElement& h) {
    return g.a == h.a && g.b == h.b && g.c == h.c && g.d == h.d;
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
    return os << "(" << g.a << "," << g.b << ";" << g.c << "," << g.d << ")";
}

double pair_invariant(const Point& z, const Point& w) {
    const double dx = z.x - w.x, dy = z.y - w.y;
    return (dx * dx + dy * dy) / (4.0 * z.y * w.y);
}

double cosh_distance(const Point& z, const Point& w) {
    return 2.0 * pair_invariant(z, w) + 1.0;
}

Point mobius(const GroupElement& g, const Point& z) {
    const double re = static_cast<double>(g.c) * z.x + static_cast<double>(g.d);
    const double im = static_cast<double>(g.c) * z.y;
    const double den = re * re + im * im;
    const double nre = static_cast<double>(g.a) * z.x + static_cast<double>(g.b);
    const double nim = static_cast<double>(g.a) * z.y;
    // (nre + i nim)(re - i im) / den
    return Point((nre * re + nim * im) / den, z.y / den);
}

double frobenius_value(const GroupElement& g, const Point& z, const Point& w) {
    if (z.x == 0.0 && z.y == 1.0 && w.x == 0.0 && w.y == 1.0)
        return static_cast<double>(g.norm2());
    return 2.0 * cosh_distance(z, mobius(g, w));
}

} // namespace hyplatt
