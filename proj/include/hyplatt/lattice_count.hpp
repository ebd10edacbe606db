#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hyplatt/hypgeom.hpp"

namespace hyplatt {

// PSL(2,Z) and its congruence subgroups Gamma_0(N), Gamma(N).
struct GroupModel {
    enum class Kind { full_modular, hecke, principal };
    Kind kind{Kind::full_modular};
    long long level{1};

    static GroupModel psl2z() { return {Kind::full_modular, 1}; }
    static GroupModel gamma0(long long n);
    static GroupModel gammaN(long long n);
    // CLI syntax: psl2z | gamma0:N | gammaN:N
    static GroupModel parse(std::string_view s);

    bool contains(const GroupElement& g) const;
    std::string name() const;
};

// Sorted multiset of orbit values v = 4u(z, gamma w) + 2 up to the cap.
class OrbitProfile {
public:
    OrbitProfile(Point z, Point w, double cap,
                 std::vector<double> values, std::vector<long long> multiplicities);

    const Point& z() const { return z_; }
    const Point& w() const { return w_; }
    double cap() const { return cap_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<long long>& multiplicities() const { return mult_; }
    // Cumulative counts: cumulative()[k] = N(values()[k]).
    const std::vector<long long>& cumulative() const { return cum_; }

    long long total() const { return cum_.empty() ? 0 : cum_.back(); }
    // N(x) = #{v <= x} for any x <= cap.
    long long count_at(double x) const;

private:
    Point z_, w_;
    double cap_;
    std::vector<double> values_;
    std::vector<long long> mult_;
    std::vector<long long> cum_;
};

// Materializes {gamma in group : 4u(z, gamma w) + 2 <= X} as a profile.
// Ties at v = X are included.  Deterministic, including under internal
// parallelism (HYPLATT_THREADS caps the shard count).
OrbitProfile enumerate_orbit(const GroupModel& group, const Point& z, const Point& w, double X);

// N(X; z, w): total multiplicity of enumerate_orbit.
long long count(const GroupModel& group, const Point& z, const Point& w, double X);

// Prefix counts along a strictly increasing grid, from a single enumeration.
std::vector<std::pair<double, long long>>
count_curve(const GroupModel& group, const Point& z, const Point& w,
            const std::vector<double>& x_grid);

// Thread cap used by enumerate_orbit: HYPLATT_THREADS if set, else
// hardware concurrency.
unsigned enumeration_threads();

} // namespace hyplatt
