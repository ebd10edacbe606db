#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>
#include <vector>

#include "hyplatt/lattice_count.hpp"

using namespace hyplatt;

namespace {

const Point kI(0.0, 1.0);

// Quadruple scan over a^2+b^2+c^2+d^2 <= X, det 1, canonical PSL classes.
long long brute_count_i(const GroupModel& group, long long X) {
    long long n = 0;
    const long long L = static_cast<long long>(std::sqrt(static_cast<double>(X))) + 1;
    for (long long a = -L; a <= L; ++a)
        for (long long b = -L; b <= L; ++b)
            for (long long c = 0; c <= L; ++c)
                for (long long d = -L; d <= L; ++d) {
                    if (c == 0 && d <= 0) continue; // canonical reps only
                    if (a * d - b * c != 1) continue;
                    if (a * a + b * b + c * c + d * d > X) continue;
                    if (!group.contains(GroupElement::make(a, b, c, d))) continue;
                    ++n;
                }
    return n;
}

// Box scan at general base points; L must dominate the entry bounds for X.
std::map<double, long long> brute_profile(const GroupModel& group, const Point& z,
                                          const Point& w, double X, long long L) {
    std::map<double, long long> values;
    for (long long a = -L; a <= L; ++a)
        for (long long b = -L; b <= L; ++b)
            for (long long c = 0; c <= L; ++c)
                for (long long d = -L; d <= L; ++d) {
                    if (c == 0 && d <= 0) continue;
                    if (a * d - b * c != 1) continue;
                    auto g = GroupElement::make(a, b, c, d);
                    if (!group.contains(g)) continue;
                    double v = frobenius_value(g, z, w);
                    if (v > X) continue;
                    char buf[40];
                    std::snprintf(buf, sizeof(buf), "%.11e", v < 2.0 ? 2.0 : v);
                    values[std::atof(buf)] += 1;
                }
    return values;
}

} // namespace

TEST_CASE("group model parsing") {
    CHECK(GroupModel::parse("psl2z").name() == "psl2z");
    CHECK(GroupModel::parse("gamma0:4").name() == "gamma0:4");
    CHECK(GroupModel::parse("gammaN:2").name() == "gammaN:2");
    CHECK_THROWS_AS(GroupModel::parse("sl2z"), validation_error);
    CHECK_THROWS_AS(GroupModel::parse("gamma0:0"), validation_error);
}

TEST_CASE("congruence membership") {
    auto g = GroupElement::make(1, 0, 2, 1);
    CHECK(GroupModel::gamma0(2).contains(g));
    CHECK(!GroupModel::gamma0(4).contains(g));
    CHECK(!GroupModel::gammaN(2).contains(GroupElement::make(1, 1, 0, 1)));
    CHECK(GroupModel::gammaN(2).contains(GroupElement::make(1, 2, 0, 1)));
    CHECK(GroupModel::gammaN(2).contains(GroupElement::make(1, 0, 2, 1)));
    // -I mod N counts as identity in PSL
    CHECK(GroupModel::gammaN(3).contains(GroupElement::make(2, 3, 3, 5)));
}

TEST_CASE("spot counts at z = w = i") {
    auto psl = GroupModel::psl2z();
    CHECK(count(psl, kI, kI, 2.0) == 2);
    CHECK(count(psl, kI, kI, 3.0) == 10);
    CHECK(count(psl, kI, kI, 4.0) == 10);
    CHECK(count(psl, kI, kI, 1.5) == 0);
}

TEST_CASE("X below 2 yields an empty profile") {
    auto p = enumerate_orbit(GroupModel::psl2z(), kI, kI, 1.5);
    CHECK(p.total() == 0);
    CHECK(p.values().empty());
    auto curve = count_curve(GroupModel::psl2z(), kI, kI, {1.5});
    REQUIRE(curve.size() == 1);
    CHECK(curve[0].second == 0);
}

TEST_CASE("brute-force oracle at z = w = i") {
    auto psl = GroupModel::psl2z();
    auto profile = enumerate_orbit(psl, kI, kI, 200.0);
    for (long long X = 2; X <= 200; X += 7)
        CHECK(profile.count_at(static_cast<double>(X)) == brute_count_i(psl, X));
}

TEST_CASE("brute-force oracle for congruence subgroups") {
    for (const char* name : {"gamma0:2", "gamma0:3", "gammaN:2"}) {
        auto group = GroupModel::parse(name);
        auto profile = enumerate_orbit(group, kI, kI, 120.0);
        for (long long X : {3, 10, 40, 120})
            CHECK_MESSAGE(profile.count_at(static_cast<double>(X)) == brute_count_i(group, X),
                          name << " at X=" << X);
    }
    // Gamma(2): at X = 3 only the identity survives
    CHECK(count(GroupModel::gammaN(2), kI, kI, 3.0) == 1);
}

TEST_CASE("general base points match the box oracle") {
    const Point z(0.3, 1.7), w(-0.2, 0.9);
    auto psl = GroupModel::psl2z();
    const double X = 12.0;
    auto oracle = brute_profile(psl, z, w, X, 30);
    auto profile = enumerate_orbit(psl, z, w, X);
    long long oracle_total = 0;
    for (auto& [v, m] : oracle) oracle_total += m;
    CHECK(profile.total() == oracle_total);
    REQUIRE(profile.values().size() == oracle.size());
    size_t k = 0;
    for (auto& [v, m] : oracle) {
        CHECK(profile.values()[k] == doctest::Approx(v).epsilon(1e-10));
        CHECK(profile.multiplicities()[k] == m);
        ++k;
    }
}

TEST_CASE("orbit values are symmetric in z and w") {
    const Point z(0.3, 1.7), w(-0.2, 0.9);
    auto a = enumerate_orbit(GroupModel::psl2z(), z, w, 40.0);
    auto b = enumerate_orbit(GroupModel::psl2z(), w, z, 40.0);
    REQUIRE(a.values().size() == b.values().size());
    for (size_t k = 0; k < a.values().size(); ++k) {
        CHECK(a.values()[k] == doctest::Approx(b.values()[k]).epsilon(1e-9));
        CHECK(a.multiplicities()[k] == b.multiplicities()[k]);
    }
}

TEST_CASE("determinism across shard counts") {
    setenv("HYPLATT_THREADS", "1", 1);
    auto p1 = enumerate_orbit(GroupModel::psl2z(), Point(0.1, 1.3), kI, 150.0);
    setenv("HYPLATT_THREADS", "4", 1);
    auto p4 = enumerate_orbit(GroupModel::psl2z(), Point(0.1, 1.3), kI, 150.0);
    unsetenv("HYPLATT_THREADS");
    REQUIRE(p1.values().size() == p4.values().size());
    for (size_t k = 0; k < p1.values().size(); ++k) {
        CHECK(p1.values()[k] == p4.values()[k]); // byte-identical doubles
        CHECK(p1.multiplicities()[k] == p4.multiplicities()[k]);
    }
}

TEST_CASE("count curve shares one enumeration and is monotone") {
    auto curve = count_curve(GroupModel::psl2z(), kI, kI, {2.0, 3.0, 10.0, 100.0});
    REQUIRE(curve.size() == 4);
    CHECK(curve[0].second == 2);
    CHECK(curve[1].second == 10);
    for (size_t k = 1; k < curve.size(); ++k) CHECK(curve[k].second >= curve[k - 1].second);
    CHECK_THROWS_AS(count_curve(GroupModel::psl2z(), kI, kI, {}), validation_error);
    CHECK_THROWS_AS(count_curve(GroupModel::psl2z(), kI, kI, {3.0, 3.0}), validation_error);
}

TEST_CASE("profile invariants are enforced") {
    CHECK_THROWS_AS(OrbitProfile(kI, kI, 10.0, {2.0, 2.0}, {1, 1}), numeric_error);
    CHECK_THROWS_AS(OrbitProfile(kI, kI, 10.0, {2.0}, {0}), numeric_error);
    CHECK_THROWS_AS(OrbitProfile(kI, kI, 10.0, {2.0}, {1, 2}), numeric_error);
    OrbitProfile p(kI, kI, 10.0, {2.0, 5.0}, {2, 4});
    CHECK(p.count_at(4.9) == 2);
    CHECK(p.count_at(5.0) == 6);
    CHECK(p.count_at(1.0) == 0);
}

TEST_CASE("counts grow linearly at the modular main-term rate") {
    // N(X) ~ 3X; crude window check at X = 5000
    auto n = count(GroupModel::psl2z(), kI, kI, 5000.0);
    CHECK(n > 2.6 * 5000);
    CHECK(n < 3.4 * 5000);
}
