#include "hyplatt/lattice_count.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <thread>

namespace hyplatt {

namespace {

constexpr double kBoundMargin = 1e-9; // widens entry bounds, never the accept test

long long floor_ll(double x) { return static_cast<long long>(std::floor(x)); }

// u*x + v*y = gcd(x,y), with the gcd normalized to be nonnegative
void ext_gcd(long long x, long long y, long long& g, long long& u, long long& v) {
    long long u0 = 1, v0 = 0, u1 = 0, v1 = 1;
    while (y != 0) {
        long long q = x / y;
        long long r = x - q * y;
        x = y; y = r;
        long long u2 = u0 - q * u1, v2 = v0 - q * v1;
        u0 = u1; v0 = v1; u1 = u2; v1 = v2;
    }
    g = x; u = u0; v = v0;
    if (g < 0) { g = -g; u = -u; v = -v; }
}

long long gcd_ll(long long x, long long y) { return std::gcd(x < 0 ? -x : x, y); }

// Round to 12 significant decimal digits; aggregation key for orbit values
// at non-arithmetic base points, where distinct group elements can share v.
double round_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return std::atof(buf);
}

bool mod_is_pm_identity(const GroupElement& g, long long n) {
    auto m = [n](long long x) { long long r = x % n; return r < 0 ? r + n : r; };
    long long a = m(g.a), b = m(g.b), c = m(g.c), d = m(g.d);
    if (b != 0 || c != 0) return false;
    return (a == 1 && d == 1) || (a == n - 1 && d == n - 1);
}

struct SigmaMaps {
    // m = sigma_z^{-1} g sigma_w; ||m||_F^2 = 2 cosh rho(z, g w)
    double sz, sw, zx, wx;
    explicit SigmaMaps(const Point& z, const Point& w)
        : sz(std::sqrt(z.y)), sw(std::sqrt(w.y)), zx(z.x), wx(w.x) {}
};

// Candidate sink for one (c,d) sweep shard.
template <typename PushFn>
void sweep_general(const GroupModel& group, const SigmaMaps& s, double X,
                   long long c_lo, long long c_hi, PushFn&& push) {
    const double B = X * (1.0 + kBoundMargin);
    for (long long c = c_lo; c <= c_hi; ++c) {
        const double m21 = c * s.sz * s.sw;
        const double rem_cd = B - m21 * m21;
        if (rem_cd < 0) continue;
        // (sz/sw)^2 (c wx + d)^2 <= rem_cd
        const double half = std::sqrt(rem_cd) * s.sw / s.sz;
        long long d_lo = static_cast<long long>(std::ceil(-c * s.wx - half));
        long long d_hi = floor_ll(-c * s.wx + half);
        for (long long d = d_lo; d <= d_hi; ++d) {
            if (c == 0) {
                if (d != 1) continue; // canonical rep of the translations
            } else if (gcd_ll(d, c) != 1) {
                continue;
            }
            long long a0, b0;
            if (c == 0) {
                a0 = 1; b0 = 0;
            } else {
                long long g, u, v;
                ext_gcd(d, c, g, u, v); // u d + v c = 1
                a0 = u; b0 = -v;
            }
            const double m22 = (s.sz / s.sw) * (c * s.wx + d);
            const double budget = B - m21 * m21 - m22 * m22;
            if (budget < 0) continue;
            // m11(t) = P + t*u1, m12(t) = Q + t*u2
            const double u1 = c * s.sw / s.sz;
            const double u2 = (c * s.wx + d) / (s.sw * s.sz);
            const double P = (s.sw / s.sz) * (a0 - s.zx * c);
            const double Q = (a0 * s.wx + b0 - s.zx * (c * s.wx + d)) / (s.sw * s.sz);
            const double q2 = u1 * u1 + u2 * u2; // > 0 since (c,d) != (0,0)
            const double q1 = 2.0 * (P * u1 + Q * u2);
            const double q0 = P * P + Q * Q;
            const double disc = q1 * q1 - 4.0 * q2 * (q0 - budget);
            if (disc < 0) continue;
            const double sq = std::sqrt(disc);
            long long t_lo = static_cast<long long>(std::ceil((-q1 - sq) / (2.0 * q2) - 1e-9));
            long long t_hi = floor_ll((-q1 + sq) / (2.0 * q2) + 1e-9);
            for (long long t = t_lo; t <= t_hi; ++t) {
                const double m11 = P + t * u1;
                const double m12 = Q + t * u2;
                const double v = m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22;
                if (v > X) continue;
                GroupElement g = GroupElement::make(a0 + t * c, b0 + t * d, c, d);
                if (!group.contains(g)) continue;
                push(v < 2.0 ? 2.0 : v);
            }
        }
    }
}

// Exact path for z = w = i: v = a^2 + b^2 + c^2 + d^2.
template <typename PushFn>
void sweep_exact_i(const GroupModel& group, long long Xi,
                   long long c_lo, long long c_hi, PushFn&& push) {
    for (long long c = c_lo; c <= c_hi; ++c) {
        if (c * c > Xi) break;
        const long long rem_cd = Xi - c * c;
        const long long d_max = floor_ll(std::sqrt(static_cast<double>(rem_cd)) + 0.5);
        for (long long d = -d_max; d <= d_max; ++d) {
            if (c * c + d * d > Xi) continue;
            if (c == 0) {
                if (d != 1) continue;
            } else if (gcd_ll(d, c) != 1) {
                continue;
            }
            long long a0, b0;
            if (c == 0) {
                a0 = 1; b0 = 0;
            } else {
                long long g, u, v;
                ext_gcd(d, c, g, u, v);
                a0 = u; b0 = -v;
            }
            const long long q2 = c * c + d * d;
            const long long q1 = 2 * (a0 * c + b0 * d);
            const long long q0 = a0 * a0 + b0 * b0 + c * c + d * d;
            const double disc = static_cast<double>(q1) * q1 -
                                4.0 * static_cast<double>(q2) * (q0 - Xi);
            if (disc < 0) continue;
            const double sq = std::sqrt(disc);
            long long t_lo = static_cast<long long>(std::ceil((-q1 - sq) / (2.0 * q2) - 1e-9));
            long long t_hi = floor_ll((-q1 + sq) / (2.0 * q2) + 1e-9);
            for (long long t = t_lo; t <= t_hi; ++t) {
                const long long a = a0 + t * c, b = b0 + t * d;
                const long long v = a * a + b * b + c * c + d * d;
                if (v > Xi) continue;
                if (!group.contains(GroupElement::make(a, b, c, d))) continue;
                push(v);
            }
        }
    }
}

} // namespace

GroupModel GroupModel::gamma0(long long n) {
    if (n < 1) throw validation_error("group level must be positive");
    return {Kind::hecke, n};
}

GroupModel GroupModel::gammaN(long long n) {
    if (n < 1) throw validation_error("group level must be positive");
    return {Kind::principal, n};
}

GroupModel GroupModel::parse(std::string_view s) {
    if (s == "psl2z") return psl2z();
    auto colon = s.find(':');
    if (colon != std::string_view::npos) {
        auto head = s.substr(0, colon);
        long long n = std::atoll(std::string(s.substr(colon + 1)).c_str());
        if (head == "gamma0") return gamma0(n);
        if (head == "gammaN") return gammaN(n);
    }
    throw validation_error("unknown group \"" + std::string(s) +
                           "\" (expected psl2z, gamma0:N or gammaN:N)");
}

bool GroupModel::contains(const GroupElement& g) const {
    if (level == 1) return true;
    switch (kind) {
    case Kind::full_modular: return true;
    case Kind::hecke: return g.c % level == 0;
    case Kind::principal: return mod_is_pm_identity(g, level);
    }
    return false;
}

std::string GroupModel::name() const {
    if (level == 1) return "psl2z";
    return (kind == Kind::hecke ? "gamma0:" : "gammaN:") + std::to_string(level);
}

OrbitProfile::OrbitProfile(Point z, Point w, double cap,
                           std::vector<double> values, std::vector<long long> multiplicities)
    : z_(z), w_(w), cap_(cap), values_(std::move(values)), mult_(std::move(multiplicities)) {
    if (values_.size() != mult_.size())
        throw numeric_error("profile values/multiplicities size mismatch");
    cum_.resize(mult_.size());
    long long running = 0;
    for (size_t i = 0; i < mult_.size(); ++i) {
        if (mult_[i] < 1) throw numeric_error("profile multiplicities must be >= 1");
        if (i > 0 && !(values_[i] > values_[i - 1]))
            throw numeric_error("profile values must be strictly increasing");
        running += mult_[i];
        cum_[i] = running;
    }
}

long long OrbitProfile::count_at(double x) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), x);
    if (it == values_.begin()) return 0;
    return cum_[static_cast<size_t>(it - values_.begin()) - 1];
}

unsigned enumeration_threads() {
    if (const char* env = std::getenv("HYPLATT_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

OrbitProfile enumerate_orbit(const GroupModel& group, const Point& z, const Point& w, double X) {
    if (!std::isfinite(X)) throw numeric_error("X must be finite");
    if (X < 2.0) return OrbitProfile(z, w, X, {}, {});

    const bool exact = (z.x == 0.0 && z.y == 1.0 && w.x == 0.0 && w.y == 1.0);
    const unsigned nthreads = enumeration_threads();

    std::vector<double> raw;
    if (exact) {
        const long long Xi = floor_ll(X);
        const long long c_max = floor_ll(std::sqrt(static_cast<double>(Xi)));
        std::vector<std::vector<long long>> parts(nthreads);
        auto run = [&](unsigned k) {
            // contiguous shards: [start_k, start_{k+1} - 1]
            long long start = static_cast<long long>(k) * (c_max + 1) / nthreads;
            long long stop = static_cast<long long>(k + 1) * (c_max + 1) / nthreads - 1;
            sweep_exact_i(group, Xi, start, stop,
                          [&](long long v) { parts[k].push_back(v); });
        };
        if (nthreads == 1) {
            run(0);
        } else {
            std::vector<std::exception_ptr> errs(nthreads);
            std::vector<std::thread> pool;
            for (unsigned k = 0; k < nthreads; ++k)
                pool.emplace_back([&, k] {
                    try { run(k); } catch (...) { errs[k] = std::current_exception(); }
                });
            for (auto& t : pool) t.join();
            for (auto& e : errs)
                if (e) std::rethrow_exception(e);
        }
        std::vector<long long> all;
        for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
        std::sort(all.begin(), all.end());
        std::vector<double> values;
        std::vector<long long> mult;
        for (size_t i = 0; i < all.size();) {
            size_t j = i;
            while (j < all.size() && all[j] == all[i]) ++j;
            values.push_back(static_cast<double>(all[i]));
            mult.push_back(static_cast<long long>(j - i));
            i = j;
        }
        return OrbitProfile(z, w, X, std::move(values), std::move(mult));
    }

    const SigmaMaps s(z, w);
    const double c_max_f = std::sqrt(X * (1.0 + kBoundMargin) / (z.y * w.y));
    const long long c_max = floor_ll(c_max_f);
    std::vector<std::vector<double>> parts(nthreads);
    auto run = [&](unsigned k) {
        long long start = static_cast<long long>(k) * (c_max + 1) / nthreads;
        long long stop = static_cast<long long>(k + 1) * (c_max + 1) / nthreads - 1;
        sweep_general(group, s, X, start, stop,
                      [&](double v) { parts[k].push_back(v); });
    };
    if (nthreads == 1) {
        run(0);
    } else {
        std::vector<std::exception_ptr> errs(nthreads);
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < nthreads; ++k)
            pool.emplace_back([&, k] {
                try { run(k); } catch (...) { errs[k] = std::current_exception(); }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    for (auto& p : parts) raw.insert(raw.end(), p.begin(), p.end());
    for (auto& v : raw) v = round_sig12(v);
    std::sort(raw.begin(), raw.end());
    std::vector<double> values;
    std::vector<long long> mult;
    for (size_t i = 0; i < raw.size();) {
        size_t j = i;
        while (j < raw.size() && raw[j] == raw[i]) ++j;
        values.push_back(raw[i]);
        mult.push_back(static_cast<long long>(j - i));
        i = j;
    }
    return OrbitProfile(z, w, X, std::move(values), std::move(mult));
}

long long count(const GroupModel& group, const Point& z, const Point& w, double X) {
    return enumerate_orbit(group, z, w, X).total();
}

std::vector<std::pair<double, long long>>
count_curve(const GroupModel& group, const Point& z, const Point& w,
            const std::vector<double>& x_grid) {
    if (x_grid.empty()) throw validation_error("empty X grid");
    for (size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] > x_grid[i - 1]))
            throw validation_error("X grid must be strictly increasing");
    OrbitProfile profile = enumerate_orbit(group, z, w, x_grid.back());
    std::vector<std::pair<double, long long>> out;
    out.reserve(x_grid.size());
    for (double x : x_grid) out.emplace_back(x, profile.count_at(x));
    return out;
}

} // namespace hyplatt
