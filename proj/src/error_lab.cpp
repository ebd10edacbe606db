#include "hyplatt/error_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyplatt/errors.hpp"
#include "hyplatt/quadrature.hpp"
#include "hyplatt/specfun.hpp"

namespace hyplatt {

namespace {

using std::numbers::pi;

double zero_form_weight(const SpectralRegistry& reg, const Point& z, const Point& w) {
    double acc = 0.0;
    for (const auto& f : reg.zero_forms) acc += f.value(z) * f.value(w);
    return acc;
}

double zero_correction(const SpectralRegistry& reg, const Point& z, const Point& w, double X) {
    if (reg.zero_forms.empty() || X <= 2.0) return 0.0;
    return h_zero_limit(X) * zero_form_weight(reg, z, w);
}

// Prefix sums of int N(x) x^{-1/2} dx over the orbit segments.
struct StepIntegral {
    const OrbitProfile& p;
    std::vector<double> prefix; // prefix[k] = int_{v_0}^{v_k} N(x) x^{-1/2} dx

    explicit StepIntegral(const OrbitProfile& profile) : p(profile) {
        const auto& v = p.values();
        const auto& cum = p.cumulative();
        prefix.resize(v.size(), 0.0);
        for (size_t k = 1; k < v.size(); ++k)
            prefix[k] = prefix[k - 1] +
                        static_cast<double>(cum[k - 1]) * 2.0 * (std::sqrt(v[k]) - std::sqrt(v[k - 1]));
    }

    double upto(double X) const {
        const auto& v = p.values();
        const auto& cum = p.cumulative();
        auto it = std::upper_bound(v.begin(), v.end(), X);
        if (it == v.begin()) return 0.0;
        size_t k = static_cast<size_t>(it - v.begin()) - 1;
        return prefix[k] + static_cast<double>(cum[k]) * 2.0 * (std::sqrt(X) - std::sqrt(v[k]));
    }
};

double main_coefficient(double s) {
    return std::sqrt(pi) * std::tgamma(s - 0.5) / std::tgamma(s + 1.0);
}

// int_2^X c x^{s - 1/2} dx by the power rule
double main_integral_sqrt(const SpectralRegistry& reg, const Point& z, const Point& w, double X) {
    double acc = 0.0;
    for (const auto& eig : reg.small_eigs) {
        const double c = main_coefficient(eig.s) * eig.value(z) * eig.value(w);
        const double p = eig.s + 0.5;
        acc += c * (std::pow(X, p) - std::pow(2.0, p)) / p;
    }
    return acc;
}

const OrbitProfile& require_cap(const OrbitProfile& p, double X) {
    if (X > p.cap() * (1.0 + 1e-12))
        throw numeric_error("X exceeds the enumerated profile cap");
    return p;
}

} // namespace

double main_term(const SpectralRegistry& reg, const Point& z, const Point& w, double X) {
    if (X <= 0.0) return 0.0;
    double acc = 0.0;
    for (const auto& eig : reg.small_eigs)
        acc += main_coefficient(eig.s) * eig.value(z) * eig.value(w) * std::pow(X, eig.s);
    return acc;
}

double error_E(const SpectralRegistry& reg, const OrbitProfile& profile, double X) {
    require_cap(profile, X);
    return static_cast<double>(profile.count_at(X)) -
           main_term(reg, profile.z(), profile.w(), X);
}

double error_E(const SpectralRegistry& reg, const GroupModel& group,
               const Point& z, const Point& w, double X) {
    const double n = X >= 2.0 ? static_cast<double>(count(group, z, w, X)) : 0.0;
    return n - main_term(reg, z, w, X);
}

double error_e(const SpectralRegistry& reg, const OrbitProfile& profile, double X) {
    return error_E(reg, profile, X) - zero_correction(reg, profile.z(), profile.w(), X);
}

double error_e(const SpectralRegistry& reg, const GroupModel& group,
               const Point& z, const Point& w, double X) {
    return error_E(reg, group, z, w, X) - zero_correction(reg, z, w, X);
}

ErrorCurve build_error_curve(const SpectralRegistry& reg, const GroupModel& group,
                             const Point& z, const Point& w,
                             const std::vector<double>& x_grid) {
    if (x_grid.empty()) throw validation_error("empty X grid");
    for (size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] > x_grid[i - 1]))
            throw validation_error("X grid must be strictly increasing");
    ErrorCurve curve{enumerate_orbit(group, z, w, x_grid.back()), {}};
    curve.samples.reserve(x_grid.size());
    for (double X : x_grid) {
        ErrorSample s;
        s.X = X;
        s.N = curve.base.count_at(X);
        s.mainterm = main_term(reg, z, w, X);
        s.E = static_cast<double>(s.N) - s.mainterm;
        s.e = s.E - zero_correction(reg, z, w, X);
        curve.samples.push_back(s);
    }
    return curve;
}

double m_average(const SpectralRegistry& reg, const OrbitProfile& profile, double X) {
    if (!(X > 2.0)) throw numeric_error("m_average requires X > 2");
    require_cap(profile, X);
    const Point &z = profile.z(), &w = profile.w();
    StepIntegral steps(profile);
    double acc = steps.upto(X) - main_integral_sqrt(reg, z, w, X);
    if (!reg.zero_forms.empty()) {
        const double weight = zero_form_weight(reg, z, w);
        acc -= weight * integrate([&](double x) { return x <= 2.0 ? 0.0 : h_zero_limit(x) / std::sqrt(x); },
                                  2.0, X, 1e-8 * std::sqrt(X));
    }
    return acc / X;
}

double m_average(const SpectralRegistry& reg, const GroupModel& group,
                 const Point& z, const Point& w, double X) {
    if (!(X > 2.0)) throw numeric_error("m_average requires X > 2");
    return m_average(reg, enumerate_orbit(group, z, w, X), X);
}

std::vector<std::pair<double, double>>
m_average_curve(const SpectralRegistry& reg, const OrbitProfile& profile,
                const std::vector<double>& x_grid) {
    StepIntegral steps(profile);
    const Point &z = profile.z(), &w = profile.w();
    std::vector<std::pair<double, double>> out;
    out.reserve(x_grid.size());
    for (double X : x_grid) {
        if (!(X > 2.0)) throw numeric_error("m_average requires X > 2");
        require_cap(profile, X);
        double acc = steps.upto(X) - main_integral_sqrt(reg, z, w, X);
        if (!reg.zero_forms.empty()) {
            const double weight = zero_form_weight(reg, z, w);
            acc -= weight *
                   integrate([&](double x) { return x <= 2.0 ? 0.0 : h_zero_limit(x) / std::sqrt(x); },
                             2.0, X, 1e-8 * std::sqrt(X));
        }
        out.emplace_back(X, acc / X);
    }
    return out;
}

double pr_mean(const SpectralRegistry& reg, const OrbitProfile& profile, double T) {
    if (!(T > 0.0)) throw numeric_error("pr_mean requires T > 0");
    const double Xmax = 2.0 * std::cosh(T);
    require_cap(profile, Xmax);
    const Point &z = profile.z(), &w = profile.w();

    // step part: N(2 cosh r) is constant between the r_k = acosh(v_k / 2)
    const auto& v = profile.values();
    const auto& cum = profile.cumulative();
    double step_part = 0.0;
    for (size_t k = 0; k < v.size() && v[k] <= Xmax; ++k) {
        const double r_k = std::acosh(std::max(1.0, v[k] / 2.0));
        if (r_k >= T) break;
        const double r_next = (k + 1 < v.size() && v[k + 1] <= Xmax)
                                  ? std::min(T, std::acosh(v[k + 1] / 2.0))
                                  : T;
        step_part += static_cast<double>(cum[k]) * 2.0 *
                     (std::exp(-0.5 * r_k) - std::exp(-0.5 * r_next));
    }

    double smooth_part = 0.0;
    for (const auto& eig : reg.small_eigs) {
        const double c = main_coefficient(eig.s) * eig.value(z) * eig.value(w);
        if (eig.s == 1.0) {
            // int_0^T (2 cosh r) e^{-r/2} dr = 2 e^{T/2} - 2 + (2/3)(1 - e^{-3T/2})
            smooth_part += c * (2.0 * std::exp(0.5 * T) - 2.0 +
                                (2.0 / 3.0) * (1.0 - std::exp(-1.5 * T)));
        } else {
            const double s = eig.s;
            smooth_part += c * integrate(
                                   [s](double r) {
                                       return std::pow(2.0 * std::cosh(r), s) * std::exp(-0.5 * r);
                                   },
                                   0.0, T, 1e-10 * std::exp(0.5 * T));
        }
    }
    double corr_part = 0.0;
    if (!reg.zero_forms.empty()) {
        const double weight = zero_form_weight(reg, z, w);
        corr_part = weight * integrate(
                                 [](double r) {
                                     const double x = 2.0 * std::cosh(r);
                                     return x <= 2.0 + 1e-12 ? 0.0
                                                             : h_zero_limit(x) * std::exp(-0.5 * r);
                                 },
                                 0.0, T, 1e-8 * std::exp(0.5 * T));
    }
    return (step_part - smooth_part - corr_part) / T;
}

double pr_mean(const SpectralRegistry& reg, const GroupModel& group, const Point& z, double T) {
    if (!(T > 0.0)) throw numeric_error("pr_mean requires T > 0");
    const double Xmax = 2.0 * std::cosh(T);
    return pr_mean(reg, enumerate_orbit(group, z, z, Xmax), T);
}

SpectralMEstimate spectral_m_estimate(const SpectralRegistry& reg, const Point& z,
                                      const Point& w, double R, double A) {
    if (!(A > 0.0)) throw numeric_error("spectral_m_estimate requires A > 0");
    SpectralMEstimate out{0.0, 0.0, 1.0 / std::sqrt(A)};
    for (const auto& f : reg.cusp_forms) {
        if (!(f.t > 0.0) || f.t >= A) continue;
        const double uz = eval_maass(f, z);
        const double uw = eval_maass(f, w);
        const std::complex<double> it(0.0, f.t);
        const std::complex<double> phase = std::exp(it * R);
        out.estimate += 2.0 * std::sqrt(pi) * uz * uw *
                        std::real(gamma_ratio_32(f.t) / (1.0 + it) * phase);
    }
    return out;
}

ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& x_abs_e) {
    // envelope peaks: argmax of |e| within equal-width bins in log X
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, ae] : x_abs_e)
        if (x > 0.0 && ae > 0.0) pts.emplace_back(std::log(x), std::log(ae));
    if (pts.size() < 3) throw numeric_error("exponent fit needs at least 3 usable points");
    std::sort(pts.begin(), pts.end());
    const size_t nbins = std::clamp<size_t>(pts.size() / 8, 3, 48);
    const double lo = pts.front().first, hi = pts.back().first;
    const double width = (hi - lo) / static_cast<double>(nbins);
    std::vector<std::pair<double, double>> peaks;
    size_t i = 0;
    for (size_t b = 0; b < nbins; ++b) {
        const double edge = (b + 1 == nbins) ? hi + 1.0 : lo + width * static_cast<double>(b + 1);
        std::pair<double, double> best{0.0, -1e300};
        bool any = false;
        while (i < pts.size() && (pts[i].first < edge || b + 1 == nbins)) {
            if (pts[i].second > best.second) best = pts[i];
            any = true;
            ++i;
        }
        if (any) peaks.push_back(best);
    }
    if (peaks.size() < 3) throw numeric_error("exponent fit needs at least 3 usable points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [lx, ly] : peaks) {
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double n = static_cast<double>(peaks.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw numeric_error("degenerate exponent fit");
    ExponentFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.points_used = static_cast<int>(peaks.size());
    return fit;
}

ExponentFit exponent_fit(const ErrorCurve& curve) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(curve.samples.size());
    for (const auto& s : curve.samples) pts.emplace_back(s.X, std::abs(s.e));
    return exponent_fit(pts);
}

} // namespace hyplatt
