#include "hyplatt/almost_periodic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <unordered_map>

#include "hyplatt/errors.hpp"
#include "hyplatt/specfun.hpp"

namespace hyplatt {

namespace {

using std::numbers::pi;

bool recurrence_ok(const std::vector<double>& r_list, double R, double T) {
    for (double r : r_list)
        if (2.0 * std::abs(std::sin(0.5 * r * R)) >= 1.0 / T) return false;
    return true;
}

} // namespace

double dirichlet_search(const std::vector<double>& r_list, double M, double T) {
    if (r_list.empty()) throw validation_error("dirichlet_search: empty frequency list");
    if (!(M > 0.0)) throw validation_error("dirichlet_search: M must be positive");
    if (!(T > 1.0)) throw validation_error("dirichlet_search: T must exceed 1");
    double r_max = 0.0;
    for (double r : r_list) {
        if (!(r > 0.0)) throw validation_error("dirichlet_search: frequencies must be positive");
        r_max = std::max(r_max, r);
    }
    for (size_t i = 0; i < r_list.size(); ++i)
        for (size_t j = i + 1; j < r_list.size(); ++j)
            if (r_list[i] == r_list[j])
                throw validation_error("dirichlet_search: frequencies must be distinct");

    const double n = static_cast<double>(r_list.size());
    const double R_cap = M * std::pow(T, n);

    // Any valid R has every phase r_j R within a = 2 asin(1/(2T)) of a multiple
    // of 2 pi; in particular R sits in a window of the slowest frequency.
    // Enumerate those windows R = 2 pi k / r_ref + eta and intersect the exact
    // eta-intervals the other frequencies impose, which makes the scan complete
    // over [M, R_cap] without stepping through the whole range.
    const double a = 2.0 * std::asin(std::min(1.0, 0.5 / T));
    const double a_in = a * (1.0 - 1e-9); // keep the verified inequality strict
    double r_ref = r_max;
    for (double r : r_list) r_ref = std::min(r_ref, r);

    const double period = 2.0 * pi / r_ref;
    const long long k_lo = static_cast<long long>(std::floor(M / period));
    const long long k_hi = static_cast<long long>(std::ceil(R_cap / period));
    for (long long k = k_lo; k <= k_hi; ++k) {
        const double R0 = period * static_cast<double>(k);
        double lo = std::max(-a_in / r_ref, M - R0);
        double hi = std::min(a_in / r_ref, R_cap - R0);
        for (double r : r_list) {
            if (r == r_ref) continue;
            // signed distance of r R0 from the nearest multiple of 2 pi;
            // |r * eta| stays below pi, so no wrap inside the window
            const double phi = std::remainder(r * R0, 2.0 * pi);
            lo = std::max(lo, (-a_in - phi) / r);
            hi = std::min(hi, (a_in - phi) / r);
            if (lo > hi) break;
        }
        if (lo > hi) continue;
        const double R = R0 + 0.5 * (lo + hi);
        if (R >= M && R <= R_cap && recurrence_ok(r_list, R, T)) return R;
    }
    throw numeric_error(
        "dirichlet_search: internal error, guaranteed recurrence range exhausted without a hit");
}

double finite_sum_S(const SpectralRegistry& reg, const Point& z, double A, double R) {
    double acc = 0.0;
    for (const auto& f : reg.cusp_forms) {
        if (!(f.t > 0.0) || f.t >= A) continue;
        const double u = eval_maass(f, z);
        const std::complex<double> it(0.0, f.t);
        acc += 2.0 * std::sqrt(pi) * u * u *
               std::real(gamma_ratio_32(f.t) / (1.0 + it) * std::exp(it * R));
    }
    return acc;
}

double finite_sum_S_derivative(const SpectralRegistry& reg, const Point& z, double A,
                               double R) {
    double acc = 0.0;
    for (const auto& f : reg.cusp_forms) {
        if (!(f.t > 0.0) || f.t >= A) continue;
        const double u = eval_maass(f, z);
        const std::complex<double> it(0.0, f.t);
        acc += 2.0 * std::sqrt(pi) * u * u *
               std::real(gamma_ratio_32(f.t) * it / (1.0 + it) * std::exp(it * R));
    }
    return acc;
}

Mollifier::Mollifier(double eps) : epsilon(eps) {
    if (!(eps > 0.0)) throw validation_error("mollifier width must be positive");
}

double Mollifier::psi(double x) const {
    return std::max(0.0, 1.0 - std::abs(x));
}

double Mollifier::psi_eps(double x) const {
    return psi(x / epsilon) / epsilon;
}

double psi_hat(double epsilon, double t) {
    const double u = 0.5 * epsilon * t;
    if (std::abs(u) < 1e-8) return 1.0 - u * u / 3.0;
    const double s = std::sin(u) / u;
    return s * s;
}

std::vector<std::pair<double, double>>
mollify_error(const std::vector<std::pair<double, double>>& samples, double epsilon) {
    if (!(epsilon > 0.0)) throw validation_error("mollify_error: epsilon must be positive");
    if (samples.size() < 3) throw validation_error("mollify_error: too few samples");
    const double h = samples[1].first - samples[0].first;
    if (!(h > 0.0)) throw validation_error("mollify_error: samples must be increasing in R");
    for (size_t i = 1; i < samples.size(); ++i) {
        const double d = samples[i].first - samples[i - 1].first;
        if (std::abs(d - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw validation_error("mollify_error: samples must be uniformly spaced");
    }
    if (h > epsilon / 10.0 * (1.0 + 1e-12))
        throw validation_error("mollify_error: grid spacing exceeds epsilon/10");

    const long long K = static_cast<long long>(std::ceil(epsilon / h - 1e-9));
    if (2 * K + 1 > static_cast<long long>(samples.size()))
        throw validation_error("mollify_error: insufficient margin for the kernel support");

    Mollifier moll(epsilon);
    std::vector<double> w(2 * K + 1);
    double wsum = 0.0;
    for (long long k = -K; k <= K; ++k) {
        w[k + K] = moll.psi(static_cast<double>(k) * h / epsilon);
        wsum += w[k + K];
    }
    for (double& x : w) x /= wsum; // exact mass 1 on the grid

    std::vector<std::pair<double, double>> out;
    out.reserve(samples.size() - 2 * K);
    for (size_t i = K; i + K < samples.size(); ++i) {
        double acc = 0.0;
        for (long long k = -K; k <= K; ++k)
            acc += w[k + K] * samples[i + k].second;
        out.emplace_back(samples[i].first, acc);
    }
    return out;
}

namespace {

ScanStats scan_stats(const std::vector<std::pair<double, double>>& series) {
    ScanStats st{0.0, 0.0, 0.0, 0.0, 0, 0};
    bool first = true;
    for (const auto& [r, v] : series) {
        if (first || v < st.inf) { st.inf = v; st.inf_at = r; }
        if (first || v > st.sup) { st.sup = v; st.sup_at = r; }
        first = false;
        if (v < 0.0) ++st.negatives;
        else if (v > 0.0) ++st.positives;
    }
    return st;
}

} // namespace

OmegaScanReport omega_witness_scan(const SpectralRegistry& reg, const ErrorCurve& curve,
                                   const Mollifier& moll, double R1, double R2) {
    if (!(R2 > R1)) throw validation_error("omega scan: window must satisfy R1 < R2");
    const double eps = moll.epsilon;
    const double lo = R1 - eps, hi = R2 + eps;
    if (!(lo > 0.0)) throw validation_error("omega scan: window (with margin) must stay positive");
    if (std::exp(hi) > curve.base.cap() * (1.0 + 1e-12))
        throw validation_error("omega scan: window outside curve support");

    const double h = eps / 20.0;
    const long long npts = static_cast<long long>(std::ceil((hi - lo) / h)) + 1;
    std::vector<std::pair<double, double>> raw;
    raw.reserve(npts);
    for (long long i = 0; i < npts; ++i) {
        const double R = lo + static_cast<double>(i) * h;
        const double e = error_e(reg, curve.base, std::exp(R));
        raw.emplace_back(R, e / std::exp(0.5 * R));
    }
    OmegaScanReport rep;
    rep.mollified = mollify_error(raw, eps);
    // trim the raw series to the requested window for reporting
    for (const auto& p : raw)
        if (p.first >= R1 - 1e-12 && p.first <= R2 + 1e-12) rep.raw.push_back(p);
    rep.raw_stats = scan_stats(rep.raw);
    rep.mollified_stats = scan_stats(rep.mollified);
    return rep;
}

} // namespace hyplatt
