#include "hyplatt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hyplatt/errors.hpp"
#include "hyplatt/quadrature.hpp"
#include "hyplatt/specfun.hpp"

namespace hyplatt {

namespace {

using std::complex;
using std::numbers::pi;

const double kBernoulli[12] = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
    7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138,
    -236364091.0 / 2730};

// eta_t(n) = n^{it} sigma_{-2it}(n) = sum_{d | n} (n/d^2)^{it}, real.
double eta_t(long long n, double t) {
    complex<double> acc = 0.0;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        long long e = n / d;
        acc += std::exp(complex<double>(0.0, t * std::log(static_cast<double>(e) / d)));
        if (e != d)
            acc += std::exp(complex<double>(0.0, t * std::log(static_cast<double>(d) / e)));
    }
    return acc.real();
}

double kbessel(double t, double x) {
    return bessel_k_imag_scaled(t, x) * std::exp(-0.5 * pi * std::abs(t));
}

struct LineReader {
    std::istream& in;
    std::string origin;
    int lineno = 0;
    bool next(std::string& line) {
        if (!std::getline(in, line)) return false;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw validation_error(origin + ":" + std::to_string(lineno) + ": " + msg);
    }
};

} // namespace

std::complex<double> zeta_em(std::complex<double> s) {
    if (s == complex<double>(1.0, 0.0)) throw numeric_error("zeta pole at s = 1");
    const int N = 40;
    complex<double> acc = 0.0;
    for (int n = 1; n < N; ++n) acc += std::exp(-s * std::log(static_cast<double>(n)));
    const double logN = std::log(static_cast<double>(N));
    acc += std::exp((1.0 - s) * logN) / (s - 1.0);
    acc += 0.5 * std::exp(-s * logN);
    // Euler-Maclaurin correction terms
    complex<double> rising = s; // s (s+1) ... (s+2k-2)
    double fact = 2.0;          // (2k)!
    for (int k = 1; k <= 12; ++k) {
        acc += kBernoulli[k - 1] / fact * rising *
               std::exp(-(s + static_cast<double>(2 * k - 1)) * logN);
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        fact *= (2 * k + 1) * (2 * k + 2);
    }
    return acc;
}

std::complex<double> scattering_phi(double t) {
    if (std::abs(t) < 1e-12) return -1.0; // phi(1/2) = -1 for the modular group
    const complex<double> it(0.0, t);
    const complex<double> num = gamma_complex(it) * zeta_em(2.0 * it);
    const complex<double> den = gamma_complex(0.5 + it) * zeta_em(1.0 + 2.0 * it);
    return std::sqrt(pi) * num / den;
}

SpectralRegistry SpectralRegistry::modular_base() {
    SpectralRegistry reg;
    const double u0 = std::sqrt(3.0 / pi); // 1/sqrt(vol), vol = pi/3
    reg.small_eigs.push_back({1.0, [u0](const Point&) { return u0; }});
    reg.sigma_gap = 0.5;
    return reg;
}

SpectralRegistry parse_registry(std::istream& in, const std::string& origin) {
    LineReader rd{in, origin};
    std::string line;
    if (!rd.next(line) || line != "maass v1") {
        if (rd.lineno == 0) ++rd.lineno;
        rd.fail("expected header \"maass v1\"");
    }
    SpectralRegistry reg = SpectralRegistry::modular_base();
    MaassForm current;
    bool in_form = false;
    long long expect_n = 1;

    auto flush = [&]() {
        if (!in_form) return;
        if (current.coeffs.empty()) rd.fail("form has no coefficients");
        if (current.coeffs[0] == 0.0) rd.fail("a_1 must be nonzero");
        reg.cusp_forms.push_back(std::move(current));
        current = MaassForm{};
        in_form = false;
        expect_n = 1;
    };

    while (rd.next(line)) {
        std::string trimmed = line;
        auto hash = trimmed.find('#');
        if (hash != std::string::npos) trimmed.resize(hash);
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
            trimmed.pop_back();
        if (trimmed.empty()) {
            flush();
            continue;
        }
        std::istringstream ss(trimmed);
        std::string tok;
        ss >> tok;
        if (tok == "form") {
            flush();
            in_form = true;
            current.t = -1.0;
            std::string kv;
            while (ss >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) rd.fail("expected key=value in form line");
                std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                if (key == "t") {
                    current.t = std::atof(val.c_str());
                } else if (key == "parity") {
                    if (val == "even") current.parity = Parity::even;
                    else if (val == "odd") current.parity = Parity::odd;
                    else rd.fail("parity must be even or odd");
                } else if (key == "norm") {
                    current.norm_note = val;
                } else {
                    rd.fail("unknown form attribute \"" + key + "\"");
                }
            }
            if (!(current.t > 0.0)) rd.fail("form requires t > 0");
        } else {
            if (!in_form) rd.fail("coefficient line outside a form");
            long long n = std::atoll(tok.c_str());
            double a;
            if (!(ss >> a)) rd.fail("expected \"<n> <a_n>\"");
            if (n != expect_n)
                rd.fail("coefficient index " + std::to_string(n) + ", expected " +
                        std::to_string(expect_n));
            current.coeffs.push_back(a);
            ++expect_n;
        }
    }
    flush();

    std::sort(reg.cusp_forms.begin(), reg.cusp_forms.end(),
              [](const MaassForm& a, const MaassForm& b) { return a.t < b.t; });
    for (size_t i = 1; i < reg.cusp_forms.size(); ++i)
        if (reg.cusp_forms[i].t == reg.cusp_forms[i - 1].t)
            throw validation_error(origin + ": duplicate spectral parameter t = " +
                                   std::to_string(reg.cusp_forms[i].t));
    return reg;
}

SpectralRegistry load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open registry file " + path);
    return parse_registry(in, path);
}

void serialize_registry(const SpectralRegistry& reg, std::ostream& out) {
    out << "maass v1\n";
    for (const auto& f : reg.cusp_forms) {
        out << "\nform t=";
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", f.t);
        out << buf << " parity=" << (f.parity == Parity::even ? "even" : "odd");
        if (!f.norm_note.empty()) out << " norm=" << f.norm_note;
        out << "\n";
        for (size_t i = 0; i < f.coeffs.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", f.coeffs[i]);
            out << (i + 1) << " " << buf << "\n";
        }
    }
}

double eval_maass(const MaassForm& form, const Point& z) {
    const double n_max = static_cast<double>(form.coeffs.size());
    if (n_max * z.y < 3.0)
        throw numeric_error("insufficient coefficients for this height: need n_max*y >= 3");
    const double sy = std::sqrt(z.y);
    double acc = 0.0;
    for (size_t i = 0; i < form.coeffs.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        const double arg = 2.0 * pi * n * z.y;
        const double k = kbessel(form.t, arg);
        const double osc = form.parity == Parity::even ? std::cos(2.0 * pi * n * z.x)
                                                       : std::sin(2.0 * pi * n * z.x);
        acc += form.coeffs[i] * sy * k * osc;
    }
    return acc;
}

std::complex<double> eval_eisenstein(const Point& z, double t) {
    if (z.y < 0.5)
        throw numeric_error("Eisenstein evaluation requires y >= 0.5; reduce the point first");
    if (t == 0.0) return 0.0; // phi(1/2) = -1 and 1/zeta(1) = 0: E(z,1/2) vanishes
    const double y = z.y;
    const complex<double> it(0.0, t);
    const complex<double> s = 0.5 + it;
    complex<double> E = std::exp(s * std::log(y)) + scattering_phi(t) * std::exp((1.0 - s) * std::log(y));
    // 4 / theta(s), theta(s) = pi^{-s} Gamma(s) zeta(2s)
    const complex<double> theta =
        std::exp(-s * std::log(pi)) * gamma_complex(s) * zeta_em(2.0 * s);
    const complex<double> coeff = 4.0 / theta;
    const double sy = std::sqrt(y);
    const double scale_back = std::exp(-0.5 * pi * std::abs(t));
    int quiet = 0;
    for (long long n = 1; n <= 600; ++n) {
        const double kscaled = bessel_k_imag_scaled(t, 2.0 * pi * n * y);
        const complex<double> term =
            coeff * eta_t(n, t) * sy * (kscaled * scale_back) * std::cos(2.0 * pi * n * z.x);
        E += term;
        if (std::abs(coeff) * std::abs(kscaled * scale_back) * sy * (n + 1) < 1e-14 * (1.0 + std::abs(E)))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2) break;
    }
    return E;
}

WeylSum weyl_sum(const SpectralRegistry& reg, const Point& z, double T) {
    if (!(T > 0.0)) throw numeric_error("weyl_sum requires T > 0");
    WeylSum out{0.0, 0.0, 0.0};
    for (const auto& f : reg.cusp_forms) {
        if (f.t <= 0.0 || f.t >= T) continue;
        const double u = eval_maass(f, z);
        out.discrete += 2.0 * u * u; // both signs of t_j
    }
    // (1/4pi) int_{-T}^{T} |E|^2 dt = (1/2pi) int_0^T by conjugation symmetry
    const int intervals = std::max(100, static_cast<int>(std::ceil(T / 0.01)));
    auto f = [&](double t) { return std::norm(eval_eisenstein(z, t)); };
    out.continuous = integrate_simpson(f, 0.0, T, intervals) / (2.0 * pi);
    out.total_over_t2 = (out.discrete + out.continuous) / (T * T);
    return out;
}

SufficiencyReport sufficiently_many_check(const SpectralRegistry& reg, const Point& z,
                                          const std::vector<double>& t_list) {
    SufficiencyReport rep;
    rep.bounded_below = !t_list.empty();
    for (double T : t_list) {
        double mass = 0.0;
        for (const auto& f : reg.cusp_forms) {
            if (f.t <= 0.0 || f.t >= T) continue;
            const double u = eval_maass(f, z);
            mass += 2.0 * u * u;
        }
        SufficiencyReport::Row row{T, mass, T > 0 ? mass / (T * T) : 0.0};
        if (!(row.ratio > 0.0)) rep.bounded_below = false;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace hyplatt
