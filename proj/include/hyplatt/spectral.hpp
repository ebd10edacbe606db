#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyplatt/hypgeom.hpp"
#include "hyplatt/lattice_count.hpp"

namespace hyplatt {

enum class Parity { even, odd };

// Ingested Maass cusp form: spectral parameter t (> 0), parity, and Fourier
// coefficients a_1..a_nmax.  Evaluated as
//   u(z) = sum_n a_n sqrt(y) K_{it}(2 pi n y) {cos|sin}(2 pi n x).
struct MaassForm {
    double t{0.0};
    Parity parity{Parity::even};
    std::vector<double> coeffs; // coeffs[k] = a_{k+1}
    std::string norm_note;
};

// Residual/small eigenvalue s in (1/2, 1] with its eigenfunction values.
struct SmallEigenvalue {
    double s{1.0};
    std::function<double(const Point&)> value;
};

// lambda = 1/4 eigenfunction term (t = 0); none exist for the modular
// group, but the subtraction path supports synthetic entries.
struct ZeroForm {
    std::function<double(const Point&)> value;
};

struct SpectralRegistry {
    GroupModel group{GroupModel::psl2z()};
    std::vector<SmallEigenvalue> small_eigs; // always holds s_0 = 1
    std::vector<ZeroForm> zero_forms;
    std::vector<MaassForm> cusp_forms; // sorted by t
    double sigma_gap{0.5};

    // Registry with only the constant eigenfunction 1/sqrt(vol), vol = pi/3.
    static SpectralRegistry modular_base();
};

// Parses the line-oriented "maass v1" format; throws validation_error with
// a line number on malformed input.
SpectralRegistry load_registry(const std::string& path);
SpectralRegistry parse_registry(std::istream& in, const std::string& origin);
void serialize_registry(const SpectralRegistry& reg, std::ostream& out);

// Truncated Fourier evaluation; requires n_max * y >= 3 so the K-Bessel
// tail is below 1e-10.
double eval_maass(const MaassForm& form, const Point& z);

// Eisenstein series E(z, 1/2 + it) of the modular group via the divisor-sum
// Fourier expansion.  Requires y >= 0.5.
std::complex<double> eval_eisenstein(const Point& z, double t);

// Scattering coefficient phi(1/2 + it) = sqrt(pi) Gamma(it) zeta(2it) /
// (Gamma(1/2+it) zeta(1+2it)); unimodular on the critical line.
std::complex<double> scattering_phi(double t);

// zeta(s) by Euler-Maclaurin; accurate for |Im s| <= ~100 away from s = 1.
std::complex<double> zeta_em(std::complex<double> s);

struct WeylSum {
    double discrete;      // sum over 0 < t_j < T of 2 |u_j(z)|^2 (both signs of t_j)
    double continuous;    // (1/4pi) int_{-T}^{T} |E(z,1/2+it)|^2 dt
    double total_over_t2; // (discrete + continuous) / T^2
};
WeylSum weyl_sum(const SpectralRegistry& reg, const Point& z, double T);

struct SufficiencyReport {
    struct Row {
        double T;
        double mass;  // sum_{0<t_j<T} 2 |u_j(z)|^2
        double ratio; // mass / T^2
    };
    std::vector<Row> rows;
    bool bounded_below; // true when every ratio with nonempty range is positive
};
SufficiencyReport sufficiently_many_check(const SpectralRegistry& reg, const Point& z,
                                          const std::vector<double>& t_list);

} // namespace hyplatt
