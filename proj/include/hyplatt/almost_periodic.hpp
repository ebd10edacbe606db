#pragma once

#include <utility>
#include <vector>

#include "hyplatt/error_lab.hpp"
#include "hyplatt/spectral.hpp"

namespace hyplatt {

// Finds R in [M, M T^n] with |e^{i r_j R} - 1| < 1/T for every r_j, by
// pigeonhole bucketing of the phase vector over multiples of M, with a
// deterministic fine scan as fallback.  Exhausting the guaranteed range
// is an internal error and aborts loudly.
double dirichlet_search(const std::vector<double>& r_list, double M, double T);

// S_{z,A}(R) = 2 sqrt(pi) sum_{0<t_j<A} |u_j(z)|^2
//              Re( Gamma(it_j) / (Gamma(3/2+it_j)(1+it_j)) e^{i t_j R} )
double finite_sum_S(const SpectralRegistry& reg, const Point& z, double A, double R);

// Termwise d/dR of finite_sum_S (extra factor i t_j).
double finite_sum_S_derivative(const SpectralRegistry& reg, const Point& z, double A,
                               double R);

// Triangle kernel psi(x) = max(0, 1-|x|); psi_eps(x) = psi(x/eps)/eps.
// Its transform is sinc^2 and hence nonnegative.
struct Mollifier {
    double epsilon;
    explicit Mollifier(double eps);
    double psi(double x) const;
    double psi_eps(double x) const;
};

// psi_hat(eps t) = (sin(eps t / 2) / (eps t / 2))^2, with value 1 at t = 0.
double psi_hat(double epsilon, double t);

// Discrete convolution of uniformly spaced (R, value) samples with psi_eps.
// Contract: spacing <= eps/10 and enough margin that at least one output
// point has the kernel fully covered; violations throw validation_error.
// Output keeps only fully covered points.
std::vector<std::pair<double, double>>
mollify_error(const std::vector<std::pair<double, double>>& samples, double epsilon);

struct ScanStats {
    double inf, sup;
    double inf_at, sup_at;
    long long negatives, positives;
};

struct OmegaScanReport {
    std::vector<std::pair<double, double>> raw;       // (R, e(e^R) / e^{R/2})
    std::vector<std::pair<double, double>> mollified; // psi_eps-smoothed
    ScanStats raw_stats, mollified_stats;
};

// Normalized error e(e^R)/e^{R/2} over [R1, R2] (sampled at spacing
// epsilon/20 with an epsilon margin on both sides), plus its mollification.
OmegaScanReport omega_witness_scan(const SpectralRegistry& reg, const ErrorCurve& curve,
                                   const Mollifier& moll, double R1, double R2);

} // namespace hyplatt
