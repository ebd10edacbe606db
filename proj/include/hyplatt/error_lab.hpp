#pragma once

#include <vector>

#include "hyplatt/lattice_count.hpp"
#include "hyplatt/spectral.hpp"

namespace hyplatt {

struct ErrorSample {
    double X;
    long long N;
    double mainterm;
    double E; // N - mainterm
    double e; // E - h(0) * zero-form correction
};

// Error data along an X grid, derived from a single orbit enumeration.
struct ErrorCurve {
    OrbitProfile base;
    std::vector<ErrorSample> samples;
};

ErrorCurve build_error_curve(const SpectralRegistry& reg, const GroupModel& group,
                             const Point& z, const Point& w,
                             const std::vector<double>& x_grid);

// Main term sum over small eigenvalues:
//   sum_j sqrt(pi) Gamma(s_j - 1/2)/Gamma(s_j + 1) u_j(z) u_j(w) X^{s_j}.
// Equals 3 X for the modular group.
double main_term(const SpectralRegistry& reg, const Point& z, const Point& w, double X);

double error_E(const SpectralRegistry& reg, const GroupModel& group,
               const Point& z, const Point& w, double X);
double error_E(const SpectralRegistry& reg, const OrbitProfile& profile, double X);

double error_e(const SpectralRegistry& reg, const GroupModel& group,
               const Point& z, const Point& w, double X);
double error_e(const SpectralRegistry& reg, const OrbitProfile& profile, double X);

// M(X;z,w) = (1/X) int_2^X e(x;z,w) x^{-1/2} dx.  The step part of the
// integrand is summed in closed form per orbit segment; the smooth parts use
// the power rule (and quadrature for synthetic zero-form corrections).
double m_average(const SpectralRegistry& reg, const GroupModel& group,
                 const Point& z, const Point& w, double X);
double m_average(const SpectralRegistry& reg, const OrbitProfile& profile, double X);

// M along a grid, sharing one prefix sweep of the profile.
std::vector<std::pair<double, double>>
m_average_curve(const SpectralRegistry& reg, const OrbitProfile& profile,
                const std::vector<double>& x_grid);

// Phillips-Rudnick mean (1/T) int_0^T e(2 cosh r; z, z) e^{-r/2} dr,
// piecewise exact in the step part.
double pr_mean(const SpectralRegistry& reg, const GroupModel& group, const Point& z, double T);
double pr_mean(const SpectralRegistry& reg, const OrbitProfile& profile, double T);

struct SpectralMEstimate {
    double estimate;   // truncated discrete model of M(e^R; z, w)
    double continuous; // modular floor sum |E(z,1/2)|^2 (zero)
    double tail_bound; // A^{-1/2} truncation budget
};
SpectralMEstimate spectral_m_estimate(const SpectralRegistry& reg, const Point& z,
                                      const Point& w, double R, double A);

struct ExponentFit {
    double slope;
    double intercept;
    int points_used;
};
// Least-squares fit of log|e| against log X over local maxima of |e|.
ExponentFit exponent_fit(const ErrorCurve& curve);
ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& x_abs_e);

} // namespace hyplatt
