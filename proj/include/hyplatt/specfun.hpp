#pragma once

#include <complex>

namespace hyplatt {

// Principal-branch log-Gamma, Lanczos approximation with reflection for
// Re z < 1/2.  The imaginary part may differ from the principal one by a
// multiple of 2*pi; callers only exponentiate differences or take moduli.
std::complex<double> lgamma_complex(std::complex<double> z);

// Gamma(z), relative accuracy ~1e-13.  Throws numeric_error at poles.
std::complex<double> gamma_complex(std::complex<double> z);

double digamma_real(double x);

// Gamma(it) / Gamma(3/2 + it), t != 0.
std::complex<double> gamma_ratio_32(double t);

// Selberg/Harish-Chandra transform of the ball indicator at X = 2 cosh r:
// h_X(t) = 4 sqrt(2) int_0^r cos(tu) sqrt(cosh r - cosh u) du, by adaptive
// quadrature after the substitution u = r - v^2 removing the endpoint
// square-root singularity.  Absolute error <= 1e-9 sqrt(X).
double h_quadrature(double X, double t);

// Leading asymptotic term 2 sqrt(pi) Re(Gamma(it)/Gamma(3/2+it) X^{it}) X^{1/2};
// below |t| = 1e-6 switches to the analytic t -> 0 limit.
double h_asymptotic(double X, double t);

// h_X(0) by quadrature; grows like sqrt(X) log X.
double h_zero_limit(double X);

// Re(Gamma(it)/Gamma(3/2+it)), negative for all real t != 0.
double sign_a(double t);

// Re(Gamma(it)/(Gamma(3/2+it)(1+it))), negative for all real t != 0.
double sign_b(double t);

// Re(Gamma(it)/Gamma(3/2+it) * it/(1+it)); changes sign on (0, c).
double sign_c_product(double t);

// Largest zero of sign_c_product on (0, 50], bisected to 1e-8; verifies
// negativity on (zero, 200].  Throws numeric_error if no sign change found.
double sign_c_threshold();

struct BetaReduction {
    double lhs;     // Re Gamma(it)/Gamma(3/2+it) via lgamma
    double rhs;     // (2/sqrt(pi)) Re B(it,3/2) via cos/sin quadratures
    double reduced; // (2t/3) C + S, the reduced integral combination (< 0)
};
BetaReduction beta_reduction_check(double t);

// K_{it}(x) = int_0^inf exp(-x cosh u) cos(tu) du, absolute error <= 1e-10
// for x in [1e-3, 50], |t| <= 30.
double bessel_k_imag(double t, double x);

// exp(pi|t|/2) K_{i|t|}(x): the scaled Bessel function used by the spectral
// module, accurate in the oscillatory regime x < |t| where the plain
// integral cancels catastrophically.
double bessel_k_imag_scaled(double t, double x);

// A(X) = 2 pi Phi_X(0), tends to 4 pi.
double a_of_x(double X);

} // namespace hyplatt
