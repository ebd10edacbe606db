#include "hyplatt/quadrature.hpp"

#include <cmath>

namespace hyplatt {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

void gk15(const std::function<double(double)>& f, double a, double b,
          double& kronrod, double& err) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    kronrod = resk * h;
    err = std::abs((resk - resg) * h);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth) {
    double k, e;
    gk15(f, a, b, k, e);
    if (e <= tol || depth <= 0) return k;
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    return adapt(f, a, b, abs_tol, max_depth);
}

double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                         int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace hyplatt
