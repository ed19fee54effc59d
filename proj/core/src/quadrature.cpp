#include "abflux/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace abflux {

namespace {

double simpson(double h, double fa, double fm, double fb) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
}

double simpson_recurse(const std::function<double(double)>& f, double a, double m, double b,
                       double fa, double fm, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(m - a, fa, flm, fm);
    const double right = simpson(b - m, fm, frm, fb);
    const double err = left + right - whole;
    // effective tolerance is floored at the panel's rounding noise
    const double noise_floor = 1e-15 * (std::abs(left) + std::abs(right));
    if (std::abs(err) <= std::max(15.0 * tol, noise_floor) || depth <= 0)
        return left + right + err / 15.0;
    return simpson_recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be > 0");
    if (a == b) return 0.0;
    // fixed initial subdivision; one Simpson panel can miss features narrower
    // than its three samples
    constexpr int kInitialPanels = 8;
    const double h = (b - a) / kInitialPanels;
    double total = 0.0;
    for (int p = 0; p < kInitialPanels; ++p) {
        const double pa = a + p * h;
        const double pb = p + 1 == kInitialPanels ? b : pa + h;
        const double pm = 0.5 * (pa + pb);
        const double fa = f(pa);
        const double fm = f(pm);
        const double fb = f(pb);
        const double whole = simpson(pb - pa, fa, fm, fb);
        total += simpson_recurse(f, pa, pm, pb, fa, fm, fb, whole, abs_tol / kInitialPanels,
                                 max_depth);
    }
    return total;
}

}  // namespace abflux
