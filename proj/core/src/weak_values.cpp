#include "abflux/weak_values.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace abflux {

namespace {
constexpr double kOrthogonalityThreshold = 1e-12;
}

double angular_momentum_expectation(const CylinderState& xi, double hbar) {
    double sum = 0.0;
    for (int j = xi.j_min(); j <= xi.j_max(); ++j)
        sum += std::norm(xi.amp(j)) * static_cast<double>(j);
    return sum * hbar;
}

WeakValueReport angular_momentum_weak_value(const CylinderState& xi, const CylinderState& phi,
                                            const Coupling& c) {
    const Complex ovl = overlap(phi, xi);
    if (std::abs(ovl) <= kOrthogonalityThreshold) throw OrthogonalPostSelection();

    const int lo = std::min(xi.j_min(), phi.j_min());
    const int hi = std::max(xi.j_max(), phi.j_max());
    Complex numerator{0.0, 0.0};
    for (int j = lo; j <= hi; ++j)
        numerator += xi.amp(j) * std::conj(phi.amp(j)) * static_cast<double>(j);

    const double hbar = c.hbar();
    const Complex wv = hbar * numerator / ovl;
    const double alpha = c.qK() * wv.imag() / (std::numbers::pi * hbar);

    const double expect = angular_momentum_expectation(xi, hbar);
    double margin = 0.0;
    for (int j = lo; j <= hi; ++j) {
        if (std::abs(xi.amp(j)) > 0.0 && std::abs(phi.amp(j)) > 0.0)
            margin = std::max(margin, std::abs(c.qK() * (j * hbar - expect)) / hbar);
    }
    const double ps_margin = std::abs(c.qK() * (wv - expect) / 2.0) / hbar;

    return WeakValueReport{wv, alpha, ovl, margin, ps_margin};
}

Complex effective_vector_potential(int j, const Coupling& c, double radius) {
    if (!(radius > 0.0)) throw NonpositiveRadius();
    return Complex{c.K() * static_cast<double>(j) * c.hbar() / (2.0 * std::numbers::pi * radius), 0.0};
}

Complex effective_vector_potential(const CylinderState& xi, const Coupling& c, double radius) {
    if (!(radius > 0.0)) throw NonpositiveRadius();
    const double expect = angular_momentum_expectation(xi, c.hbar());
    return Complex{c.K() * expect / (2.0 * std::numbers::pi * radius), 0.0};
}

Complex effective_vector_potential(const CylinderState& xi, const CylinderState& phi,
                                   const Coupling& c, double radius) {
    if (!(radius > 0.0)) throw NonpositiveRadius();
    const auto report = angular_momentum_weak_value(xi, phi, c);
    return c.K() * report.weak_value / (2.0 * std::numbers::pi * radius);
}

}  // namespace abflux
