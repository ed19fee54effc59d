#include "abflux/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace abflux {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Antiderivative piece e^{-alpha t} (sin t - alpha cos t) of the oscillatory part.
double damped_trig(double alpha, double t) {
    return std::exp(-alpha * t) * (std::sin(t) - alpha * std::cos(t));
}

}  // namespace

RingDistribution::RingDistribution(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha)) throw NonFiniteInput("ring tilt constant");
    if (alpha == 0.0) {
        norm_ = 1.0 / std::numbers::pi;
    } else {
        // (2a^3 + 2a) / (1 - e^{-2 pi a}), written with expm1 so small |a|
        // keeps full precision down to the a -> 0 limit of 1/pi.
        norm_ = 2.0 * alpha_ * (1.0 + alpha_ * alpha_) / -std::expm1(-kTwoPi * alpha_);
    }
}

double RingDistribution::density(double theta) const {
    if (!(theta >= 0.0 && theta <= kTwoPi))
        throw std::domain_error("ring angle must lie in [0, 2pi]");
    const double s = std::sin(0.5 * theta);
    return norm_ * std::exp(-alpha_ * theta) * s * s;
}

double RingDistribution::window_probability(double theta, double epsilon) const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("window half-width must be > 0");
    if (!std::isfinite(theta)) throw NonFiniteInput("window center");
    const double a = std::clamp(theta - epsilon, 0.0, kTwoPi);
    const double b = std::clamp(theta + epsilon, 0.0, kTwoPi);
    if (b <= a) return 0.0;

    if (alpha_ == 0.0) {
        // integral of sin^2(t/2)/pi is (t - sin t) / 2pi
        return ((b - std::sin(b)) - (a - std::sin(a))) / kTwoPi;
    }

    // C(a)/2 * [ (e^{-aA} - e^{-aB})/a + (g(A) - g(B))/(1+a^2) ] with the 1/a
    // folded into the prefactor, again via expm1.
    const double denom = -std::expm1(-kTwoPi * alpha_);
    const double term1 =
        -(1.0 + alpha_ * alpha_) * std::exp(-alpha_ * a) * std::expm1(-alpha_ * (b - a)) / denom;
    const double term2 = alpha_ * (damped_trig(alpha_, a) - damped_trig(alpha_, b)) / denom;
    return term1 + term2;
}

Complex ring_ground_state_amplitude(double theta, const Coupling& c, double p_expectation) {
    if (!(theta >= 0.0 && theta <= kTwoPi))
        throw std::domain_error("ring angle must lie in [0, 2pi]");
    const double phase = c.qK() * p_expectation * theta / (kTwoPi * c.hbar());
    return std::polar(1.0 / std::sqrt(std::numbers::pi), phase) * std::sin(0.5 * theta);
}

double ring_p_initial(double theta, double epsilon) {
    return RingDistribution(0.0).window_probability(theta, epsilon);
}

double ring_p_final(double theta, double epsilon, double alpha) {
    return RingDistribution(alpha).window_probability(theta, epsilon);
}

}  // namespace abflux
