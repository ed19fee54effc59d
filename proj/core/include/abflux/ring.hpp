#pragma once

#include "abflux/coupling.hpp"
#include "abflux/hilbert.hpp"

namespace abflux {

/// Normalized angular distribution of the ring-bound charge, optionally
/// tilted by the post-selection constant alpha:
///   density(theta) = C(alpha) e^{-alpha theta} sin^2(theta/2),  theta in [0, 2pi],
/// with C chosen so the full ring integrates to 1 (C(0) = 1/pi). The barrier
/// at theta = 0 forces density(0) = density(2pi) = 0.
class RingDistribution {
public:
    explicit RingDistribution(double alpha);

    double alpha() const { return alpha_; }

    /// C(alpha) = (2 alpha^3 + 2 alpha) / (1 - e^{-2 pi alpha}).
    double normalization_constant() const { return norm_; }

    double density(double theta) const;

    /// Exact probability of the window [theta - eps, theta + eps] clipped to
    /// [0, 2pi], from the closed-form antiderivative.
    double window_probability(double theta, double epsilon) const;

private:
    double alpha_;
    double norm_;
};

/// Ground-state amplitude (1/sqrt(pi)) e^{i qK <P> theta / (2 pi hbar)} sin(theta/2).
Complex ring_ground_state_amplitude(double theta, const Coupling& c, double p_expectation);

/// Pre-selection detection probability of an epsilon window around theta.
double ring_p_initial(double theta, double epsilon);

/// Post-selected detection probability of the same window for tilt alpha.
/// Falls back to ring_p_initial at alpha = 0.
double ring_p_final(double theta, double epsilon, double alpha);

}  // namespace abflux
