#pragma once

#include "abflux/coupling.hpp"
#include "abflux/hilbert.hpp"

namespace abflux {

/// Conditional angular-momentum data for a pre-selected state xi and
/// post-selected state phi.
struct WeakValueReport {
    /// <phi|P|xi> / <phi|xi>, in units of action. Complex in general.
    Complex weak_value;
    /// Exponential tilt constant of the arm probabilities,
    /// alpha = qK Im(weak_value) / (pi hbar).
    double alpha;
    /// <phi|xi>.
    Complex overlap;
    /// max_j |qK (j hbar - <P>)| / hbar over j occupied in both states.
    /// Small values mean the weak-interaction expansion applies.
    double regime_margin;
    /// |qK (weak_value - <P>) / 2| / hbar, the post-selection-side condition.
    double postselect_margin;
};

/// <P> = sum_j |c_j|^2 j hbar over the cylinder state.
double angular_momentum_expectation(const CylinderState& xi, double hbar = 1.0);

/// Weak value of the cylinder angular momentum between xi and phi, with the
/// derived tilt constant and regime margins.
/// Throws OrthogonalPostSelection when |<phi|xi>| <= 1e-12.
WeakValueReport angular_momentum_weak_value(const CylinderState& xi, const CylinderState& phi,
                                            const Coupling& c);

/// Azimuthal component of the effective vector potential K X / (2 pi r), with
/// X the eigenvalue j hbar, the expectation <P>, or the weak value, depending
/// on the overload. Only the weak-value form is complex.
Complex effective_vector_potential(int j, const Coupling& c, double radius);
Complex effective_vector_potential(const CylinderState& xi, const Coupling& c, double radius);
Complex effective_vector_potential(const CylinderState& xi, const CylinderState& phi,
                                   const Coupling& c, double radius);

}  // namespace abflux
