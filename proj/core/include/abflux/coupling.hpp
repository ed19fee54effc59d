#pragma once

#include <cmath>

#include "abflux/errors.hpp"

namespace abflux {

/// Physical parameters of the charge/cylinder interaction, in natural units.
///
/// q is the particle charge, K the interaction constant of the rotating
/// cylinder (tau/I_c = K/2pi), and hbar the action scale. Every phase in the
/// simulator is some multiple of q*K; hbar is kept explicit so quantities that
/// carry units of action read the same as their textbook form.
class Coupling {
public:
    Coupling(double q, double K, double hbar = 1.0) : q_(q), K_(K), hbar_(hbar) {
        if (!std::isfinite(q) || !std::isfinite(K) || !std::isfinite(hbar))
            throw NonFiniteInput("coupling parameters");
        if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
    }

    double q() const { return q_; }
    double K() const { return K_; }
    double hbar() const { return hbar_; }

    /// The product q*K that multiplies every angular-momentum quantum number.
    double qK() const { return q_ * K_; }

private:
    double q_;
    double K_;
    double hbar_;
};

}  // namespace abflux
