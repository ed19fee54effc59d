#pragma once

#include "abflux/coupling.hpp"
#include "abflux/hilbert.hpp"

namespace abflux {

/// Angle traversed by each arm around the cylinder. The packets move in
/// opposite senses, so theta = pi closes the loop.
class EncircleAngle {
public:
    explicit EncircleAngle(double theta);

    double theta() const { return theta_; }

    static EncircleAngle full_loop();

private:
    double theta_;
};

/// Evolves the joint state while each packet sweeps an arc of `angle`.
///
/// The left amplitudes pick up exp(-i qK j theta / 2pi) and the right ones
/// the conjugate phase, per angular-momentum quantum number j. Unitary.
JointState encircle(const JointState& state, const Coupling& c, EncircleAngle angle);

/// Charge state after tracing out the cylinder:
/// rho[a][b] = sum_j amps[a][j] conj(amps[b][j]).
ChargeDensityMatrix reduced_charge(const JointState& state);

/// Interference visibility 2|rho_RL| of a balanced-arm state.
/// Throws UnequalArms when the arm weights differ beyond 1e-9.
double visibility(const JointState& state);

}  // namespace abflux
