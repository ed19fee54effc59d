#include "abflux/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace abflux {

EncircleAngle::EncircleAngle(double theta) : theta_(theta) {
    if (!std::isfinite(theta)) throw NonFiniteInput("encircle angle");
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::domain_error("encircle angle must lie in [0, pi]");
}

EncircleAngle EncircleAngle::full_loop() { return EncircleAngle(std::numbers::pi); }

JointState encircle(const JointState& state, const Coupling& c, EncircleAngle angle) {
    const double rate = c.qK() * angle.theta() / (2.0 * std::numbers::pi);
    const std::size_t n = state.size();
    std::vector<Complex> left(n);
    std::vector<Complex> right(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int j = state.j_min() + static_cast<int>(i);
        const Complex phase = std::polar(1.0, rate * static_cast<double>(j));
        left[i] = state.amps(Arm::Left)[i] * std::conj(phase);
        right[i] = state.amps(Arm::Right)[i] * phase;
    }
    return JointState(state.j_min(), std::move(left), std::move(right));
}

ChargeDensityMatrix reduced_charge(const JointState& state) {
    Complex ll{0.0, 0.0}, lr{0.0, 0.0}, rr{0.0, 0.0};
    const auto l = state.amps(Arm::Left);
    const auto r = state.amps(Arm::Right);
    for (std::size_t i = 0; i < l.size(); ++i) {
        ll += l[i] * std::conj(l[i]);
        lr += l[i] * std::conj(r[i]);
        rr += r[i] * std::conj(r[i]);
    }
    return ChargeDensityMatrix(ll, lr, std::conj(lr), rr);
}

double visibility(const JointState& state) {
    // encircle only rotates phases within each arm, so the present arm
    // weights equal the pre-encircle ones.
    const double wl = std::sqrt(state.arm_weight(Arm::Left));
    const double wr = std::sqrt(state.arm_weight(Arm::Right));
    if (std::abs(wl - wr) > 1e-9) throw UnequalArms();
    const auto rho = reduced_charge(state);
    return 2.0 * std::abs(rho.rl());
}

}  // namespace abflux
