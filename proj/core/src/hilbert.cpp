#include "abflux/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace abflux {

namespace {

bool all_finite(std::span<const Complex> amps) {
    return std::all_of(amps.begin(), amps.end(), [](const Complex& a) {
        return std::isfinite(a.real()) && std::isfinite(a.imag());
    });
}

double total_norm(std::span<const Complex> amps) {
    double n = 0.0;
    for (const auto& a : amps) n += std::norm(a);
    return n;
}

}  // namespace

CylinderState::CylinderState(int j_min, std::vector<Complex> amps)
    : j_min_(j_min), amps_(std::move(amps)) {
    if (amps_.empty()) throw std::invalid_argument("cylinder amplitude list is empty");
    if (!all_finite(amps_)) throw NonFiniteInput("cylinder amplitudes");
    const double n = total_norm(amps_);
    if (n == 0.0) throw AllZeroAmplitudes();
    const double scale = 1.0 / std::sqrt(n);
    for (auto& a : amps_) a *= scale;
}

CylinderState CylinderState::padded(int j_min, int j_max) const {
    if (j_min > this->j_min() || j_max < this->j_max())
        throw std::invalid_argument("padded window must contain the original window");
    std::vector<Complex> out(static_cast<std::size_t>(j_max - j_min + 1), Complex{0.0, 0.0});
    for (int j = this->j_min(); j <= this->j_max(); ++j)
        out[static_cast<std::size_t>(j - j_min)] = amp(j);
    return CylinderState(j_min, std::move(out));
}

PathAmplitudes PathAmplitudes::equal_superposition() {
    const double r = 1.0 / std::sqrt(2.0);
    return {Complex{r, 0.0}, Complex{r, 0.0}};
}

JointState::JointState(int j_min, std::vector<Complex> left_amps, std::vector<Complex> right_amps)
    : j_min_(j_min), left_(std::move(left_amps)), right_(std::move(right_amps)) {
    if (left_.empty() || left_.size() != right_.size())
        throw std::invalid_argument("joint state arms must be non-empty and equal-length");
    if (!all_finite(left_) || !all_finite(right_)) throw NonFiniteInput("joint amplitudes");
    const double n = total_norm(left_) + total_norm(right_);
    if (std::abs(n - 1.0) > kNormTolerance)
        throw std::invalid_argument("joint state is not normalized");
}

double JointState::arm_weight(Arm arm) const {
    return total_norm(amps(arm));
}

ChargeDensityMatrix::ChargeDensityMatrix(Complex ll, Complex lr, Complex rl, Complex rr)
    : m_{ll, lr, rl, rr} {
    if (std::abs(lr - std::conj(rl)) > kNormTolerance)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(ll.imag()) > kNormTolerance || std::abs(rr.imag()) > kNormTolerance)
        throw std::invalid_argument("density matrix diagonal is not real");
    if (std::abs(ll.real() + rr.real() - 1.0) > kNormTolerance)
        throw std::invalid_argument("density matrix trace is not 1");
    const auto ev = eigenvalues();
    if (ev[0] < -kNormTolerance)
        throw std::invalid_argument("density matrix is not positive semidefinite");
}

double ChargeDensityMatrix::purity() const {
    // Tr(rho^2) = |ll|^2 + |rr|^2 + 2|lr|^2 for Hermitian rho.
    return std::norm(m_[0]) + std::norm(m_[3]) + 2.0 * std::norm(m_[1]);
}

std::array<double, 2> ChargeDensityMatrix::eigenvalues() const {
    const double a = m_[0].real();
    const double d = m_[3].real();
    const double half_tr = 0.5 * (a + d);
    const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m_[1]));
    return {half_tr - disc, half_tr + disc};
}

CylinderState make_cylinder(int j_min, std::vector<Complex> amps) {
    return CylinderState(j_min, std::move(amps));
}

JointState tensor(const PathAmplitudes& charge, const CylinderState& cyl) {
    if (!std::isfinite(charge.left.real()) || !std::isfinite(charge.left.imag()) ||
        !std::isfinite(charge.right.real()) || !std::isfinite(charge.right.imag()))
        throw NonFiniteInput("charge amplitudes");
    if (std::abs(charge.norm_squared() - 1.0) > kNormTolerance)
        throw std::invalid_argument("charge amplitudes are not normalized");

    std::vector<Complex> left(cyl.size());
    std::vector<Complex> right(cyl.size());
    const auto amps = cyl.amps();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        left[i] = charge.left * amps[i];
        right[i] = charge.right * amps[i];
    }
    return JointState(cyl.j_min(), std::move(left), std::move(right));
}

Complex overlap(const CylinderState& x, const CylinderState& y) {
    const int lo = std::min(x.j_min(), y.j_min());
    const int hi = std::max(x.j_max(), y.j_max());
    Complex sum{0.0, 0.0};
    for (int j = lo; j <= hi; ++j) sum += std::conj(x.amp(j)) * y.amp(j);
    return sum;
}

}  // namespace abflux
