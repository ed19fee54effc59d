#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "abflux/coupling.hpp"
#include "abflux/errors.hpp"

namespace abflux {

using Complex = std::complex<double>;

/// Norm tolerance shared by all state invariants.
inline constexpr double kNormTolerance = 1e-12;

/// Which interferometer arm an amplitude belongs to.
enum class Arm : int { Left = 0, Right = 1 };

/// Angular-momentum state of the cylinder on a finite truncation window.
///
/// Amplitudes c_j are stored for consecutive quantum numbers
/// j = j_min .. j_min + size - 1; outside the window the amplitude is zero.
/// States are normalized on construction and immutable afterwards.
class CylinderState {
public:
    /// Builds a normalized state from an unnormalized amplitude list.
    /// Throws AllZeroAmplitudes / NonFiniteInput on degenerate input.
    CylinderState(int j_min, std::vector<Complex> amps);

    int j_min() const { return j_min_; }
    int j_max() const { return j_min_ + static_cast<int>(amps_.size()) - 1; }
    std::size_t size() const { return amps_.size(); }

    /// Amplitude for quantum number j; zero outside the window.
    Complex amp(int j) const {
        if (j < j_min() || j > j_max()) return {0.0, 0.0};
        return amps_[static_cast<std::size_t>(j - j_min_)];
    }

    std::span<const Complex> amps() const { return amps_; }

    /// Same state on an enlarged window [j_min, j_max] (zero-padded).
    CylinderState padded(int j_min, int j_max) const;

private:
    int j_min_;
    std::vector<Complex> amps_;
};

/// Two-path charge amplitudes (left packet, right packet).
struct PathAmplitudes {
    Complex left;
    Complex right;

    /// |a_L|^2 + |a_R|^2.
    double norm_squared() const { return std::norm(left) + std::norm(right); }

    /// The balanced split (|L> + |R>)/sqrt(2) every protocol starts from.
    static PathAmplitudes equal_superposition();
};

/// Joint state of the charge and cylinder over {L,R} x {j_min..j_max}.
///
/// Normalized on construction; total norm stays 1 under the unitary
/// operations in this library.
class JointState {
public:
    JointState(int j_min, std::vector<Complex> left_amps, std::vector<Complex> right_amps);

    int j_min() const { return j_min_; }
    int j_max() const { return j_min_ + static_cast<int>(size()) - 1; }
    std::size_t size() const { return left_.size(); }

    Complex amp(Arm arm, int j) const {
        if (j < j_min() || j > j_max()) return {0.0, 0.0};
        const auto idx = static_cast<std::size_t>(j - j_min_);
        return arm == Arm::Left ? left_[idx] : right_[idx];
    }

    std::span<const Complex> amps(Arm arm) const {
        return arm == Arm::Left ? std::span<const Complex>(left_) : std::span<const Complex>(right_);
    }

    /// Probability weight carried by one arm.
    double arm_weight(Arm arm) const;

    double norm_squared() const { return arm_weight(Arm::Left) + arm_weight(Arm::Right); }

private:
    int j_min_;
    std::vector<Complex> left_;
    std::vector<Complex> right_;
};

/// 2x2 density matrix of the charge in the {L,R} basis.
class ChargeDensityMatrix {
public:
    ChargeDensityMatrix(Complex ll, Complex lr, Complex rl, Complex rr);

    Complex ll() const { return m_[0]; }
    Complex lr() const { return m_[1]; }
    Complex rl() const { return m_[2]; }
    Complex rr() const { return m_[3]; }

    double trace() const { return m_[0].real() + m_[3].real(); }

    /// Tr(rho^2); 1 for a pure state.
    double purity() const;

    /// Eigenvalues of the Hermitian 2x2 matrix, ascending.
    std::array<double, 2> eigenvalues() const;

private:
    std::array<Complex, 4> m_;  // row-major: LL, LR, RL, RR
};

/// Normalized cylinder state from an unnormalized coefficient list.
CylinderState make_cylinder(int j_min, std::vector<Complex> amps);

/// Product state a_arm * c_j of a normalized charge and cylinder state.
JointState tensor(const PathAmplitudes& charge, const CylinderState& cyl);

/// Inner product <x|y> = sum_j conj(x_j) y_j; windows are aligned by zero-padding.
Complex overlap(const CylinderState& x, const CylinderState& y);

}  // namespace abflux
