#include "abflux/postselect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "abflux/rng.hpp"
#include "abflux/weak_values.hpp"

namespace abflux {

namespace {

constexpr double kProjectedNormThreshold = 1e-12;

/// Unnormalized projection <phi| applied to one arm of the joint state.
Complex project_arm(const JointState& state, const CylinderState& phi, Arm arm) {
    const int lo = std::min(state.j_min(), phi.j_min());
    const int hi = std::max(state.j_max(), phi.j_max());
    Complex sum{0.0, 0.0};
    for (int j = lo; j <= hi; ++j) sum += std::conj(phi.amp(j)) * state.amp(arm, j);
    return sum;
}

unsigned resolve_threads(unsigned requested, std::uint64_t n) {
    unsigned t = requested;
    if (t == 0) {
        t = std::thread::hardware_concurrency();
        if (t == 0) t = 1;
    }
    t = std::min<unsigned>(t, 64);
    if (static_cast<std::uint64_t>(t) > n) t = static_cast<unsigned>(n);
    return std::max(1u, t);
}

}  // namespace

double PostselectedCharge::left_probability() const {
    return std::norm(left) / (std::norm(left) + std::norm(right));
}

PostselectedCharge postselect_exact(const JointState& state, const CylinderState& phi) {
    const Complex proj_left = project_arm(state, phi, Arm::Left);
    const Complex proj_right = project_arm(state, phi, Arm::Right);
    const double success = std::norm(proj_left) + std::norm(proj_right);
    const double norm = std::sqrt(success);
    if (norm <= kProjectedNormThreshold) throw OrthogonalPostSelection();
    return PostselectedCharge{proj_left / norm, proj_right / norm, success, true};
}

PostselectedCharge postselect_weak_approx(const CylinderState& xi, const CylinderState& phi,
                                          const Coupling& c, EncircleAngle theta) {
    const auto report = angular_momentum_weak_value(xi, phi, c);
    // Each arm carries exp(-/+ i qK <P>_w theta / (2 pi hbar)); the imaginary
    // part of the weak value turns the relative phase into a relative weight.
    const Complex half_phase =
        c.qK() * report.weak_value * theta.theta() / (2.0 * std::numbers::pi * c.hbar());
    const Complex left = std::exp(Complex{0.0, -1.0} * half_phase);
    const Complex right = std::exp(Complex{0.0, 1.0} * half_phase);
    const double norm = std::sqrt(std::norm(left) + std::norm(right));
    const double success =
        std::min(1.0, std::norm(report.overlap) * std::cosh(report.alpha * theta.theta()));
    return PostselectedCharge{left / norm, right / norm, success, false};
}

double left_arm_probability(double alpha, double theta) {
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::domain_error("arm probability angle must lie in [0, pi]");
    // Logistic form of e^{at}/(e^{at}+e^{-at}); the raw ratio overflows long
    // before the logistic does.
    return 1.0 / (1.0 + std::exp(-2.0 * alpha * theta));
}

double right_arm_probability(double alpha, double theta) {
    if (theta < 0.0 || theta > std::numbers::pi)
        throw std::domain_error("arm probability angle must lie in [0, pi]");
    return 1.0 - left_arm_probability(alpha, theta);
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t total) {
    if (total == 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        return {nan, nan};
    }
    constexpr double z = 1.959963984540054;  // two-sided 95%
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + 0.5 * z2n) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TrialRun run_trials(const CylinderState& xi, const CylinderState& phi, const Coupling& c,
                    EncircleAngle theta, std::uint64_t n, std::uint64_t master_seed,
                    unsigned threads) {
    if (n < 1) throw std::invalid_argument("trial count must be >= 1");

    // The protocol state is the same in every trial; only the draws differ.
    const JointState evolved = encircle(tensor(PathAmplitudes::equal_superposition(), xi), c, theta);
    const double weight_left = evolved.arm_weight(Arm::Left);
    const double weight_right = evolved.arm_weight(Arm::Right);
    const double p_left = weight_left;  // Born probability of the left detector; 1/2 by preparation

    // Binary cylinder measurement {|phi><phi|, 1 - |phi><phi|} conditioned on the arm.
    const double p_phi_given_left =
        weight_left > 0.0 ? std::norm(project_arm(evolved, phi, Arm::Left)) / weight_left : 0.0;
    const double p_phi_given_right =
        weight_right > 0.0 ? std::norm(project_arm(evolved, phi, Arm::Right)) / weight_right : 0.0;

    TrialRun run;
    run.records.resize(n);

    auto simulate_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const std::uint64_t seed = trial_seed(master_seed, i);
            SplitMix64 gen(seed);
            const bool left = gen.next_u01() < p_left;
            const double p_phi = left ? p_phi_given_left : p_phi_given_right;
            const bool selected = gen.next_u01() < p_phi;
            run.records[i] = TrialRecord{i, seed, left, selected};
        }
    };

    const unsigned nthreads = resolve_threads(threads, n);
    if (nthreads == 1) {
        simulate_range(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            const std::uint64_t begin = n * t / nthreads;
            const std::uint64_t end = n * (t + 1) / nthreads;
            pool.emplace_back(simulate_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    TrialSummary& s = run.summary;
    s.trials = n;
    for (const auto& rec : run.records) {
        s.left_clicks += rec.left_detector_fired ? 1 : 0;
        s.postselected += rec.postselect_succeeded ? 1 : 0;
        s.left_and_postselected += (rec.left_detector_fired && rec.postselect_succeeded) ? 1 : 0;
    }
    s.detector_left_frequency = static_cast<double>(s.left_clicks) / static_cast<double>(n);
    if (s.postselected > 0) {
        s.conditional_left_frequency =
            static_cast<double>(s.left_and_postselected) / static_cast<double>(s.postselected);
    } else {
        s.conditional_left_frequency = std::numeric_limits<double>::quiet_NaN();
    }
    s.conditional_ci = wilson_interval(s.left_and_postselected, s.postselected);
    return run;
}

}  // namespace abflux
