#pragma once

#include <cstdint>
#include <vector>

#include "abflux/coupling.hpp"
#include "abflux/dynamics.hpp"
#include "abflux/hilbert.hpp"

namespace abflux {

/// Charge state conditioned on a successful cylinder post-selection.
struct PostselectedCharge {
    Complex left;
    Complex right;
    /// Probability that the post-selection succeeds.
    double success_prob;
    /// True when built by exact projection, false for the weak-regime form.
    bool exact;

    /// Conditional probability of finding the charge on the left arm.
    double left_probability() const;
};

/// One detector-then-postselect run.
struct TrialRecord {
    std::uint64_t trial_index;
    std::uint64_t seed;
    bool left_detector_fired;
    bool postselect_succeeded;
};

struct WilsonInterval {
    double low;
    double high;
};

struct TrialSummary {
    std::uint64_t trials = 0;
    std::uint64_t left_clicks = 0;
    std::uint64_t postselected = 0;
    std::uint64_t left_and_postselected = 0;
    /// Pre-filter detector marginal, left_clicks / trials.
    double detector_left_frequency = 0.0;
    /// Empirical P(left | postselected); NaN when nothing survived the filter.
    double conditional_left_frequency = 0.0;
    /// Wilson 95% interval for the conditional frequency.
    WilsonInterval conditional_ci{0.0, 0.0};
};

struct TrialRun {
    std::vector<TrialRecord> records;
    TrialSummary summary;
};

/// Projects the cylinder onto phi and returns the normalized conditional
/// charge state. Throws OrthogonalPostSelection when the projected norm
/// vanishes (<= 1e-12).
PostselectedCharge postselect_exact(const JointState& state, const CylinderState& phi);

/// Weak-regime post-selected charge built from the complex relative phase
/// exp(i qK <P>_w theta / (pi hbar)) between the arms.
PostselectedCharge postselect_weak_approx(const CylinderState& xi, const CylinderState& phi,
                                          const Coupling& c, EncircleAngle theta);

/// Left-arm probability e^{alpha theta} / (e^{alpha theta} + e^{-alpha theta}),
/// evaluated as a logistic so it stays finite for |alpha*theta| up to ~700.
double left_arm_probability(double alpha, double theta);

/// Right-arm counterpart, 1 - p_L.
double right_arm_probability(double alpha, double theta);

/// Runs n independent detector-then-postselect trials. Each trial draws from
/// its own counter-derived stream, so results are reproducible bit-for-bit
/// for a given master_seed regardless of thread count (threads = 0 picks a
/// default).
TrialRun run_trials(const CylinderState& xi, const CylinderState& phi, const Coupling& c,
                    EncircleAngle theta, std::uint64_t n, std::uint64_t master_seed,
                    unsigned threads = 0);

/// Wilson 95% score interval for successes/total.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t total);

}  // namespace abflux
