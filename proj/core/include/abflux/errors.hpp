#pragma once

#include <stdexcept>
#include <string>

namespace abflux {

/// Cylinder amplitude list with zero total weight; no state can be normalized from it.
class AllZeroAmplitudes : public std::invalid_argument {
public:
    AllZeroAmplitudes() : std::invalid_argument("cylinder amplitudes are all zero") {}
};

/// NaN or infinity in a numeric input.
class NonFiniteInput : public std::invalid_argument {
public:
    explicit NonFiniteInput(const std::string& what)
        : std::invalid_argument("non-finite input: " + what) {}
};

/// Visibility requested for a state whose arm weights are not balanced.
class UnequalArms : public std::domain_error {
public:
    UnequalArms() : std::domain_error("arm weights are unequal; visibility is defined for balanced arms") {}
};

/// Pre- and post-selection states are (numerically) orthogonal; the conditional
/// quantities they define do not exist.
class OrthogonalPostSelection : public std::domain_error {
public:
    OrthogonalPostSelection()
        : std::domain_error("post-selection state is orthogonal to the pre-selected state") {}
};

/// A radius that must be strictly positive was not.
class NonpositiveRadius : public std::domain_error {
public:
    NonpositiveRadius() : std::domain_error("radius must be > 0") {}
};

}  // namespace abflux
