#pragma once

#include <functional>

namespace abflux {

/// Recursive adaptive Simpson integration of f over [a, b] to the given
/// absolute tolerance. Depth is capped (default 50); on hitting the cap the
/// current Richardson-corrected estimate is used for that panel.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, int max_depth = 50);

}  // namespace abflux
