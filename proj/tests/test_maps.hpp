#pragma once

// Shared fixtures for the test suites.

#include <cmath>

#include <linresp/map.hpp>

namespace testmaps {

inline const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

/// Smooth perturbed tent with nonzero second derivatives on both branches:
/// left  1.8x + 0.45x^2 - 0.5x^3   (f' in [1.8, 1.935], f(0)=0, f(0.5)=0.95)
/// right 1.8 - 1.6x - 0.2x^2       (f' in [-2, -1.8],   f(0.5)=0.95, f(1)=0)
inline linresp::UnimodalMap smooth_tent() {
    return linresp::polynomial_map(0.0, 1.0, 0.5,
                                   {0.0, 1.8, 0.45, -0.5},
                                   {1.8, -1.6, -0.2},
                                   "smooth_tent");
}

} // namespace testmaps
