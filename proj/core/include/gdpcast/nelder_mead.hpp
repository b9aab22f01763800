#pragma once

#include <functional>
#include <vector>

namespace gdpcast {

struct NelderMeadOptions {
    /// Stop once every vertex lies within this distance of the best vertex.
    double diameter_tolerance = 1e-8;
    int max_iterations = 5000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free minimization with the standard reflection / expansion /
/// contraction / shrink moves (coefficients 1, 2, 1/2, 1/2). The initial
/// simplex is `start` plus `start + steps[i] e_i`. Deterministic.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const std::vector<double>& steps,
                             const NelderMeadOptions& options = {});

}  // namespace gdpcast
