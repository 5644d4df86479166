#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace svlab {

struct NelderMeadOptions {
    std::size_t max_evals = 20000;
    double tolerance = 1e-8;    // relative simplex spread in x and in f
    double initial_step = 0.05; // relative; absolute 0.00025 for zero coordinates
};

struct NelderMeadResult {
    std::vector<double> argmin;
    double value = 0.0;
    std::size_t n_evals = 0;
    std::size_t n_iterations = 0;
    bool converged = false;
};

// Derivative-free simplex minimization with reflection 1, expansion 2,
// contraction 0.5 and shrink 0.5. Deterministic for a fixed start. Non-finite
// objective values away from the start are treated as +inf; a non-finite
// value at the start throws Error(DomainError).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options = {});

} // namespace svlab
