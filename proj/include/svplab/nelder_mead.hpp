#ifndef SVPLAB_NELDER_MEAD_HPP
#define SVPLAB_NELDER_MEAD_HPP

#include <functional>
#include <vector>

namespace svplab {

struct NelderMeadOptions {
    int max_evals = 2000;
    double initial_scale = 0.5;  // simplex edge length around the start point
    double f_tol = 1e-12;        // spread of simplex values for convergence
};

struct NelderMeadResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Downhill simplex minimization. Derivative-free; stops at max_evals or when
// the simplex value spread drops below f_tol. Evaluations that throw or
// return non-finite values are treated as +infinity.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn,
    const std::vector<double>& start, const NelderMeadOptions& options);

}  // namespace svplab

#endif
