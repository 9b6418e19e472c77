#include "svplab/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace svplab {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

}  // namespace

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn,
    const std::vector<double>& start, const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    NelderMeadResult result;
    int evals = 0;
    if (dim == 0) {
        result.best_point = start;
        try {
            result.best_value = fn(start);
        } catch (...) {
            result.best_value = std::numeric_limits<double>::infinity();
        }
        result.evaluations = 1;
        result.converged = true;
        return result;
    }
    auto safe_eval = [&](const std::vector<double>& x) {
        ++evals;
        double v;
        try {
            v = fn(x);
        } catch (...) {
            return std::numeric_limits<double>::infinity();
        }
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<std::vector<double>> simplex(dim + 1, start);
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i < dim; ++i)
        simplex[i + 1][i] += options.initial_scale;
    for (std::size_t i = 0; i <= dim; ++i) values[i] = safe_eval(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
            return values[a] < values[b];
        });
    };

    std::vector<double> centroid(dim), trial(dim);
    while (evals < options.max_evals) {
        sort_simplex();
        const std::size_t best = order.front(), worst = order.back();
        const std::size_t second_worst = order[dim - 1];
        if (std::isfinite(values[best]) &&
            values[worst] - values[best] < options.f_tol) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d)
                centroid[d] += simplex[i][d] / static_cast<double>(dim);
        }

        auto blend = [&](double coeff) {
            for (std::size_t d = 0; d < dim; ++d)
                trial[d] = centroid[d] + coeff * (centroid[d] - simplex[worst][d]);
        };

        blend(kReflect);
        const double reflected = safe_eval(trial);
        if (reflected < values[best]) {
            const auto reflected_pt = trial;
            blend(kExpand);
            const double expanded = safe_eval(trial);
            if (expanded < reflected) {
                simplex[worst] = trial;
                values[worst] = expanded;
            } else {
                simplex[worst] = reflected_pt;
                values[worst] = reflected;
            }
        } else if (reflected < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = reflected;
        } else {
            blend(-kContract);
            const double contracted = safe_eval(trial);
            if (contracted < values[worst]) {
                simplex[worst] = trial;
                values[worst] = contracted;
            } else {
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < dim; ++d)
                        simplex[i][d] = simplex[best][d] +
                                        kShrink * (simplex[i][d] - simplex[best][d]);
                    values[i] = safe_eval(simplex[i]);
                    if (evals >= options.max_evals) break;
                }
            }
        }
    }

    sort_simplex();
    result.best_point = simplex[order.front()];
    result.best_value = values[order.front()];
    result.evaluations = evals;
    return result;
}

}  // namespace svplab
