#include "svplab/fitkit.hpp"

#include <cmath>
#include <stdexcept>

#include "svplab/errors.hpp"

namespace svplab {

namespace {

void check_points(const std::vector<std::pair<double, double>>& points,
                  bool positive_abscissa) {
    if (points.size() < 2)
        throw std::invalid_argument("fit needs at least 2 points");
    bool distinct = false;
    for (const auto& [m, y] : points) {
        // Exact zeros (states with no solution amplitude) are rejected, not
        // clamped; clamping would silently distort the exponent.
        if (!(y > 0.0) || y < 1e-300)
            throw std::invalid_argument("fit requires positive values");
        if (positive_abscissa && !(m > 0.0))
            throw std::invalid_argument("power-law fit requires positive n");
        if (m != points.front().first) distinct = true;
    }
    if (!distinct)
        throw DegenerateDesignError("all fit points share the same abscissa");
}

}  // namespace

ScalingFit fit_exponential(
    const std::vector<std::pair<double, double>>& points) {
    check_points(points, false);
    const double n = static_cast<double>(points.size());
    double sum_m = 0.0, sum_m2 = 0.0, sum_ly = 0.0, sum_lym = 0.0;
    for (const auto& [m, y] : points) {
        const double ly = std::log2(y);
        sum_m += m;
        sum_m2 += m * m;
        sum_ly += ly;
        sum_lym += ly * m;
    }
    const double denom = n * sum_m2 - sum_m * sum_m;

    ScalingFit fit;
    fit.a = (sum_ly * sum_m - n * sum_lym) / denom;
    fit.b = (sum_ly * sum_m2 - sum_lym * sum_m) / denom;
    fit.points_used = points;

    double ss = 0.0;
    for (const auto& [m, y] : points) {
        const double r = std::log2(y) + fit.a * m - fit.b;
        ss += r * r;
    }
    fit.rms_log_residual = std::sqrt(ss / n);
    return fit;
}

double extrapolate(const ScalingFit& fit, double m) {
    return std::pow(2.0, -fit.a * m + fit.b);
}

PowerLawFit fit_powerlaw(const std::vector<std::pair<double, double>>& points) {
    check_points(points, true);
    // Same closed form on (log2 n, log2 y); the exponential fit's slope is
    // -a, so negate.
    std::vector<std::pair<double, double>> logged;
    logged.reserve(points.size());
    for (const auto& [x, y] : points) logged.emplace_back(std::log2(x), y);
    const ScalingFit lin = fit_exponential(logged);

    PowerLawFit fit;
    fit.exponent = -lin.a;
    fit.coeff = std::pow(2.0, lin.b);
    fit.rms_log_residual = lin.rms_log_residual;
    return fit;
}

}  // namespace svplab
