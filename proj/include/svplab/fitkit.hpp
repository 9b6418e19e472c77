#ifndef SVPLAB_FITKIT_HPP
#define SVPLAB_FITKIT_HPP

#include <utility>
#include <vector>

namespace svplab {

// Closed-form log-domain least-squares fit of y = 2^(-a*m + b). The fit
// minimizes squared error in log2(y), which weights the tail (large m) more
// than a linear-domain fit would.
struct ScalingFit {
    double a = 0.0;
    double b = 0.0;
    double rms_log_residual = 0.0;
    std::vector<std::pair<double, double>> points_used;  // (m, y)
};

struct PowerLawFit {
    double coeff = 0.0;     // c in y = c * n^e
    double exponent = 0.0;  // e
    double rms_log_residual = 0.0;
};

ScalingFit fit_exponential(
    const std::vector<std::pair<double, double>>& points);

double extrapolate(const ScalingFit& fit, double m);

// Linear least squares on (log2 n, log2 y): slope = e, intercept = log2 c.
PowerLawFit fit_powerlaw(const std::vector<std::pair<double, double>>& points);

}  // namespace svplab

#endif
