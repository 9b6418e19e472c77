#ifndef SVPLAB_APPROX_HPP
#define SVPLAB_APPROX_HPP

#include <cstdint>
#include <vector>

#include "svplab/encoding.hpp"
#include "svplab/statevector.hpp"

namespace svplab {

// Sampling probabilities per successive-minimum length class. lengths[0] is
// always the zero class (the failure outcome).
struct LengthDistribution {
    std::vector<double> lengths;
    std::vector<double> probs;
};

LengthDistribution length_distribution(const StateVector& state,
                                       const ProblemEncoding& encoding);

// Probability of measuring any nonzero vector of length <= gamma * lambda1.
double success_prob_gamma(const StateVector& state,
                          const ProblemEncoding& encoding, double gamma);

struct MinLengthResult {
    double expected_length = 0.0;
    double failure_prob = 0.0;  // p_0^k, all k draws hit the zero vector
};

// Expected minimum nonzero length over k independent draws:
//   E = sum_{i>0} lambda_i * [(T_i + p_0 + p_i)^k - T_i^k - p_0^k]
// with T_i the total probability of strictly longer classes. Implemented
// verbatim (no renormalization by 1 - p_0^k); failure_prob is reported
// separately so consumers can renormalize.
MinLengthResult expected_min_length(const LengthDistribution& dist,
                                    std::int64_t k);

inline constexpr std::int64_t kDefaultDraws = 5000;

struct ApproxReport {
    double expected_length = 0.0;
    double approx_factor = 0.0;  // expected_length / lambda1
    double failure_prob = 0.0;
    std::int64_t k = kDefaultDraws;
};

ApproxReport approximation_factor(const StateVector& state,
                                  const ProblemEncoding& encoding,
                                  std::int64_t k = kDefaultDraws);

struct ReferenceCurves {
    double random_guess = 0.0;  // tau * 2^-m
    double grover = 0.0;        // sqrt(tau * 2^-m)
};

// Per-run success probabilities of the baselines for tau gamma-solutions in
// an m-qubit search space.
ReferenceCurves reference_curves(int m, double tau);

}  // namespace svplab

#endif
