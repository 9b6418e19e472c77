#include "svplab/approx.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace svplab {

LengthDistribution length_distribution(const StateVector& state,
                                       const ProblemEncoding& encoding) {
    if (state.n != encoding.num_qubits())
        throw std::invalid_argument("state/encoding qubit counts differ");
    const auto& classes = encoding.length_classes();
    LengthDistribution dist;
    dist.lengths.reserve(classes.size());
    dist.probs.reserve(classes.size());
    for (const auto& cls : classes) {
        double p = 0.0;
        for (std::uint32_t x : cls.members) p += std::norm(state.amps[x]);
        dist.lengths.push_back(cls.length);
        dist.probs.push_back(p);
    }
    return dist;
}

double success_prob_gamma(const StateVector& state,
                          const ProblemEncoding& encoding, double gamma) {
    const auto indices = encoding.solution_set(gamma);
    return overlap(state, indices);
}

MinLengthResult expected_min_length(const LengthDistribution& dist,
                                    std::int64_t k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (dist.lengths.empty() || dist.lengths.front() != 0.0)
        throw std::invalid_argument("distribution must start with the zero class");

    const std::size_t count = dist.lengths.size();
    const double p0 = dist.probs[0];
    const double dk = static_cast<double>(k);

    MinLengthResult out;
    out.failure_prob = std::pow(p0, dk);
    // Suffix sums T_i = sum_{j>i} p_j keep every pow argument in [0, 1].
    // The first pow base T_i + p0 + p_i is accumulated as 1 minus the mass
    // of the strictly shorter nonzero classes: algebraically identical on a
    // normalized distribution, but it stops pow(..., k) from amplifying the
    // distribution's ~1e-16 normalization error by a factor of k.
    double tail = 1.0 - p0;
    for (std::size_t i = 1; i < count; ++i) {
        const double pi = dist.probs[i];
        const double head = std::min(1.0, tail + p0);  // T_i + p0 + p_i
        tail = std::max(0.0, tail - pi);               // T_i
        out.expected_length +=
            dist.lengths[i] *
            (std::pow(head, dk) - std::pow(tail, dk) - out.failure_prob);
    }
    return out;
}

ApproxReport approximation_factor(const StateVector& state,
                                  const ProblemEncoding& encoding,
                                  std::int64_t k) {
    const double lambda1 = encoding.lambda1_space();
    if (!(lambda1 > 0.0))
        throw std::invalid_argument("search space has no positive lambda1");
    const LengthDistribution dist = length_distribution(state, encoding);
    const MinLengthResult e = expected_min_length(dist, k);

    ApproxReport report;
    report.expected_length = e.expected_length;
    report.approx_factor = e.expected_length / lambda1;
    report.failure_prob = e.failure_prob;
    report.k = k;
    return report;
}

ReferenceCurves reference_curves(int m, double tau) {
    if (tau < 1.0 || tau > std::pow(2.0, m))
        throw std::invalid_argument("tau must lie in [1, 2^m]");
    ReferenceCurves curves;
    curves.random_guess = tau * std::pow(2.0, -m);
    curves.grover = std::sqrt(curves.random_guess);
    return curves;
}

}  // namespace svplab
