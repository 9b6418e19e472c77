#ifndef SVPLAB_LATTICE_HPP
#define SVPLAB_LATTICE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "svplab/search_space.hpp"

namespace svplab {

// An SVP instance with a planted unique shortest vector. The Gram matrix is
// built as G = P diag(k_1^2, ..., k_m^2) P^T where P's columns are the
// normalized solution followed by an orthonormal basis of its complement, so
// x^T G x is the squared length of the lattice vector with coefficients x.
struct LatticeInstance {
    int dimension = 0;
    Eigen::MatrixXd gram;        // m x m, symmetric PSD, squared-length units
    Eigen::VectorXi solution;    // planted shortest coefficient vector
    double lambda1 = 0.0;        // planted shortest length, Euclidean units
    Eigen::VectorXd spectrum;    // k_1..k_m eigenvalue magnitudes
    std::uint64_t modulus = 0;   // prime q, sampling range for solution entries
    std::uint64_t seed = 0;
};

// Either a fixed lambda1 or a uniform integer draw from [lo, hi].
struct Lambda1Policy {
    double fixed = 1.0;
    bool sample_uniform_int = false;
    int lo = 1;
    int hi = 1;
};

struct GeneratorParams {
    std::uint64_t q = 97;
    Lambda1Policy lambda1;
    double k2_factor = 10.0;   // k2 = k2_factor * max(lambda1, lambda1/|s|^2)
    double kappa = 2.0;        // k_3..k_m ~ U[k2, kappa*k2]
    int bits_per_coeff = 1;    // solution sampled from the encodable range
    CoeffRange range = CoeffRange::Unsigned;
    int max_rejections = 1000;

    SearchSpace search_space(int m) const {
        return SearchSpace{m, bits_per_coeff, range};
    }
};

struct Dataset {
    int dimension = 0;
    std::uint64_t master_seed = 0;
    GeneratorParams params;
    std::vector<LatticeInstance> instances;
};

// Enumeration guard for the brute-force verifier.
inline constexpr std::uint64_t kMaxSearchPoints = std::uint64_t{1} << 25;

struct VerifyCertificate {
    bool unique_shortest = false;
    Eigen::VectorXi argmin;
    double min_value = 0.0;       // squared length of the argmin
    double runner_up = 0.0;       // next distinct squared length
    double excited_gap = 0.0;     // runner_up - min_value
};

// Orthonormal basis e_2..e_m of the hyperplane orthogonal to s, via
// Gram-Schmidt with re-orthogonalisation against the standard basis.
std::vector<Eigen::VectorXd> orthonormal_complement(const Eigen::VectorXi& s);

bool is_prime(std::uint64_t q);

LatticeInstance generate_instance(int m, const GeneratorParams& params,
                                  std::uint64_t seed);

// Brute force over the coefficient search space. True iff the nonzero
// minimum is attained only at the planted solution and the runner-up exceeds
// it by more than relative 1e-6.
VerifyCertificate verify_unique_shortest(const LatticeInstance& inst,
                                         const SearchSpace& space);

Dataset generate_dataset(int m, int count, std::uint64_t master_seed,
                         const GeneratorParams& params, int jobs = 1);

std::vector<Dataset> generate_datasets(const std::vector<int>& dims, int count,
                                       std::uint64_t master_seed,
                                       const GeneratorParams& params,
                                       int jobs = 1);

}  // namespace svplab

#endif
