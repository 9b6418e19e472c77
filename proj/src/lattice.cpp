#include "svplab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "svplab/encoding.hpp"
#include "svplab/parallel.hpp"
#include "svplab/rng.hpp"
#include "svplab/errors.hpp"

namespace svplab {

bool is_prime(std::uint64_t q) {
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

std::vector<Eigen::VectorXd> orthonormal_complement(const Eigen::VectorXi& s) {
    const int m = static_cast<int>(s.size());
    if (m < 2) throw std::invalid_argument("dimension must be >= 2");
    const Eigen::VectorXd sd = s.cast<double>();
    if (sd.norm() == 0.0)
        throw std::invalid_argument("zero vector has no orthogonal complement");

    std::vector<Eigen::VectorXd> basis;
    basis.push_back(sd.normalized());
    // Extend with standard basis vectors via modified Gram-Schmidt; the
    // second projection pass keeps orthogonality at the 1e-12 level.
    for (int axis = 0; axis < m && static_cast<int>(basis.size()) < m; ++axis) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(m, axis);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& e : basis) v -= e.dot(v) * e;
        if (v.norm() > 1e-8) basis.push_back(v.normalized());
    }
    if (static_cast<int>(basis.size()) != m)
        throw std::runtime_error("failed to complete orthonormal basis");
    basis.erase(basis.begin());
    return basis;
}

namespace {

Eigen::VectorXi sample_solution(int m, const SearchSpace& space,
                                std::uint64_t modulus, SplitMix64& rng) {
    // Entries are drawn from the intersection of the encodable coefficient
    // range and [-(q-1), q-1]; with the default 1-bit encoding this is just
    // {0, 1} per coefficient.
    const long long q = static_cast<long long>(modulus);
    const long long lo = std::max<long long>(space.min_coeff(), -(q - 1));
    const long long hi = std::min<long long>(space.max_coeff(), q - 1);
    Eigen::VectorXi s(m);
    for (int i = 0; i < m; ++i)
        s[i] = static_cast<int>(
            lo + static_cast<long long>(rng.uniform_below(
                     static_cast<std::uint64_t>(hi - lo + 1))));
    return s;
}

double draw_lambda1(const Lambda1Policy& policy, SplitMix64& rng) {
    if (!policy.sample_uniform_int) return policy.fixed;
    return static_cast<double>(
        policy.lo + static_cast<int>(rng.uniform_below(
                        static_cast<std::uint64_t>(policy.hi - policy.lo + 1))));
}

}  // namespace

LatticeInstance generate_instance(int m, const GeneratorParams& params,
                                  std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("dimension must be >= 2");
    if (!is_prime(params.q))
        throw std::invalid_argument("q must be prime, got " +
                                    std::to_string(params.q));
    if (params.k2_factor <= 1.0)
        throw std::invalid_argument("k2_factor must exceed 1");
    const SearchSpace space = params.search_space(m);

    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < params.max_rejections; ++attempt) {
        const double lambda1 = draw_lambda1(params.lambda1, rng);
        Eigen::VectorXi s = sample_solution(m, space, params.q, rng);
        if (s.isZero()) continue;

        const double snorm2 = s.cast<double>().squaredNorm();
        const double snorm = std::sqrt(snorm2);
        Eigen::VectorXd k(m);
        k[0] = lambda1 / snorm;
        const double k2 = params.k2_factor * std::max(lambda1, lambda1 / snorm2);
        k[1] = k2;
        for (int i = 2; i < m; ++i) k[i] = rng.uniform(k2, params.kappa * k2);

        Eigen::MatrixXd P(m, m);
        P.col(0) = s.cast<double>() / snorm;
        const auto complement = orthonormal_complement(s);
        for (int i = 1; i < m; ++i) P.col(i) = complement[i - 1];

        Eigen::MatrixXd gram =
            P * k.array().square().matrix().asDiagonal() * P.transpose();
        gram = ((gram + gram.transpose()) / 2.0).eval();  // exact symmetry

        LatticeInstance inst;
        inst.dimension = m;
        inst.gram = std::move(gram);
        inst.solution = std::move(s);
        inst.lambda1 = lambda1;
        inst.spectrum = std::move(k);
        inst.modulus = params.q;
        inst.seed = seed;

        const double planted = inst.solution.cast<double>().transpose() *
                               inst.gram * inst.solution.cast<double>();
        if (std::abs(planted - lambda1 * lambda1) >
            1e-9 * lambda1 * lambda1)
            continue;

        // Reject borderline draws: the runner-up must clear the minimum by
        // relative 1e-6 and the argmin must be the planted solution.
        if (space.size() <= kMaxSearchPoints) {
            const auto cert = verify_unique_shortest(inst, space);
            if (!cert.unique_shortest) continue;
        }
        return inst;
    }
    throw GenerationError("instance generation exceeded rejection budget", seed);
}

VerifyCertificate verify_unique_shortest(const LatticeInstance& inst,
                                         const SearchSpace& space) {
    if (space.size() > kMaxSearchPoints)
        throw SizeLimitError("search space exceeds enumeration guard");
    const std::vector<double> cost = quadratic_costs(inst.gram, space);
    const std::uint64_t zero = space.zero_index();

    double min_value = std::numeric_limits<double>::infinity();
    double runner_up = std::numeric_limits<double>::infinity();
    std::uint64_t argmin = zero;
    std::size_t min_count = 0;
    for (std::uint64_t x = 0; x < cost.size(); ++x) {
        if (x == zero) continue;
        const double c = cost[x];
        if (c < min_value * (1.0 - 1e-12)) {
            runner_up = min_value;
            min_value = c;
            argmin = x;
            min_count = 1;
        } else if (c <= min_value * (1.0 + 1e-12)) {
            ++min_count;  // tie at the minimum
        } else if (c < runner_up) {
            runner_up = c;
        }
    }

    VerifyCertificate cert;
    cert.argmin = space.decode(argmin);
    cert.min_value = min_value;
    cert.runner_up = min_count > 1 ? min_value : runner_up;
    cert.excited_gap = cert.runner_up - cert.min_value;
    cert.unique_shortest = min_count == 1 &&
                           cert.argmin == inst.solution &&
                           cert.runner_up > min_value * (1.0 + 1e-6);
    return cert;
}

Dataset generate_dataset(int m, int count, std::uint64_t master_seed,
                         const GeneratorParams& params, int jobs) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    Dataset ds;
    ds.dimension = m;
    ds.master_seed = master_seed;
    ds.params = params;
    ds.instances.resize(count);
    const std::uint64_t dim_key =
        derive_seed(master_seed, static_cast<std::uint64_t>(m));
    parallel_for(static_cast<std::size_t>(count), jobs, [&](std::size_t i) {
        ds.instances[i] =
            generate_instance(m, params, derive_seed(dim_key, i));
    });
    return ds;
}

std::vector<Dataset> generate_datasets(const std::vector<int>& dims, int count,
                                       std::uint64_t master_seed,
                                       const GeneratorParams& params,
                                       int jobs) {
    if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
    std::vector<Dataset> out;
    out.reserve(dims.size());
    for (int m : dims) {
        try {
            out.push_back(generate_dataset(m, count, master_seed, params, jobs));
        } catch (const GenerationError& e) {
            throw GenerationError(
                "dataset generation failed at m=" + std::to_string(m) + ": " +
                    e.what(),
                e.seed());
        }
    }
    return out;
}

}  // namespace svplab
