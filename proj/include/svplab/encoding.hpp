#ifndef SVPLAB_ENCODING_HPP
#define SVPLAB_ENCODING_HPP

#include <cstdint>
#include <vector>

#include "svplab/lattice.hpp"
#include "svplab/search_space.hpp"

namespace svplab {

// Statevector size guard: m * b qubits.
inline constexpr int kMaxQubits = 25;

struct LengthClass {
    double length = 0.0;                  // Euclidean; representative = min member
    std::vector<std::uint32_t> members;   // basis indices, ascending
};

// Diagonal cost Hamiltonian over the qubit search space. cost[x] is the
// squared length of the lattice vector whose coefficients decode from x.
class ProblemEncoding {
public:
    ProblemEncoding(const LatticeInstance& inst, const SearchSpace& space);

    int num_qubits() const { return space_.num_qubits(); }
    const SearchSpace& space() const { return space_; }
    const std::vector<double>& cost() const { return cost_; }
    std::uint32_t zero_index() const { return zero_index_; }
    double lambda1_space() const { return lambda1_space_; }
    const std::vector<std::uint32_t>& solution_indices() const {
        return solution_indices_;
    }
    // True when the instance's planted solution decodes inside this space.
    bool solution_in_space() const { return solution_in_space_; }
    double instance_lambda1() const { return instance_lambda1_; }

    // Equivalence classes of basis indices by vector length, strictly
    // increasing; class 0 is {zero_index}. Built lazily (the 2^n sort is
    // only needed by the approximation-factor analysis).
    const std::vector<LengthClass>& length_classes(double rel_tol = 1e-9) const;

    // Nonzero indices with length <= gamma * lambda1_space. gamma = 1 gives
    // exactly the solution indices.
    std::vector<std::uint32_t> solution_set(double gamma) const;

private:
    SearchSpace space_;
    std::vector<double> cost_;
    std::uint32_t zero_index_ = 0;
    double lambda1_space_ = 0.0;
    std::vector<std::uint32_t> solution_indices_;
    bool solution_in_space_ = false;
    double instance_lambda1_ = 0.0;
    mutable std::vector<LengthClass> length_classes_;
    mutable double length_classes_tol_ = -1.0;
};

// cost[x] = sum_i x_i^2 G_ii + 2 sum_{i<j} x_i x_j G_ij over decoded
// coefficients, for every basis index. Deterministic accumulation order, so
// a reloaded Gram matrix reproduces the costs bit-identically. The zero
// index is an empty sum, hence exactly 0.
std::vector<double> quadratic_costs(const Eigen::MatrixXd& gram,
                                    const SearchSpace& space);

ProblemEncoding encode(const LatticeInstance& inst, int bits_per_coeff = 1,
                       CoeffRange range = CoeffRange::Unsigned);

}  // namespace svplab

#endif
