#include "svplab/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "svplab/errors.hpp"

namespace svplab {

namespace {

// 1-bit unsigned fast path: cost[x] extends cost[x minus its lowest set bit]
// by the cross terms of that bit. O(2^n * popcount) instead of O(2^n * m^2).
std::vector<double> costs_one_bit(const Eigen::MatrixXd& gram,
                                  const SearchSpace& space) {
    const std::uint64_t size = space.size();
    std::vector<double> cost(size);
    cost[0] = 0.0;
    for (std::uint64_t x = 1; x < size; ++x) {
        const int i = std::countr_zero(x);
        std::uint64_t rest = x & (x - 1);
        double c = cost[rest] + gram(i, i);
        while (rest != 0) {
            const int j = std::countr_zero(rest);
            c += 2.0 * gram(i, j);
            rest &= rest - 1;
        }
        cost[x] = c;
    }
    return cost;
}

std::vector<double> costs_general(const Eigen::MatrixXd& gram,
                                  const SearchSpace& space) {
    const std::uint64_t size = space.size();
    const int m = space.dims;
    std::vector<double> cost(size);
    for (std::uint64_t index = 0; index < size; ++index) {
        const Eigen::VectorXi decoded = space.decode(index);
        double c = 0.0;
        for (int i = 0; i < m; ++i) {
            if (decoded[i] == 0) continue;
            c += static_cast<double>(decoded[i]) * decoded[i] * gram(i, i);
            for (int j = i + 1; j < m; ++j)
                if (decoded[j] != 0)
                    c += 2.0 * decoded[i] * decoded[j] * gram(i, j);
        }
        cost[index] = c;
    }
    return cost;
}

}  // namespace

std::vector<double> quadratic_costs(const Eigen::MatrixXd& gram,
                                    const SearchSpace& space) {
    if (space.num_qubits() > kMaxQubits)
        throw SizeLimitError("encoding would need " +
                             std::to_string(space.num_qubits()) +
                             " qubits, guard is " + std::to_string(kMaxQubits));
    if (space.bits_per_coeff == 1 && space.range == CoeffRange::Unsigned)
        return costs_one_bit(gram, space);
    return costs_general(gram, space);
}

ProblemEncoding::ProblemEncoding(const LatticeInstance& inst,
                                 const SearchSpace& space)
    : space_(space),
      cost_(quadratic_costs(inst.gram, space)),
      instance_lambda1_(inst.lambda1) {
    zero_index_ = static_cast<std::uint32_t>(space_.zero_index());

    double min_cost = std::numeric_limits<double>::infinity();
    for (std::uint32_t x = 0; x < cost_.size(); ++x)
        if (x != zero_index_ && cost_[x] < min_cost) min_cost = cost_[x];
    lambda1_space_ = std::sqrt(min_cost);
    for (std::uint32_t x = 0; x < cost_.size(); ++x)
        if (x != zero_index_ && cost_[x] <= min_cost * (1.0 + 1e-12))
            solution_indices_.push_back(x);

    // Flag whether the planted solution decodes inside this space and is its
    // minimum; multi-bit re-encodings of small instances may exclude it.
    bool in_range = true;
    for (int i = 0; i < space_.dims && in_range; ++i)
        in_range = inst.solution[i] >= space_.min_coeff() &&
                   inst.solution[i] <= space_.max_coeff();
    if (in_range) {
        const std::uint32_t planted =
            static_cast<std::uint32_t>(space_.encode(inst.solution));
        solution_in_space_ =
            std::find(solution_indices_.begin(), solution_indices_.end(),
                      planted) != solution_indices_.end();
    }
}

const std::vector<LengthClass>& ProblemEncoding::length_classes(
    double rel_tol) const {
    if (!length_classes_.empty() && length_classes_tol_ == rel_tol)
        return length_classes_;
    std::vector<std::uint32_t> order(cost_.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         return cost_[a] < cost_[b];
                     });
    length_classes_.clear();
    for (std::uint32_t x : order) {
        const double len = std::sqrt(std::max(cost_[x], 0.0));
        if (length_classes_.empty() ||
            len > length_classes_.back().length * (1.0 + rel_tol) +
                      (length_classes_.back().length == 0.0 ? rel_tol : 0.0)) {
            length_classes_.push_back({len, {x}});
        } else {
            length_classes_.back().members.push_back(x);
        }
    }
    for (auto& cls : length_classes_)
        std::sort(cls.members.begin(), cls.members.end());
    length_classes_tol_ = rel_tol;
    return length_classes_;
}

std::vector<std::uint32_t> ProblemEncoding::solution_set(double gamma) const {
    if (gamma < 1.0) throw std::invalid_argument("gamma must be >= 1");
    const double bound = gamma * lambda1_space_;
    const double bound2 = bound * bound * (1.0 + 1e-12);
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < cost_.size(); ++x)
        if (x != zero_index_ && cost_[x] <= bound2) out.push_back(x);
    return out;
}

ProblemEncoding encode(const LatticeInstance& inst, int bits_per_coeff,
                       CoeffRange range) {
    return ProblemEncoding(inst,
                           SearchSpace{inst.dimension, bits_per_coeff, range});
}

}  // namespace svplab
