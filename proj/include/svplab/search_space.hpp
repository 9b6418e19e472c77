#ifndef SVPLAB_SEARCH_SPACE_HPP
#define SVPLAB_SEARCH_SPACE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

namespace svplab {

enum class CoeffRange {
    Unsigned,  // codes 0..2^b-1 map to themselves
    Signed,    // two's-complement style offset: code c -> c - 2^(b-1)
};

// Coefficient search space: m coefficients, b bits each, little-endian basis
// index convention with qubit 1 = least significant bit. Coefficient i
// occupies bits [i*b, (i+1)*b).
struct SearchSpace {
    int dims = 0;
    int bits_per_coeff = 1;
    CoeffRange range = CoeffRange::Unsigned;

    int num_qubits() const { return dims * bits_per_coeff; }
    std::uint64_t size() const { return std::uint64_t{1} << num_qubits(); }

    int decode_coeff(std::uint32_t code) const {
        if (range == CoeffRange::Unsigned) return static_cast<int>(code);
        return static_cast<int>(code) - (1 << (bits_per_coeff - 1));
    }

    std::uint32_t encode_coeff(int value) const {
        const int offset =
            range == CoeffRange::Unsigned ? 0 : (1 << (bits_per_coeff - 1));
        const int code = value + offset;
        if (code < 0 || code >= (1 << bits_per_coeff))
            throw std::invalid_argument("coefficient outside encodable range");
        return static_cast<std::uint32_t>(code);
    }

    int min_coeff() const { return decode_coeff(0); }
    int max_coeff() const {
        return decode_coeff((std::uint32_t{1} << bits_per_coeff) - 1);
    }

    Eigen::VectorXi decode(std::uint64_t index) const {
        Eigen::VectorXi x(dims);
        const std::uint32_t mask = (std::uint32_t{1} << bits_per_coeff) - 1;
        for (int i = 0; i < dims; ++i)
            x[i] = decode_coeff(
                static_cast<std::uint32_t>(index >> (i * bits_per_coeff)) & mask);
        return x;
    }

    std::uint64_t encode(const Eigen::VectorXi& x) const {
        std::uint64_t index = 0;
        for (int i = 0; i < dims; ++i)
            index |= std::uint64_t{encode_coeff(x[i])} << (i * bits_per_coeff);
        return index;
    }

    std::uint64_t zero_index() const {
        return encode(Eigen::VectorXi::Zero(dims));
    }
};

}  // namespace svplab

#endif
