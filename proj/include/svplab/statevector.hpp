#ifndef SVPLAB_STATEVECTOR_HPP
#define SVPLAB_STATEVECTOR_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "svplab/encoding.hpp"

namespace svplab {

enum class MixerKind { Standard, ControlledMixer };

struct AngleSchedule {
    std::vector<double> betas;
    std::vector<double> gammas;

    int depth() const { return static_cast<int>(betas.size()); }
    bool valid() const { return betas.size() == gammas.size(); }
};

// Normalized complex amplitudes over 2^n basis states, qubit 0 = least
// significant bit. Gate kernels mutate in place with stride-based bit
// masking; no intermediate matrices.
struct StateVector {
    int n = 0;
    std::vector<std::complex<double>> amps;

    double norm_sq() const;
};

StateVector uniform_state(int n);

// amps[x] *= exp(-i * gamma * cost[x]); diagonal, probabilities unchanged.
void apply_phase(StateVector& state, std::span<const double> cost,
                 double gamma);

// e^(-i beta X) on every qubit.
void apply_x_mixer(StateVector& state, double beta);

// Constrained mixer: sequentially for i = 1..n, R_x(beta) = e^(-i beta X/2)
// on qubit (i mod n) + 1 controlled on qubit i holding the negation of the
// corresponding zero-state bit. The zero state |zeta> triggers no gate and
// is an exact fixed point. 1-based in this comment; the code is 0-based.
void apply_cm_mixer(StateVector& state, double beta, std::uint32_t zeta_bits);

StateVector run(const ProblemEncoding& encoding, const AngleSchedule& schedule,
                MixerKind mixer);

double overlap(const StateVector& state,
               std::span<const std::uint32_t> indices);

// Diagonal energy expectation sum cost[x] * |amps[x]|^2.
double expectation(const StateVector& state, std::span<const double> cost);

}  // namespace svplab

#endif
