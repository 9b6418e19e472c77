#include "svplab/statevector.hpp"

#include <cmath>
#include <stdexcept>

#include "svplab/errors.hpp"

namespace svplab {

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

StateVector uniform_state(int n) {
    if (n < 1 || n > kMaxQubits)
        throw SizeLimitError("qubit count outside [1, " +
                             std::to_string(kMaxQubits) + "]");
    StateVector state;
    state.n = n;
    state.amps.assign(std::size_t{1} << n,
                      std::complex<double>(std::pow(2.0, -n / 2.0), 0.0));
    return state;
}

void apply_phase(StateVector& state, std::span<const double> cost,
                 double gamma) {
    if (cost.size() != state.amps.size())
        throw std::invalid_argument("cost length does not match state size");
    for (std::size_t x = 0; x < cost.size(); ++x)
        state.amps[x] *= std::polar(1.0, -gamma * cost[x]);
}

void apply_x_mixer(StateVector& state, double beta) {
    const double c = std::cos(beta);
    const std::complex<double> ms(0.0, -std::sin(beta));
    const std::size_t size = state.amps.size();
    for (int q = 0; q < state.n; ++q) {
        const std::size_t stride = std::size_t{1} << q;
        for (std::size_t base = 0; base < size; base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                auto& a0 = state.amps[base + off];
                auto& a1 = state.amps[base + off + stride];
                const auto t0 = c * a0 + ms * a1;
                a1 = c * a1 + ms * a0;
                a0 = t0;
            }
        }
    }
}

void apply_cm_mixer(StateVector& state, double beta, std::uint32_t zeta_bits) {
    if (state.n < 2)
        throw std::invalid_argument("controlled mixer needs at least 2 qubits");
    const double c = std::cos(beta / 2.0);
    const std::complex<double> ms(0.0, -std::sin(beta / 2.0));
    const std::size_t size = state.amps.size();
    // Gates do not all commute; apply in circuit order i = 1..n.
    for (int i = 1; i <= state.n; ++i) {
        const int control = i - 1;
        const int target = i % state.n;
        const std::size_t cmask = std::size_t{1} << control;
        const std::size_t trigger =
            (zeta_bits >> control) & 1u ? std::size_t{0} : cmask;
        const std::size_t stride = std::size_t{1} << target;
        for (std::size_t base = 0; base < size; base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t x0 = base + off;
                if ((x0 & cmask) != trigger) continue;
                auto& a0 = state.amps[x0];
                auto& a1 = state.amps[x0 + stride];
                const auto t0 = c * a0 + ms * a1;
                a1 = c * a1 + ms * a0;
                a0 = t0;
            }
        }
    }
}

StateVector run(const ProblemEncoding& encoding, const AngleSchedule& schedule,
                MixerKind mixer) {
    if (!schedule.valid())
        throw std::invalid_argument("beta/gamma lengths differ");
    StateVector state = uniform_state(encoding.num_qubits());
    for (int layer = 0; layer < schedule.depth(); ++layer) {
        apply_phase(state, encoding.cost(), schedule.gammas[layer]);
        if (mixer == MixerKind::Standard)
            apply_x_mixer(state, schedule.betas[layer]);
        else
            apply_cm_mixer(state, schedule.betas[layer], encoding.zero_index());
    }
    return state;
}

double overlap(const StateVector& state,
               std::span<const std::uint32_t> indices) {
    double p = 0.0;
    for (std::uint32_t x : indices) {
        if (x >= state.amps.size())
            throw std::out_of_range("basis index out of range");
        p += std::norm(state.amps[x]);
    }
    return p;
}

double expectation(const StateVector& state, std::span<const double> cost) {
    if (cost.size() != state.amps.size())
        throw std::invalid_argument("cost length does not match state size");
    double e = 0.0;
    for (std::size_t x = 0; x < cost.size(); ++x)
        e += cost[x] * std::norm(state.amps[x]);
    return e;
}

}  // namespace svplab
