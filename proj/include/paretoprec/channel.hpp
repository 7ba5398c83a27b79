#pragma once

// Channel construction and generation: seeded Gaussian channels, channels
// with a prescribed singular-value decay, and the fixed 8x3 real test
// channel used throughout the experiment suite.

#include <cstdint>
#include <vector>

#include "paretoprec/linalg.hpp"

namespace paretoprec {

struct ChannelInstance {
    CMatrix h;                  // m_tx x m_ue complex gains
    std::vector<double> omega;  // per-user noise standard deviations, > 0
    std::vector<double> beta;   // per-antenna power limits, > 0

    std::size_t m_tx() const { return h.rows(); }
    std::size_t m_ue() const { return h.cols(); }
};

// Validates m_tx > m_ue >= 1, positive omega/beta, finite entries.
ChannelInstance make_channel(CMatrix h, std::vector<double> omega, std::vector<double> beta);

enum class DecayLaw { Flat, Inverse, InverseSquare };

// sigma_k for k = 1..m_ue under the law: 1, 1/k, or 1/k^2
std::vector<double> decay_sigmas(DecayLaw law, std::size_t m_ue);

// Entries with independent standard-normal real and imaginary parts
// (E|h_ij|^2 = 2), filled in row-major order from the seeded stream.
CMatrix gen_gaussian(std::size_t m_tx, std::size_t m_ue, std::uint64_t seed);

// H = U diag(sigma) V* with U, V orthonormal bases of seeded Gaussian
// matrices and sigma from the decay law.
CMatrix gen_svd_decay(std::size_t m_tx, std::size_t m_ue, DecayLaw law, std::uint64_t seed);

// The fixed 8x3 real channel with unit noise and unit per-antenna limits.
ChannelInstance toy_channel();

// omega_k = chi * ||H||_F / m_ue for every user.
std::vector<double> noise_from_chi(const CMatrix& h, double chi);

enum class BetaMode { UnitPerAntenna, UnitTotal };

// All-ones, or all 1/m_tx (total budget one).
std::vector<double> default_beta(std::size_t m_tx, BetaMode mode);

}  // namespace paretoprec
