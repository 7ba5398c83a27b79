#pragma once

// Zero-Forcing and SLNR reference precoders plus the power-allocation
// strategies used to place them under per-antenna constraints.

#include <vector>

#include "paretoprec/channel.hpp"
#include "paretoprec/metrics.hpp"

namespace paretoprec {

// Nonnegative weights summing to one. Throughout this project kappa_j is
// the fraction of total transmit power carried by precoder column j.
struct PowerAllocation {
    std::vector<double> kappa;
};

PowerAllocation make_allocation(std::vector<double> kappa);

// P = H (H*H)^{-1}, so H*P = I.
Precoder zero_forcing(const CMatrix& h);

// P = U W* with W_kj = sigma_j V_kj / (omega_k^2 + sigma_j^2), built from
// the thin SVD H = U diag(sigma) V*. Collapses to zero-forcing as omega -> 0.
Precoder slnr_precoder(const CMatrix& h, const std::vector<double>& omega);

// Rescales columns of p0 so their power fractions equal kappa, then applies
// the largest global factor that keeps every per-antenna constraint: the
// worst row ends exactly at its limit.
Precoder allocate_power(const Precoder& p0, const PowerAllocation& kappa,
                        const std::vector<double>& beta);

// Power fractions that give the allocated precoder equal column norms.
PowerAllocation uniform_kappa(const Precoder& p0);

struct WaterFillResult {
    PowerAllocation kappa;  // normalized to sum 1
    double consumed;        // total column power at the unnormalized solution
    double level;           // 1/nu at the final bisection point
};

// Column powers q_j maximizing sum_j log(1 + q_j / (c_j omega_j^2)) subject
// to sum q_j = budget, where c_j = ||p_zf column j||^2; the classic closed
// form q_j = max(0, 1/nu - c_j omega_j^2) with nu found by bisection.
WaterFillResult water_fill_kappa(const Precoder& p_zf, const std::vector<double>& omega,
                                 double budget);

// P = min_i(sqrt(beta_i) / ||row_i||) * p0: one matrix-wide constant, so
// exactly one per-antenna constraint is tight for generic inputs.
Precoder global_scale(const Precoder& p0, const std::vector<double>& beta);

}  // namespace paretoprec
