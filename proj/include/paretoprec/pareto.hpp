#pragma once

// Boundary parameterization: the fast low-rank construction of P(lambda, mu),
// the direct full-matrix construction used as its oracle, the mu-refinement
// loop that imposes full per-antenna power, and sampling helpers.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "paretoprec/channel.hpp"
#include "paretoprec/metrics.hpp"

namespace paretoprec {

struct LagrangeWeights {
    std::vector<double> lambda;  // length m_ue, positive
    std::vector<double> mu;      // length m_tx, positive

    static LagrangeWeights uniform(std::size_t m_tx, std::size_t m_ue);
};

struct ParametricResult {
    Precoder p;
    std::vector<double> gamma;     // targeted SINRs; achieved SINR equals gamma
    std::vector<double> kappa;     // per-column power coefficients, positive
    std::vector<bool> near_unit_z; // true where z_jj approaches 1 (gamma blow-up)
};

struct RefineConfig {
    double delta = 1e-4;       // relative tolerance of the full-power exit test
    std::size_t max_iter = 200;
    double mu_min = 1e-12;     // floor applied to mu after each update
};

struct RefineTrace {
    std::size_t iterations = 0;        // mu updates until the exit window held
    std::size_t finalize_updates = 0;  // extra updates tightening the alpha spread
    std::vector<std::vector<double>> alpha_history;
    bool converged = false;
    std::vector<double> final_mu;
};

// Builds P(lambda, mu) in O(m_tx * m_ue^2): the m_tx x m_tx inverse is opened
// through the m_ue x m_ue matrix C, and the column coefficients come from the
// small linear system that makes the achieved SINRs equal gamma.
//
// Throws InfeasibleWeights when some kappa_j <= 0 or the coefficient system
// is singular (the weight pair does not correspond to a boundary point), and
// InstabilityGuard when some z_jj > 1 - 1e-8, where gamma_j = z_jj/(1 - z_jj)
// loses all precision in double arithmetic.
ParametricResult parametric_precoder(const ChannelInstance& c, const LagrangeWeights& w);

// Same result built from the explicit m_tx x m_tx matrix
// Psi = diag(mu_i / beta_i) + sum_k (lambda_k / omega_k^2) h_k h_k*
// in O(m_tx^3 * m_ue); correctness oracle for parametric_precoder.
ParametricResult direct_precoder(const ChannelInstance& c, const LagrangeWeights& w);

// Fixed-point iteration on mu: starting from uniform mu, rescale each mu_i by
// the power-consumption ratio alpha_i = ||row_i|| / sqrt(beta_i) until all
// alpha lie in (1 - delta, 1/(1 - delta)). A finalization phase then runs the
// same update until max(alpha)/min(alpha) <= 1/(1 - delta) (usually zero or
// one extra step) and divides by max(alpha), which pins every row power into
// [(1 - delta)^2 beta_i, beta_i] with the worst row exactly at its limit.
std::pair<Precoder, RefineTrace> refine_mu(const ChannelInstance& c,
                                           const std::vector<double>& lambda,
                                           const RefineConfig& cfg);

// Runs exactly n_updates mu updates from uniform mu (no convergence test)
// and returns the globally rescaled precoder; n_updates = 0 evaluates the
// starting point only.
std::pair<Precoder, RefineTrace> refine_mu_fixed(const ChannelInstance& c,
                                                 const std::vector<double>& lambda,
                                                 std::size_t n_updates,
                                                 double mu_min = 1e-12);

struct SurfacePoint {
    std::vector<double> lambda;
    std::vector<double> sinr;
    std::vector<double> db;
    double mean_db = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::string status;  // "ok" or the failure reason
};

// n refined boundary samples with lambda drawn uniformly on [0,1]^m_ue and
// normalized; sample i is a pure function of (seed, i). Per-point failures
// are recorded in `status`, not thrown.
std::vector<SurfacePoint> sample_surface(const ChannelInstance& c, std::size_t n,
                                         std::uint64_t seed, const RefineConfig& cfg);

struct IterationStatsCell {
    std::size_t m_tx = 0;
    std::size_t m_ue = 0;
    double delta = 0.0;
    std::size_t trials = 0;
    std::size_t failures = 0;  // non-converged runs, excluded from the moments
    double mean = 0.0;
    double stddev = 0.0;
};

// Mean/stddev of refine_mu iteration counts over seeded random Gaussian
// channels (omega = 1, beta = 1) and random simplex lambda.
std::vector<IterationStatsCell> iteration_stats(
    const std::vector<std::pair<std::size_t, std::size_t>>& sizes,
    const std::vector<double>& deltas, std::size_t trials, std::uint64_t seed);

}  // namespace paretoprec
