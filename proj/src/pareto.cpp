#include "paretoprec/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paretoprec/parallel.hpp"
#include "paretoprec/rng.hpp"

namespace paretoprec {

namespace {

constexpr double kUnitZGuard = 1e-8;   // z_jj above 1 - this throws
constexpr double kUnitZWarn = 1e-6;    // z_jj above 1 - this is flagged

std::vector<double> normalized(std::vector<double> v, const char* what) {
    // compensated summation, so that rescaling every weight by a common
    // factor rescales the sum exactly and the normalization cancels it
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw InvalidInput(std::string(what) + " weights must be positive");
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    sum += comp;
    for (double& x : v) x /= sum;
    return v;
}

void check_weights(const ChannelInstance& c, const LagrangeWeights& w) {
    if (w.lambda.size() != c.m_ue())
        throw DimensionMismatch("weights: lambda length must equal m_ue");
    if (w.mu.size() != c.m_tx())
        throw DimensionMismatch("weights: mu length must equal m_tx");
}

// Shared tail of both constructions: solve for the column coefficients kappa
// that make the achieved SINR of every user equal gamma, then scale the
// unnormalized direction columns of phat.
//
// The system reads, for row i:
//   kappa_i s_ii - gamma_i sum_{j != i} kappa_j s_ij = gamma_i rhs_i,
// where s_ij = |cross_ij|^2 / nsq_j, cross being h_i* phat_j up to a
// row-wise positive factor that cancels into rhs.
ParametricResult finish_with_kappa(CMatrix phat, const std::vector<double>& gamma,
                                   const CMatrix& cross, const std::vector<double>& rhs) {
    const std::size_t n = phat.cols();
    std::vector<double> nsq(n, 0.0);
    for (std::size_t i = 0; i < phat.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) nsq[j] += std::norm(phat(i, j));
    for (std::size_t j = 0; j < n; ++j)
        if (!(nsq[j] > 0.0)) throw InfeasibleWeights("direction column vanished");

    CMatrix sys(n, n);
    CMatrix b(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double base = std::norm(cross(i, j)) / nsq[j];
            sys(i, j) = (i == j) ? base : -gamma[i] * base;
        }
        b(i, 0) = gamma[i] * rhs[i];
    }

    CMatrix kap;
    try {
        kap = lu_solve(sys, b);
    } catch (const SingularMatrix&) {
        throw InfeasibleWeights("coefficient system is singular");
    }

    ParametricResult out;
    out.gamma = gamma;
    out.kappa.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.kappa[j] = kap(j, 0).real();
        if (!(out.kappa[j] > 0.0))
            throw InfeasibleWeights("kappa_" + std::to_string(j + 1) +
                                    " is not positive; weights miss the boundary");
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double f = std::sqrt(out.kappa[j] / nsq[j]);
        for (std::size_t i = 0; i < phat.rows(); ++i) phat(i, j) *= f;
    }
    out.p = std::move(phat);
    return out;
}

}  // namespace

LagrangeWeights LagrangeWeights::uniform(std::size_t m_tx, std::size_t m_ue) {
    return {std::vector<double>(m_ue, 1.0 / static_cast<double>(m_ue)),
            std::vector<double>(m_tx, 1.0 / static_cast<double>(m_tx))};
}

ParametricResult parametric_precoder(const ChannelInstance& c, const LagrangeWeights& w) {
    check_weights(c, w);
    const std::vector<double> lam = normalized(w.lambda, "lambda");
    const std::vector<double> mu = normalized(w.mu, "mu");
    const std::size_t m = c.m_tx(), n = c.m_ue();

    std::vector<double> dm(m), dl(n);
    for (std::size_t i = 0; i < m; ++i) dm[i] = std::sqrt(c.beta[i] / mu[i]);
    for (std::size_t j = 0; j < n; ++j) dl[j] = std::sqrt(lam[j]) / c.omega[j];

    CMatrix hh(m, n);  // row/column scaled channel
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) hh(i, j) = dm[i] * c.h(i, j) * dl[j];

    const CMatrix gram = matmul(conj_transpose(hh), hh);  // C
    CMatrix ic = gram;                                    // I + C
    for (std::size_t j = 0; j < n; ++j) ic(j, j) += 1.0;
    CMatrix x;  // (I + C)^{-1} C, reused for both the precoder and Z
    try {
        x = chol_solve(ic, gram);
    } catch (const NotPositiveDefinite&) {
        throw InfeasibleWeights("scaled Gram system not positive definite");
    }

    CMatrix reduced = CMatrix::identity(n) - x;  // I - (I+C)^{-1} C
    CMatrix phat = matmul(hh, reduced);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) phat(i, j) *= dm[i];

    CMatrix z = gram - matmul(gram, x);
    // enforce Hermitian symmetry before reading gamma off the diagonal
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const cxd v = 0.5 * (z(i, j) + std::conj(z(j, i)));
            z(i, j) = v;
            z(j, i) = std::conj(v);
        }

    std::vector<double> gamma(n);
    std::vector<bool> flags(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        const double zjj = z(j, j).real();
        if (zjj > 1.0 - kUnitZGuard)
            throw InstabilityGuard("z_" + std::to_string(j + 1) + std::to_string(j + 1) +
                                   " too close to 1; SINR beyond double precision");
        flags[j] = zjj > 1.0 - kUnitZWarn;
        if (!(zjj > 0.0)) throw InfeasibleWeights("nonpositive z_jj");
        gamma[j] = zjj / (1.0 - zjj);
    }

    ParametricResult out = finish_with_kappa(std::move(phat), gamma, z, lam);
    out.near_unit_z = std::move(flags);
    return out;
}

ParametricResult direct_precoder(const ChannelInstance& c, const LagrangeWeights& w) {
    check_weights(c, w);
    const std::vector<double> lam = normalized(w.lambda, "lambda");
    const std::vector<double> mu = normalized(w.mu, "mu");
    const std::size_t m = c.m_tx(), n = c.m_ue();

    CMatrix psi(m, m);
    for (std::size_t i = 0; i < m; ++i) psi(i, i) = mu[i] / c.beta[i];
    for (std::size_t k = 0; k < n; ++k) {
        const double f = lam[k] / (c.omega[k] * c.omega[k]);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                psi(i, j) += f * c.h(i, k) * std::conj(c.h(j, k));
    }

    CMatrix phat;  // columns Psi^{-1} h_j
    try {
        phat = chol_solve(psi, c.h);
    } catch (const NotPositiveDefinite&) {
        throw InfeasibleWeights("Psi is not positive definite");
    }

    // gamma_j from the rank-one-removed system (Psi - f_j h_j h_j*) y = h_j
    std::vector<double> gamma(n);
    std::vector<bool> flags(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        const double f = lam[j] / (c.omega[j] * c.omega[j]);
        CMatrix dropped = psi;
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < m; ++s)
                dropped(r, s) -= f * c.h(r, j) * std::conj(c.h(s, j));
        CMatrix rhs(m, 1);
        for (std::size_t r = 0; r < m; ++r) rhs(r, 0) = c.h(r, j);
        CMatrix y;
        try {
            y = chol_solve(dropped, rhs);
        } catch (const NotPositiveDefinite&) {
            throw InfeasibleWeights("rank-one-removed system not positive definite");
        }
        cxd quad = 0.0;
        for (std::size_t r = 0; r < m; ++r) quad += std::conj(c.h(r, j)) * y(r, 0);
        gamma[j] = f * quad.real();
        if (!(gamma[j] > 0.0)) throw InfeasibleWeights("nonpositive gamma");
        const double zjj = gamma[j] / (1.0 + gamma[j]);
        if (zjj > 1.0 - kUnitZGuard)
            throw InstabilityGuard("SINR target beyond double precision");
        flags[j] = zjj > 1.0 - kUnitZWarn;
    }

    // cross_ij = h_i* phat_j; rhs_i = omega_i^2 here because the directions
    // carry no row scaling
    CMatrix cross = matmul(conj_transpose(c.h), phat);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = c.omega[i] * c.omega[i];

    ParametricResult out = finish_with_kappa(std::move(phat), gamma, cross, rhs);
    out.near_unit_z = std::move(flags);
    return out;
}

namespace {

std::vector<double> alpha_of(const Precoder& p, const std::vector<double>& beta) {
    std::vector<double> a = row_power(p);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::sqrt(a[i] / beta[i]);
    return a;
}

void mu_update(std::vector<double>& mu, const std::vector<double>& alpha, double mu_min) {
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        mu[i] *= alpha[i];
        sum += mu[i];
    }
    for (double& v : mu) v /= sum;
    double sum2 = 0.0;
    for (double& v : mu) {
        v = std::max(v, mu_min);
        sum2 += v;
    }
    for (double& v : mu) v /= sum2;
}

}  // namespace

std::pair<Precoder, RefineTrace> refine_mu(const ChannelInstance& c,
                                           const std::vector<double>& lambda,
                                           const RefineConfig& cfg) {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw InvalidInput("refine_mu: delta must lie in (0,1)");
    if (!(cfg.mu_min > 0.0) || cfg.mu_min > 1.0 / static_cast<double>(c.m_tx()))
        throw InvalidInput("refine_mu: mu_min must lie in (0, 1/m_tx]");
    RefineTrace trace;
    std::vector<double> mu(c.m_tx(), 1.0 / static_cast<double>(c.m_tx()));
    ParametricResult res;
    std::vector<double> alpha;

    while (true) {
        res = parametric_precoder(c, {lambda, mu});
        alpha = alpha_of(res.p, c.beta);
        trace.alpha_history.push_back(alpha);
        const auto [lo, hi] = std::minmax_element(alpha.begin(), alpha.end());
        if (*lo > 1.0 - cfg.delta && *hi < 1.0 / (1.0 - cfg.delta)) {
            trace.converged = true;
            break;
        }
        if (trace.iterations >= cfg.max_iter) break;
        mu_update(mu, alpha, cfg.mu_min);
        ++trace.iterations;
    }

    // Finalization: a single global rescale can only place all row powers in
    // [(1-delta)^2 beta_i, beta_i] once max(alpha)/min(alpha) <= 1/(1-delta);
    // run the same update until that holds (rarely more than one step).
    if (trace.converged) {
        while (true) {
            const auto [lo, hi] = std::minmax_element(alpha.begin(), alpha.end());
            if (*hi * (1.0 - cfg.delta) < *lo) break;
            if (trace.iterations + trace.finalize_updates >= cfg.max_iter) {
                trace.converged = false;
                break;
            }
            mu_update(mu, alpha, cfg.mu_min);
            ++trace.finalize_updates;
            res = parametric_precoder(c, {lambda, mu});
            alpha = alpha_of(res.p, c.beta);
            trace.alpha_history.push_back(alpha);
        }
    }

    const double amax = *std::max_element(alpha.begin(), alpha.end());
    Precoder p = res.p;
    for (cxd& v : p.data()) v *= 1.0 / amax;
    trace.final_mu = std::move(mu);
    return {std::move(p), std::move(trace)};
}

std::pair<Precoder, RefineTrace> refine_mu_fixed(const ChannelInstance& c,
                                                 const std::vector<double>& lambda,
                                                 std::size_t n_updates, double mu_min) {
    RefineTrace trace;
    std::vector<double> mu(c.m_tx(), 1.0 / static_cast<double>(c.m_tx()));
    ParametricResult res = parametric_precoder(c, {lambda, mu});
    std::vector<double> alpha = alpha_of(res.p, c.beta);
    trace.alpha_history.push_back(alpha);
    for (std::size_t k = 0; k < n_updates; ++k) {
        mu_update(mu, alpha, mu_min);
        ++trace.iterations;
        res = parametric_precoder(c, {lambda, mu});
        alpha = alpha_of(res.p, c.beta);
        trace.alpha_history.push_back(alpha);
    }
    const double amax = *std::max_element(alpha.begin(), alpha.end());
    Precoder p = res.p;
    for (cxd& v : p.data()) v *= 1.0 / amax;
    trace.final_mu = std::move(mu);
    return {std::move(p), std::move(trace)};
}

std::vector<SurfacePoint> sample_surface(const ChannelInstance& c, std::size_t n,
                                         std::uint64_t seed, const RefineConfig& cfg) {
    if (n < 1) throw InvalidInput("sample_surface: need at least one point");
    std::vector<SurfacePoint> out(n);
    run_indexed(n, [&](std::size_t idx) {
        CounterRng rng(seed, idx);
        SurfacePoint& pt = out[idx];
        pt.lambda.resize(c.m_ue());
        double sum = 0.0;
        for (double& l : pt.lambda) {
            l = rng.next_unit();
            sum += l;
        }
        for (double& l : pt.lambda) l /= sum;
        try {
            auto [p, trace] = refine_mu(c, pt.lambda, cfg);
            const LinkMetrics m = link_metrics(c, p);
            pt.sinr = m.sinr;
            pt.db = per_user_db(m);
            pt.mean_db = mean_db(m);
            pt.iterations = trace.iterations;
            pt.converged = trace.converged;
            pt.status = trace.converged ? "ok" : "no_convergence";
        } catch (const std::exception& e) {
            pt.status = e.what();
        }
    });
    return out;
}

std::vector<IterationStatsCell> iteration_stats(
    const std::vector<std::pair<std::size_t, std::size_t>>& sizes,
    const std::vector<double>& deltas, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidInput("iteration_stats: need at least one trial");
    std::vector<IterationStatsCell> cells;
    for (const auto& [m_tx, m_ue] : sizes)
        for (double delta : deltas)
            cells.push_back({m_tx, m_ue, delta, trials, 0, 0.0, 0.0});

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        IterationStatsCell& cell = cells[ci];
        RefineConfig cfg;
        cfg.delta = cell.delta;
        std::vector<double> counts(trials, -1.0);
        run_indexed(trials, [&](std::size_t t) {
            CounterRng rng(seed, ci * trials + t);
            const CMatrix h = gen_gaussian(cell.m_tx, cell.m_ue, rng.next_u64());
            std::vector<double> lam(cell.m_ue);
            double sum = 0.0;
            for (double& l : lam) {
                l = rng.next_unit();
                sum += l;
            }
            for (double& l : lam) l /= sum;
            const ChannelInstance c = {h, std::vector<double>(cell.m_ue, 1.0),
                                       std::vector<double>(cell.m_tx, 1.0)};
            try {
                auto [p, trace] = refine_mu(c, lam, cfg);
                if (trace.converged) counts[t] = static_cast<double>(trace.iterations);
            } catch (const std::exception&) {
                // counted as a failure below
            }
        });
        double sum = 0.0;
        std::size_t ok = 0;
        for (double v : counts)
            if (v >= 0.0) { sum += v; ++ok; }
        cell.failures = trials - ok;
        if (ok > 0) {
            cell.mean = sum / static_cast<double>(ok);
            double var = 0.0;
            for (double v : counts)
                if (v >= 0.0) var += (v - cell.mean) * (v - cell.mean);
            cell.stddev = std::sqrt(var / static_cast<double>(ok));
        }
    }
    return cells;
}

}  // namespace paretoprec
