#pragma once

// Optimality diagnostics: closed-form SINR gradients with a finite-difference
// cross-check, the Kronecker-structured joint-improvement search, the
// full-power necessity condition, the unit-eigenvalue test, and Kruskal-rank
// checking for the hypothesis behind the full-power result.

#include <cstddef>
#include <optional>
#include <vector>

#include "paretoprec/channel.hpp"
#include "paretoprec/metrics.hpp"

namespace paretoprec {

// Gradient of SINR_k with respect to the precoder, as the rank-one matrix
// h_k d_k^T. The normalization is twice the plain real-coordinate gradient
// (d/d Re + i d/d Im); fd_gradient uses the same convention, so the two are
// directly comparable.
struct GradientSet {
    std::vector<std::vector<cxd>> d;  // d_k per user, length m_ue each
    CMatrix d_block;                  // same rows assembled via the Hadamard block formula

    // h_k d_k^T for one user
    CMatrix gradient(const ChannelInstance& c, std::size_t k) const;
};

GradientSet sinr_gradient(const ChannelInstance& c, const Precoder& p);

// Central differences over all 2 m_tx m_ue real coordinates of SINR_k,
// reported in the gradient convention above.
CMatrix fd_gradient(const ChannelInstance& c, const Precoder& p, std::size_t user, double step);

struct ImprovementCertificate {
    std::vector<std::size_t> slack_rows;  // rows with strict power slack
    std::optional<Precoder> delta_p;      // joint-improvement direction
    double residual = 0.0;                // ||Y* vec(delta_p) - b||_2
};

// Builds the linear system that asks every SINR to rise at unit rate while
// every power-saturated row sheds power, and solves it in minimum norm.
// Throws NoSlackRow when no row has slack and RankDeficient when the system
// degenerates (e.g. a user with zero signal).
ImprovementCertificate improvement_direction(const ChannelInstance& c, const Precoder& p,
                                             double slack_tol = 1e-6);

struct LineImproveResult {
    Precoder p;
    std::vector<double> sinr;
    double step = 0.0;
};

// Backtracking search over eps in {2^-t}: accepts the first point that stays
// per-antenna feasible and lifts every SINR above (1 + upsilon) times its
// starting value; upsilon = 0 demands plain strict increase. Returns nothing
// when the ladder is exhausted.
std::optional<LineImproveResult> line_improve(const ChannelInstance& c, const Precoder& p,
                                              const ImprovementCertificate& cert,
                                              double upsilon = 0.0, double feas_tol = 1e-9);

struct SearchOutcome {
    bool improved = false;      // some visited point beat (1 + upsilon) jointly
    std::size_t rounds = 0;     // accepted line-search steps
    double best_min_ratio = 1.0;
    std::vector<double> sinr;   // at the final visited point
};

// Repeated direction + line-search ascent, accumulating small strict steps
// until every SINR exceeds (1 + upsilon) times its value at the input point,
// or no further strict step exists.
SearchOutcome improve_search(const ChannelInstance& c, const Precoder& p, double upsilon,
                             double slack_tol = 1e-6, std::size_t max_rounds = 300);

struct FullPowerCondition {
    std::vector<double> values;  // signal_k * leakage_k / denom_k^2
    double threshold = 0.0;      // 1 / (m_ue - 1)
    bool flag = false;           // true when some user reaches the threshold,
                                 // i.e. non-full-power optimality is not excluded
};

FullPowerCondition full_power_condition(const LinkMetrics& m);

struct UnitEigenResult {
    std::vector<cxd> eigenvalues;  // of G diag(v)
    double min_distance = 0.0;     // min |eigenvalue - 1|
};

// v_k = 1 / ((1 + denom_k/signal_k) g_kk); a rank-deficient improvement
// system forces G diag(v) to have a unit eigenvalue. Throws ZeroSignal when
// some user has no signal.
UnitEigenResult unit_eigenvalue_check(const ChannelInstance& c, const Precoder& p);

struct KruskalCheck {
    enum class Status { Full, Deficient, Undetermined };
    Status status = Status::Undetermined;
    std::size_t order = 0;    // size of the square submatrices tested
    std::size_t checked = 0;  // submatrices examined
};

// Exhaustively tests every maximal square submatrix with numeric_rank at
// tolerance 1e-10. Undetermined when the number of subsets exceeds `limit`.
KruskalCheck kruskal_rank(const CMatrix& a, std::size_t limit = 1000000);

}  // namespace paretoprec
