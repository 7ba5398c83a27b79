#include "paretoprec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace paretoprec {

CMatrix GradientSet::gradient(const ChannelInstance& c, std::size_t k) const {
    CMatrix g(c.m_tx(), c.m_ue());
    for (std::size_t i = 0; i < c.m_tx(); ++i)
        for (std::size_t j = 0; j < c.m_ue(); ++j) g(i, j) = c.h(i, k) * d[k][j];
    return g;
}

GradientSet sinr_gradient(const ChannelInstance& c, const Precoder& p) {
    for (double w : c.omega)
        if (!(w > 0.0)) throw InvalidInput("sinr_gradient: omega must be positive");
    const LinkMetrics m = link_metrics(c, p);
    const std::size_t n = c.m_ue();

    GradientSet out;
    out.d.assign(n, std::vector<cxd>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            out.d[k][j] = (j == k)
                              ? 4.0 * m.g(k, k) / m.denom[k]
                              : -4.0 * m.g(k, j) * m.signal[k] / (m.denom[k] * m.denom[k]);

    // same rows through diag(4/denom) * (G o F), F carrying -signal/denom off-diagonal
    out.d_block = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            const double f = (j == k) ? 1.0 : -m.signal[k] / m.denom[k];
            out.d_block(k, j) = 4.0 / m.denom[k] * m.g(k, j) * f;
        }
    return out;
}

CMatrix fd_gradient(const ChannelInstance& c, const Precoder& p, std::size_t user, double step) {
    if (!(step > 0.0)) throw InvalidInput("fd_gradient: step must be positive");
    if (user >= c.m_ue()) throw InvalidInput("fd_gradient: user index out of range");
    CMatrix out(c.m_tx(), c.m_ue());
    Precoder q = p;
    auto eval = [&]() { return link_metrics(c, q).sinr[user]; };
    for (std::size_t i = 0; i < c.m_tx(); ++i)
        for (std::size_t j = 0; j < c.m_ue(); ++j) {
            const cxd orig = p(i, j);
            q(i, j) = orig + step;
            const double fp = eval();
            q(i, j) = orig - step;
            const double fm = eval();
            q(i, j) = orig + cxd(0.0, step);
            const double gp = eval();
            q(i, j) = orig - cxd(0.0, step);
            const double gm = eval();
            q(i, j) = orig;
            out(i, j) = 2.0 * cxd((fp - fm) / (2.0 * step), (gp - gm) / (2.0 * step));
        }
    return out;
}

namespace {

// row-major vectorization index
inline std::size_t vec_idx(std::size_t i, std::size_t j, std::size_t cols) {
    return i * cols + j;
}

}  // namespace

ImprovementCertificate improvement_direction(const ChannelInstance& c, const Precoder& p,
                                             double slack_tol) {
    const std::size_t m = c.m_tx(), n = c.m_ue();
    const std::vector<double> pw = row_power(p);

    ImprovementCertificate cert;
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < m; ++i) {
        if (pw[i] < c.beta[i] * (1.0 - slack_tol))
            cert.slack_rows.push_back(i);
        else
            tight.push_back(i);
    }
    if (cert.slack_rows.empty())
        throw NoSlackRow("improvement_direction: every per-antenna constraint is tight");

    const GradientSet grad = sinr_gradient(c, p);

    // columns: h_k (x) d_k per user, e_i (x) (row i of P) per tight row
    CMatrix y(m * n, n + tight.size());
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                y(vec_idx(i, j, n), k) = c.h(i, k) * grad.d[k][j];
    for (std::size_t t = 0; t < tight.size(); ++t)
        for (std::size_t j = 0; j < n; ++j)
            y(vec_idx(tight[t], j, n), n + t) = p(tight[t], j);

    std::vector<cxd> b(n + tight.size(), 1.0);
    for (std::size_t t = 0; t < tight.size(); ++t) b[n + t] = -1.0;

    const std::vector<cxd> x = min_norm_solve(y, b);  // throws RankDeficient

    // residual of the adjoint system, for the certificate
    double res = 0.0;
    for (std::size_t col = 0; col < b.size(); ++col) {
        cxd acc = 0.0;
        for (std::size_t r = 0; r < x.size(); ++r) acc += std::conj(y(r, col)) * x[r];
        res += std::norm(acc - b[col]);
    }
    cert.residual = std::sqrt(res);

    Precoder dp(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) dp(i, j) = x[vec_idx(i, j, n)];
    cert.delta_p = std::move(dp);
    return cert;
}

std::optional<LineImproveResult> line_improve(const ChannelInstance& c, const Precoder& p,
                                              const ImprovementCertificate& cert,
                                              double upsilon, double feas_tol) {
    if (!cert.delta_p || cert.delta_p->fro_norm() == 0.0) return std::nullopt;
    const std::vector<double> base = link_metrics(c, p).sinr;

    for (int t = 0; t <= 40; ++t) {
        const double eps = std::ldexp(1.0, -t);
        Precoder q = p;
        for (std::size_t k = 0; k < q.data().size(); ++k)
            q.data()[k] += eps * cert.delta_p->data()[k];
        if (!check_feasible(q, c.beta, feas_tol).feasible) continue;
        const LinkMetrics m = link_metrics(c, q);
        bool all_up = true;
        for (std::size_t k = 0; k < base.size(); ++k)
            if (!(m.sinr[k] > base[k] * (1.0 + upsilon))) {
                all_up = false;
                break;
            }
        if (all_up) return LineImproveResult{std::move(q), m.sinr, eps};
    }
    return std::nullopt;
}

SearchOutcome improve_search(const ChannelInstance& c, const Precoder& p, double upsilon,
                             double slack_tol, std::size_t max_rounds) {
    const std::vector<double> base = link_metrics(c, p).sinr;
    SearchOutcome out;
    out.sinr = base;
    Precoder cur = p;

    for (std::size_t round = 0; round < max_rounds; ++round) {
        ImprovementCertificate cert;
        try {
            cert = improvement_direction(c, cur, slack_tol);
        } catch (const Error&) {
            return out;  // no slack left or degenerate system: search ends
        }
        // each step only needs to be strictly uphill; the target factor is
        // judged against the original point
        const auto step = line_improve(c, cur, cert, 0.0);
        if (!step) return out;
        cur = step->p;
        out.sinr = step->sinr;
        ++out.rounds;
        double min_ratio = step->sinr[0] / base[0];
        for (std::size_t k = 1; k < base.size(); ++k)
            min_ratio = std::min(min_ratio, step->sinr[k] / base[k]);
        out.best_min_ratio = std::max(out.best_min_ratio, min_ratio);
        if (min_ratio > 1.0 + upsilon) {
            out.improved = true;
            return out;
        }
    }
    return out;
}

FullPowerCondition full_power_condition(const LinkMetrics& m) {
    const std::size_t n = m.users();
    if (n < 2) throw InvalidInput("full_power_condition: needs at least two users");
    FullPowerCondition out;
    out.threshold = 1.0 / static_cast<double>(n - 1);
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = m.signal[k] * m.leakage[k] / (m.denom[k] * m.denom[k]);
        if (out.values[k] >= out.threshold) out.flag = true;
    }
    return out;
}

UnitEigenResult unit_eigenvalue_check(const ChannelInstance& c, const Precoder& p) {
    const LinkMetrics m = link_metrics(c, p);
    const std::size_t n = m.users();
    CMatrix gv = m.g;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(m.signal[k] > 0.0))
            throw ZeroSignal("unit_eigenvalue_check: user " + std::to_string(k + 1) +
                             " has zero signal");
        const cxd v = 1.0 / ((1.0 + m.denom[k] / m.signal[k]) * m.g(k, k));
        for (std::size_t i = 0; i < n; ++i) gv(i, k) *= v;
    }
    UnitEigenResult out;
    out.eigenvalues = complex_eig(gv);
    out.min_distance = std::abs(out.eigenvalues[0] - 1.0);
    for (const cxd& e : out.eigenvalues)
        out.min_distance = std::min(out.min_distance, std::abs(e - 1.0));
    return out;
}

KruskalCheck kruskal_rank(const CMatrix& a, std::size_t limit) {
    const std::size_t m = a.rows(), n = a.cols();
    KruskalCheck out;
    out.order = std::min(m, n);

    // C(max(m,n), order), capped to avoid overflow
    const std::size_t total = std::max(m, n);
    double count = 1.0;
    for (std::size_t i = 0; i < out.order; ++i)
        count *= static_cast<double>(total - i) / static_cast<double>(i + 1);
    if (count > static_cast<double>(limit)) {
        out.status = KruskalCheck::Status::Undetermined;
        return out;
    }

    const bool wide = n >= m;  // choose columns if wide, rows otherwise
    const std::size_t pool = wide ? n : m;
    std::vector<std::size_t> pick(out.order);
    std::iota(pick.begin(), pick.end(), std::size_t{0});

    out.status = KruskalCheck::Status::Full;
    while (true) {
        CMatrix sub(out.order, out.order);
        for (std::size_t r = 0; r < out.order; ++r)
            for (std::size_t s = 0; s < out.order; ++s)
                sub(r, s) = wide ? a(r, pick[s]) : a(pick[r], s);
        ++out.checked;
        if (numeric_rank(sub, 1e-10) < out.order) {
            out.status = KruskalCheck::Status::Deficient;
            return out;
        }
        // next combination in lexicographic order
        std::size_t i = out.order;
        while (i-- > 0) {
            if (pick[i] != i + pool - out.order) {
                ++pick[i];
                for (std::size_t j = i + 1; j < out.order; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) return out;
        }
    }
}

}  // namespace paretoprec
