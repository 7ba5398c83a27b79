#include "paretoprec/metrics.hpp"

#include <cmath>

namespace paretoprec {

LinkMetrics link_metrics(const ChannelInstance& c, const Precoder& p) {
    if (p.rows() != c.m_tx() || p.cols() != c.m_ue())
        throw DimensionMismatch("link_metrics: precoder shape does not match channel");
    const std::size_t n = c.m_ue();

    LinkMetrics m;
    m.g = matmul(conj_transpose(c.h), p);
    m.signal.resize(n);
    m.interference.assign(n, 0.0);
    m.leakage.assign(n, 0.0);
    m.noise.resize(n);
    m.denom.resize(n);
    m.sinr.resize(n);
    m.slnr.resize(n);

    for (std::size_t k = 0; k < n; ++k) {
        m.signal[k] = std::norm(m.g(k, k));
        m.noise[k] = c.omega[k] * c.omega[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            m.interference[k] += std::norm(m.g(k, j));
            m.leakage[k] += std::norm(m.g(j, k));
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        m.denom[k] = m.interference[k] + m.noise[k];
        m.sinr[k] = m.signal[k] / m.denom[k];
        m.slnr[k] = m.signal[k] / (m.leakage[k] + m.noise[k]);
    }
    return m;
}

double throughput(const LinkMetrics& m) {
    double t = 0.0;
    for (double s : m.sinr) t += std::log1p(s);
    return t;
}

std::vector<double> per_user_db(const LinkMetrics& m) {
    std::vector<double> db(m.sinr.size());
    for (std::size_t k = 0; k < db.size(); ++k) db[k] = 10.0 * std::log10(1.0 + m.sinr[k]);
    return db;
}

double mean_db(const LinkMetrics& m) {
    const std::vector<double> db = per_user_db(m);
    double s = 0.0;
    for (double v : db) s += v;
    return s / static_cast<double>(db.size());
}

std::vector<double> row_power(const Precoder& p) {
    std::vector<double> pw(p.rows(), 0.0);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) pw[i] += std::norm(p(i, j));
    return pw;
}

Feasibility check_feasible(const Precoder& p, const std::vector<double>& beta, double tol) {
    if (beta.size() != p.rows())
        throw DimensionMismatch("check_feasible: beta length must equal precoder rows");
    Feasibility f{true, std::vector<double>(p.rows())};
    const std::vector<double> pw = row_power(p);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        f.slack[i] = beta[i] - pw[i];
        if (pw[i] > beta[i] * (1.0 + tol)) f.feasible = false;
    }
    return f;
}

GainStats gains(const LinkMetrics& test, const LinkMetrics& reference) {
    if (test.users() != reference.users())
        throw DimensionMismatch("gains: user counts differ");
    GainStats g{0.0, 0.0};
    bool first = true;
    for (std::size_t k = 0; k < test.users(); ++k) {
        if (!(reference.sinr[k] > 0.0))
            throw ZeroReferenceSinr("gains: reference sinr must be positive");
        const double r = test.sinr[k] / reference.sinr[k];
        g.avg += r;
        g.min = first ? r : std::min(g.min, r);
        first = false;
    }
    g.avg /= static_cast<double>(test.users());
    return g;
}

}  // namespace paretoprec
