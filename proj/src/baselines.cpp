#include "paretoprec/baselines.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace paretoprec {

namespace {

std::vector<double> col_norms(const Precoder& p) {
    std::vector<double> n(p.cols(), 0.0);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) n[j] += std::norm(p(i, j));
    for (double& v : n) v = std::sqrt(v);
    return n;
}

std::vector<double> row_norms(const Precoder& p) {
    std::vector<double> n(p.rows(), 0.0);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) n[i] += std::norm(p(i, j));
    for (double& v : n) v = std::sqrt(v);
    return n;
}

}  // namespace

PowerAllocation make_allocation(std::vector<double> kappa) {
    double sum = 0.0;
    for (double k : kappa) {
        if (k < 0.0 || !std::isfinite(k))
            throw InvalidInput("allocation: weights must be nonnegative");
        sum += k;
    }
    if (!(sum > 0.0)) throw InvalidInput("allocation: weights must not all vanish");
    for (double& k : kappa) k /= sum;
    return {std::move(kappa)};
}

Precoder zero_forcing(const CMatrix& h) {
    const CMatrix gram = matmul(conj_transpose(h), h);
    CMatrix inv;
    try {
        inv = chol_solve(gram, CMatrix::identity(h.cols()));
    } catch (const NotPositiveDefinite& e) {
        throw RankDeficient(std::string("zero_forcing: ") + e.what());
    }
    return matmul(h, inv);
}

Precoder slnr_precoder(const CMatrix& h, const std::vector<double>& omega) {
    if (omega.size() != h.cols())
        throw DimensionMismatch("slnr_precoder: omega length must equal m_ue");
    for (double w : omega)
        if (!(w > 0.0)) throw InvalidInput("slnr_precoder: omega must be positive");
    const ThinSvd svd = thin_svd(h);
    if (!svd.deficient.empty()) throw RankDeficient("slnr_precoder: channel not full column rank");

    const std::size_t n = h.cols();
    CMatrix w(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            w(k, j) = svd.sigma[j] / (omega[k] * omega[k] + svd.sigma[j] * svd.sigma[j]) * svd.v(k, j);
    return matmul(svd.u, conj_transpose(w));
}

Precoder allocate_power(const Precoder& p0, const PowerAllocation& kappa,
                        const std::vector<double>& beta) {
    if (kappa.kappa.size() != p0.cols())
        throw DimensionMismatch("allocate_power: kappa length must equal columns");
    if (beta.size() != p0.rows())
        throw DimensionMismatch("allocate_power: beta length must equal rows");
    const std::vector<double> cn = col_norms(p0);

    Precoder p = p0;
    for (std::size_t j = 0; j < p.cols(); ++j) {
        if (!(cn[j] > 0.0)) {
            if (kappa.kappa[j] > 0.0)
                throw ZeroColumn("allocate_power: positive weight on a zero column");
            continue;
        }
        const double f = std::sqrt(kappa.kappa[j]) / cn[j];
        for (std::size_t i = 0; i < p.rows(); ++i) p(i, j) *= f;
    }

    const std::vector<double> rn = row_norms(p);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) worst = std::max(worst, rn[i] / std::sqrt(beta[i]));
    if (!(worst > 0.0)) throw ZeroPrecoder("allocate_power: zero precoder");
    const double inv = 1.0 / worst;
    for (cxd& v : p.data()) v *= inv;
    return p;
}

PowerAllocation uniform_kappa(const Precoder& p0) {
    for (double n : col_norms(p0))
        if (!(n > 0.0)) throw ZeroColumn("uniform_kappa: zero column");
    return {std::vector<double>(p0.cols(), 1.0 / static_cast<double>(p0.cols()))};
}

WaterFillResult water_fill_kappa(const Precoder& p_zf, const std::vector<double>& omega,
                                 double budget) {
    if (omega.size() != p_zf.cols())
        throw DimensionMismatch("water_fill_kappa: omega length must equal columns");
    if (!(budget > 0.0)) throw InvalidInput("water_fill_kappa: budget must be positive");
    const std::size_t n = p_zf.cols();
    std::vector<double> c(n);
    {
        const std::vector<double> cn = col_norms(p_zf);
        for (std::size_t j = 0; j < n; ++j) {
            if (!(cn[j] > 0.0)) throw ZeroColumn("water_fill_kappa: zero column");
            c[j] = cn[j] * cn[j];
        }
    }

    auto total = [&](double nu) {
        double t = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            t += std::max(0.0, 1.0 / nu - c[j] * omega[j] * omega[j]);
        return t;
    };

    double lo = 1e-12, hi = 1e12;  // total(nu) decreases in nu
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (total(mid) > budget)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * hi) break;
    }
    const double nu = 0.5 * (lo + hi);

    WaterFillResult out;
    out.level = 1.0 / nu;
    std::vector<double> q(n);
    out.consumed = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        q[j] = std::max(0.0, 1.0 / nu - c[j] * omega[j] * omega[j]);
        out.consumed += q[j];
    }
    out.kappa = make_allocation(std::move(q));
    return out;
}

Precoder global_scale(const Precoder& p0, const std::vector<double>& beta) {
    if (beta.size() != p0.rows())
        throw DimensionMismatch("global_scale: beta length must equal rows");
    const std::vector<double> rn = row_norms(p0);
    double scale = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p0.rows(); ++i)
        if (rn[i] > 0.0) scale = std::min(scale, std::sqrt(beta[i]) / rn[i]);
    if (!std::isfinite(scale)) throw ZeroPrecoder("global_scale: zero precoder");
    Precoder p = p0;
    for (cxd& v : p.data()) v *= scale;
    return p;
}

}  // namespace paretoprec
