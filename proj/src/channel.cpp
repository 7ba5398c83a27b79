#include "paretoprec/channel.hpp"

#include <cmath>
#include <string>

#include "paretoprec/rng.hpp"

namespace paretoprec {

ChannelInstance make_channel(CMatrix h, std::vector<double> omega, std::vector<double> beta) {
    if (h.rows() <= h.cols() || h.cols() < 1)
        throw InvalidInput("channel: requires m_tx > m_ue >= 1, got " +
                           std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
    if (omega.size() != h.cols()) throw InvalidInput("channel: omega length must equal m_ue");
    if (beta.size() != h.rows()) throw InvalidInput("channel: beta length must equal m_tx");
    for (double w : omega)
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("channel: omega must be positive");
    for (double b : beta)
        if (!(b > 0.0) || !std::isfinite(b)) throw InvalidInput("channel: beta must be positive");
    for (const cxd& v : h.data())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidInput("channel: entries must be finite");
    return {std::move(h), std::move(omega), std::move(beta)};
}

std::vector<double> decay_sigmas(DecayLaw law, std::size_t m_ue) {
    std::vector<double> s(m_ue);
    for (std::size_t k = 0; k < m_ue; ++k) {
        const double kk = static_cast<double>(k + 1);
        switch (law) {
            case DecayLaw::Flat: s[k] = 1.0; break;
            case DecayLaw::Inverse: s[k] = 1.0 / kk; break;
            case DecayLaw::InverseSquare: s[k] = 1.0 / (kk * kk); break;
        }
    }
    return s;
}

CMatrix gen_gaussian(std::size_t m_tx, std::size_t m_ue, std::uint64_t seed) {
    if (m_tx <= m_ue) throw InvalidInput("gen_gaussian: requires m_tx > m_ue");
    CMatrix h(m_tx, m_ue);
    CounterRng rng(seed);
    for (std::size_t i = 0; i < m_tx; ++i)
        for (std::size_t j = 0; j < m_ue; ++j) h(i, j) = rng.next_cnormal();
    return h;
}

CMatrix gen_svd_decay(std::size_t m_tx, std::size_t m_ue, DecayLaw law, std::uint64_t seed) {
    if (m_tx <= m_ue) throw InvalidInput("gen_svd_decay: requires m_tx > m_ue");
    CMatrix a(m_tx, m_ue), b(m_ue, m_ue);
    CounterRng ra(seed, 0);
    for (cxd& v : a.data()) v = ra.next_cnormal();
    CounterRng rb(seed, 1);
    for (cxd& v : b.data()) v = rb.next_cnormal();

    const CMatrix u = thin_svd(a).u;
    const CMatrix v = thin_svd(b).u;  // m_ue x m_ue unitary basis
    const std::vector<double> sig = decay_sigmas(law, m_ue);

    CMatrix us = u;
    for (std::size_t i = 0; i < m_tx; ++i)
        for (std::size_t j = 0; j < m_ue; ++j) us(i, j) *= sig[j];
    return matmul(us, conj_transpose(v));
}

ChannelInstance toy_channel() {
    CMatrix h = CMatrix::from_real_rows({{-0.4, -0.2, 0.0},
                                         {-0.4, 0.9, 1.2},
                                         {-0.2, 0.1, -0.2},
                                         {0.7, -0.8, -0.5},
                                         {0.0, -0.2, -0.2},
                                         {0.6, -0.5, 0.6},
                                         {-0.4, 1.2, -0.1},
                                         {-1.2, -0.4, -0.8}});
    return {std::move(h), std::vector<double>(3, 1.0), std::vector<double>(8, 1.0)};
}

std::vector<double> noise_from_chi(const CMatrix& h, double chi) {
    if (!(chi > 0.0)) throw InvalidInput("noise_from_chi: chi must be positive");
    const double w = chi * h.fro_norm() / static_cast<double>(h.cols());
    return std::vector<double>(h.cols(), w);
}

std::vector<double> default_beta(std::size_t m_tx, BetaMode mode) {
    const double v = mode == BetaMode::UnitPerAntenna ? 1.0 : 1.0 / static_cast<double>(m_tx);
    return std::vector<double>(m_tx, v);
}

}  // namespace paretoprec
