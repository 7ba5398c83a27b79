#pragma once

// Per-user link quality derived from a (channel, precoder) pair.

#include <vector>

#include "paretoprec/channel.hpp"
#include "paretoprec/linalg.hpp"

namespace paretoprec {

using Precoder = CMatrix;  // m_tx x m_ue

struct LinkMetrics {
    CMatrix g;                         // G = H* P, m_ue x m_ue
    std::vector<double> signal;        // |g_kk|^2
    std::vector<double> interference;  // sum_{j != k} |g_kj|^2 (row k off-diagonal)
    std::vector<double> leakage;       // sum_{j != k} |g_jk|^2 (column k off-diagonal)
    std::vector<double> noise;         // omega_k^2
    std::vector<double> denom;         // interference + noise
    std::vector<double> sinr;
    std::vector<double> slnr;

    std::size_t users() const { return sinr.size(); }
};

LinkMetrics link_metrics(const ChannelInstance& c, const Precoder& p);

// sum_k log(1 + sinr_k), natural logarithm
double throughput(const LinkMetrics& m);

// 10 log10(1 + sinr_k) per user, and its average
std::vector<double> per_user_db(const LinkMetrics& m);
double mean_db(const LinkMetrics& m);

// squared euclidean norm of each precoder row
std::vector<double> row_power(const Precoder& p);

struct Feasibility {
    bool feasible;
    std::vector<double> slack;  // beta_i - power_i per row
};

// feasible iff every row power <= beta_i * (1 + tol)
Feasibility check_feasible(const Precoder& p, const std::vector<double>& beta,
                           double tol = 1e-9);

struct GainStats {
    double avg;
    double min;
};

// mean and minimum of sinr ratios test/reference
GainStats gains(const LinkMetrics& test, const LinkMetrics& reference);

}  // namespace paretoprec
