#pragma once

// Shared fixtures: the reference operating points on the 8x3 test channel
// and small independent oracles kept separate from the library code paths
// they check.

#include <cmath>
#include <vector>

#include "paretoprec/channel.hpp"
#include "paretoprec/linalg.hpp"
#include "paretoprec/rng.hpp"

namespace testing {

using paretoprec::CMatrix;
using paretoprec::CounterRng;
using paretoprec::cxd;

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(1e-300, std::abs(b));
}

inline double fro_diff(const CMatrix& a, const CMatrix& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) s += std::norm(a.data()[k] - b.data()[k]);
    return std::sqrt(s);
}

inline CMatrix random_complex(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    CMatrix m(rows, cols);
    CounterRng rng(seed);
    for (cxd& v : m.data()) v = rng.next_cnormal();
    return m;
}

inline CMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    const CMatrix a = random_complex(n, n, seed);
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

inline CMatrix random_spd(std::size_t n, std::uint64_t seed) {
    const CMatrix b = random_complex(n + 2, n, seed);
    CMatrix g = matmul(conj_transpose(b), b);
    for (std::size_t i = 0; i < n; ++i) g(i, i) += 0.1;
    return g;
}

// ---- independent oracles ----

// scalar-loop product, written without touching matmul/conj_transpose
inline CMatrix gram_oracle(const CMatrix& a) {
    CMatrix g(a.cols(), a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            cxd acc = 0.0;
            for (std::size_t k = 0; k < a.rows(); ++k) acc += std::conj(a(k, i)) * a(k, j);
            g(i, j) = acc;
        }
    return g;
}

// column-pivoted elimination solve, independent of chol_solve/lu_solve
inline CMatrix pivoted_solve_oracle(CMatrix a, CMatrix b) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> colperm(n);
    for (std::size_t i = 0; i < n; ++i) colperm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = 0.0;
        for (std::size_t j = k; j < n; ++j)
            if (std::abs(a(k, colperm[j])) > best) { best = std::abs(a(k, colperm[j])); piv = j; }
        std::swap(colperm[k], colperm[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cxd f = a(i, colperm[k]) / a(k, colperm[k]);
            for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t c = 0; c < b.cols(); ++c) b(i, c) -= f * b(k, c);
        }
    }
    CMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (std::size_t kk = n; kk-- > 0;) {
            cxd s = b(kk, c);
            for (std::size_t j = kk + 1; j < n; ++j) s -= a(kk, colperm[j]) * x(colperm[j], c);
            x(colperm[kk], c) = s / a(kk, colperm[kk]);
        }
    return x;
}

// determinant through plain Gaussian elimination with row pivoting
inline cxd det_oracle(CMatrix a) {
    const std::size_t n = a.rows();
    cxd det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cxd f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

// classical Gram-Schmidt least squares for y* x = b: x = Q (R*)^{-1} b with
// y = Q R, solved without forming the normal equations
inline std::vector<cxd> gs_min_norm_oracle(const CMatrix& y, const std::vector<cxd>& b) {
    const std::size_t m = y.rows(), n = y.cols();
    CMatrix q(m, n), r(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cxd> v = y.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                const std::vector<cxd> qk = q.col(k);
                const cxd proj = paretoprec::dot_conj(qk, v);
                r(k, j) += proj;
                for (std::size_t i = 0; i < m; ++i) v[i] -= proj * qk[i];
            }
        const double nv = paretoprec::vec_norm2(v);
        r(j, j) = nv;
        for (cxd& t : v) t /= nv;
        q.set_col(j, v);
    }
    // y* x = b with x = Q w  =>  R* w = b (forward substitution)
    std::vector<cxd> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        cxd s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= std::conj(r(k, i)) * w[k];
        w[i] = s / std::conj(r(i, i));
    }
    std::vector<cxd> x(m, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) x[i] += q(i, j) * w[j];
    return x;
}

// ---- reference operating points on the 8x3 test channel ----

// highest-mean-throughput zero-forcing point
inline const std::vector<double> kZfKappa{0.3481, 0.2184, 0.4335};
inline const std::vector<double> kZfSinr{2.8878, 1.8063, 3.2814};
inline constexpr double kZfMeanDb = 5.5647;

inline CMatrix zf_best_precoder() {
    return CMatrix::from_real_rows({{-0.4510, -0.2924, 0.2970},
                                    {-0.4323, -0.0362, 0.9010},
                                    {-0.0451, 0.0812, -0.1756},
                                    {0.4504, -0.0824, -0.3683},
                                    {-0.0111, -0.0544, -0.0910},
                                    {0.0397, -0.3846, 0.6434},
                                    {0.2615, 0.7373, -0.6228},
                                    {-0.9188, -0.3902, -0.0556}});
}

inline CMatrix zf_best_product() {
    return CMatrix::from_real_rows(
        {{1.6993, 0.0, 0.0}, {0.0, 1.3440, 0.0}, {0.0, 0.0, 1.8115}});
}

// highest-mean-throughput SLNR point
inline const std::vector<double> kSlnrKappa{0.2787, 0.3172, 0.4042};
inline const std::vector<double> kSlnrSinr{2.5537, 3.0683, 3.4758};
// mean of the reference per-user throughputs (5.5069, 6.0941, 6.5087)
inline constexpr double kSlnrMeanDb = 6.03657;

inline CMatrix slnr_best_product() {
    return CMatrix::from_real_rows({{1.7195, -0.3005, 0.2597},
                                    {-0.2720, 1.9319, 0.3773},
                                    {0.2166, 0.3476, 2.0147}});
}

// parametric points: starter weights, one update, converged at delta 0.01
inline const std::vector<double> kParLambda0{0.3123, 0.2616, 0.4261};
inline const std::vector<double> kParSinr0{2.9065, 2.5335, 3.6363};
inline constexpr double kParMeanDb0 = 6.0206;

inline const std::vector<double> kParLambda1{0.2693, 0.2495, 0.4812};
inline const std::vector<double> kParSinr1{3.6413, 3.2667, 5.9677};

inline const std::vector<double> kParLambdaC{0.3307, 0.3326, 0.3368};
inline const std::vector<double> kParSinrC{4.1696, 4.1328, 4.6920};
inline constexpr double kParMeanDbC = 7.2636;

inline CMatrix parametric_best_p0() {
    return CMatrix::from_real_rows({{-0.4077, -0.3012, 0.2314},
                                    {-0.3905, 0.0540, 0.9188},
                                    {-0.0659, 0.0917, -0.1773},
                                    {0.4523, -0.1650, -0.3694},
                                    {-0.0090, -0.0723, -0.1068},
                                    {0.1244, -0.4325, 0.6251},
                                    {0.1387, 0.8426, -0.5203},
                                    {-0.8919, -0.4063, -0.1986}});
}

inline CMatrix parametric_best_p1() {
    return CMatrix::from_real_rows({{-0.6967, -0.5470, 0.4171},
                                    {-0.3274, 0.0590, 0.9086},
                                    {-0.2792, 0.4190, -0.8600},
                                    {0.6721, -0.2845, -0.6139},
                                    {-0.0861, -0.5395, -0.8375},
                                    {0.1426, -0.5389, 0.8237},
                                    {0.1368, 0.8337, -0.5348},
                                    {-0.8716, -0.4168, -0.2581}});
}

inline CMatrix parametric_best_pc() {
    return CMatrix::from_real_rows({{-0.7252, -0.6030, 0.3279},
                                    {-0.3299, 0.0928, 0.9308},
                                    {-0.3893, 0.4470, -0.8046},
                                    {0.7949, -0.3489, -0.4779},
                                    {-0.3349, -0.7205, -0.6008},
                                    {0.1922, -0.6013, 0.7750},
                                    {0.2011, 0.8479, -0.4905},
                                    {-0.8732, -0.4647, -0.1410}});
}

// boundary point at omega = 0.04 that leaves the last antenna under power
inline CMatrix example_precoder() {
    return CMatrix::from_real_rows({{-0.131822459705, -0.116783110219, 0.984370125389},
                                    {-0.179275984384, -0.026748610369, 0.983435118900},
                                    {0.103075169577, 0.169535064180, -0.980119059316},
                                    {0.228024544866, -0.069956868783, -0.971138941162},
                                    {0.215688858238, -0.045050174929, -0.975422368191},
                                    {-0.098145309120, -0.178451934724, 0.979041574716},
                                    {0.059226063982, 0.247555764804, -0.967061743834},
                                    {-0.572228658427, -0.192375199215, -0.257327740732}});
}

inline CMatrix example_product() {
    return CMatrix::from_real_rows({{0.86753830, -0.00070736, 0.01214739},
                                    {-0.00119839, 0.54445487, 0.01513752},
                                    {0.00007688, 0.00005655, 2.94679321}});
}

inline paretoprec::ChannelInstance toy_at_omega(double w) {
    paretoprec::ChannelInstance c = paretoprec::toy_channel();
    c.omega.assign(c.m_ue(), w);
    return c;
}

inline std::vector<double> random_simplex(std::size_t n, CounterRng& rng) {
    std::vector<double> v(n);
    double sum = 0.0;
    for (double& x : v) {
        x = rng.next_unit();
        sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
}

}  // namespace testing
