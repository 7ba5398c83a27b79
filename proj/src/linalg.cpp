#include "paretoprec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace paretoprec {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw DimensionMismatch(what);
}

double herm_deviation(const CMatrix& a) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            dev += std::norm(a(i, j) - std::conj(a(j, i)));
    return std::sqrt(2.0 * dev);
}

}  // namespace

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cxd>> rows) {
    CMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        require(r.size() == m.cols(), "ragged initializer");
        std::size_t j = 0;
        for (cxd v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

CMatrix CMatrix::from_real_rows(std::initializer_list<std::initializer_list<double>> rows) {
    CMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        require(r.size() == m.cols(), "ragged initializer");
        std::size_t j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

CMatrix CMatrix::checked(std::size_t rows, std::size_t cols, std::vector<cxd> entries) {
    if (rows < 1 || cols < 1) throw InvalidInput("matrix dimensions must be at least 1x1");
    if (entries.size() != rows * cols)
        throw InvalidInput("entry count does not match rows*cols");
    for (const cxd& v : entries)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidInput("matrix entries must be finite");
    CMatrix m(rows, cols);
    m.data_ = std::move(entries);
    return m;
}

double CMatrix::fro_norm() const {
    double s = 0.0;
    for (const cxd& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cxd& v : data_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<cxd> CMatrix::col(std::size_t j) const {
    std::vector<cxd> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<cxd> CMatrix::row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void CMatrix::set_col(std::size_t j, const std::vector<cxd>& v) {
    require(v.size() == rows_, "column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cxd s) {
    for (cxd& v : data_) v *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { a += b; return a; }
CMatrix operator-(CMatrix a, const CMatrix& b) { a -= b; return a; }
CMatrix operator*(CMatrix a, cxd s) { a *= s; return a; }
CMatrix operator*(cxd s, CMatrix a) { a *= s; return a; }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    require(a.cols() == b.rows(), "matmul: inner dimensions differ");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cxd acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    return c;
}

CMatrix conj_transpose(const CMatrix& a) {
    CMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

CMatrix chol_solve(const CMatrix& a, const CMatrix& b) {
    require(a.rows() == a.cols(), "chol_solve: matrix not square");
    require(b.rows() == a.rows(), "chol_solve: rhs rows mismatch");
    const std::size_t n = a.rows();
    const double fro = a.fro_norm();
    if (herm_deviation(a) > 1e-12 * fro)
        throw InvalidInput("chol_solve: matrix not Hermitian within tolerance");

    // Factor (A + A*)/2 = L L*, pivots kept real.
    CMatrix l(n, n);
    const double pivot_floor = 1e-14 * fro;
    for (std::size_t j = 0; j < n; ++j) {
        double diag = 0.5 * (a(j, j).real() + a(j, j).real());
        for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
        if (!(diag > pivot_floor))
            throw NotPositiveDefinite("chol_solve: pivot " + std::to_string(diag) +
                                      " at column " + std::to_string(j));
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cxd s = 0.5 * (a(i, j) + std::conj(a(j, i)));
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }

    // L y = b, then L* x = y.
    CMatrix x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cxd s = x(i, c);
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
            x(i, c) = s / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cxd s = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * x(k, c);
            x(ii, c) = s / l(ii, ii);
        }
    }
    return x;
}

CMatrix lu_solve(const CMatrix& a, const CMatrix& b) {
    require(a.rows() == a.cols(), "lu_solve: matrix not square");
    require(b.rows() == a.rows(), "lu_solve: rhs rows mismatch");
    const std::size_t n = a.rows();
    const double pivot_floor = 1e-14 * a.max_abs();

    CMatrix lu = a;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > best) { best = std::abs(lu(i, k)); piv = i; }
        if (!(best > pivot_floor))
            throw SingularMatrix("lu_solve: pivot below threshold at step " + std::to_string(k));
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            lu(i, k) /= lu(k, k);
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
        }
    }

    CMatrix x(n, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            cxd s = b(perm[i], c);
            for (std::size_t k = 0; k < i; ++k) s -= lu(i, k) * x(k, c);
            x(i, c) = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cxd s = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) s -= lu(ii, k) * x(k, c);
            x(ii, c) = s / lu(ii, ii);
        }
    }
    return x;
}

HermEig herm_eig(const CMatrix& a) {
    require(a.rows() == a.cols(), "herm_eig: matrix not square");
    const std::size_t n = a.rows();
    const double fro = a.fro_norm();
    if (herm_deviation(a) > 1e-12 * fro)
        throw InvalidInput("herm_eig: matrix not Hermitian within tolerance");

    CMatrix w = a;
    // symmetrize and keep the diagonal real
    for (std::size_t i = 0; i < n; ++i) {
        w(i, i) = w(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            cxd v = 0.5 * (w(i, j) + std::conj(w(j, i)));
            w(i, j) = v;
            w(j, i) = std::conj(v);
        }
    }
    CMatrix v = CMatrix::identity(n);
    const double target = 1e-12 * fro;

    auto max_offdiag = [&]() {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) m = std::max(m, std::abs(w(i, j)));
        return m;
    };

    int sweep = 0;
    while (n > 1 && max_offdiag() > target) {
        if (++sweep > 100) throw NoConvergence("herm_eig: 100 Jacobi sweeps exceeded");
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double m = std::abs(w(p, q));
                if (m <= 0.25 * target / static_cast<double>(n)) continue;
                // absorb the phase so the (p,q) block becomes real symmetric
                const cxd phase = w(p, q) / m;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const double theta = (aqq - app) / (2.0 * m);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cxd wbar = std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const cxd akp = w(k, p);
                    const cxd akq = w(k, q) * wbar;
                    w(k, p) = c * akp - s * akq;
                    w(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    w(p, k) = std::conj(w(k, p));
                    w(q, k) = std::conj(w(k, q));
                }
                // recompute the 2x2 block exactly from the rotation
                w(p, p) = c * c * app - 2.0 * c * s * m + s * s * aqq;
                w(q, q) = s * s * app + 2.0 * c * s * m + c * c * aqq;
                w(p, q) = 0.0;
                w(q, p) = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    const cxd vkp = v(k, p);
                    const cxd vkq = v(k, q) * wbar;
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });

    HermEig out;
    out.values.resize(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = w(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

ThinSvd thin_svd(const CMatrix& h, double tol) {
    require(h.rows() >= h.cols(), "thin_svd: expects rows >= cols");
    const std::size_t m = h.rows();
    const std::size_t n = h.cols();
    HermEig eig = herm_eig(matmul(conj_transpose(h), h));

    ThinSvd out;
    out.sigma.resize(n);
    out.v = CMatrix(n, n);
    out.u = CMatrix(m, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = n - 1 - k;  // descending
        out.sigma[k] = std::sqrt(std::max(eig.values[src], 0.0));
        for (std::size_t i = 0; i < n; ++i) out.v(i, k) = eig.vectors(i, src);
    }

    const double sigma_max = out.sigma.empty() ? 0.0 : out.sigma[0];
    for (std::size_t k = 0; k < n; ++k) {
        if (sigma_max > 0.0 && out.sigma[k] > tol * sigma_max) {
            std::vector<cxd> u(m, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                cxd acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) acc += h(i, j) * out.v(j, k);
                u[i] = acc / out.sigma[k];
            }
            out.u.set_col(k, u);
        } else {
            // rank-deficient direction: complete with the canonical vector
            // whose Gram-Schmidt residual against the placed columns is largest
            out.deficient.push_back(k);
            std::vector<cxd> best;
            double best_norm = -1.0;
            for (std::size_t cand = 0; cand < m; ++cand) {
                std::vector<cxd> u(m, 0.0);
                u[cand] = 1.0;
                for (std::size_t prev = 0; prev < k; ++prev) {
                    const std::vector<cxd> up = out.u.col(prev);
                    const cxd proj = dot_conj(up, u);
                    for (std::size_t i = 0; i < m; ++i) u[i] -= proj * up[i];
                }
                const double nu = vec_norm2(u);
                if (nu > best_norm) {
                    best_norm = nu;
                    best = std::move(u);
                }
                if (best_norm > 0.5) break;
            }
            for (cxd& x : best) x /= best_norm;
            out.u.set_col(k, best);
        }
    }
    return out;
}

std::vector<cxd> min_norm_solve(const CMatrix& y, const std::vector<cxd>& b) {
    require(y.rows() >= y.cols(), "min_norm_solve: expects a tall matrix");
    require(b.size() == y.cols(), "min_norm_solve: rhs length mismatch");
    CMatrix rhs(y.cols(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    CMatrix sol;
    try {
        sol = chol_solve(matmul(conj_transpose(y), y), rhs);
    } catch (const NotPositiveDefinite& e) {
        throw RankDeficient(std::string("min_norm_solve: ") + e.what());
    }
    std::vector<cxd> x(y.rows());
    for (std::size_t i = 0; i < y.rows(); ++i) {
        cxd acc = 0.0;
        for (std::size_t j = 0; j < y.cols(); ++j) acc += y(i, j) * sol(j, 0);
        x[i] = acc;
    }
    return x;
}

std::size_t numeric_rank(const CMatrix& a, double tol) {
    CMatrix w = a;
    const std::size_t m = w.rows(), n = w.cols();
    const double thresh = tol * a.max_abs();
    std::size_t rank = 0;
    std::size_t row = 0;
    std::vector<bool> used_col(n, false);
    while (row < m) {
        // largest remaining entry (full pivoting)
        double best = 0.0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = row; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!used_col[j] && std::abs(w(i, j)) > best) {
                    best = std::abs(w(i, j));
                    bi = i; bj = j;
                }
        if (!(best > thresh)) break;
        if (bi != row)
            for (std::size_t j = 0; j < n; ++j) std::swap(w(row, j), w(bi, j));
        used_col[bj] = true;
        ++rank;
        for (std::size_t i = row + 1; i < m; ++i) {
            const cxd f = w(i, bj) / w(row, bj);
            for (std::size_t j = 0; j < n; ++j) w(i, j) -= f * w(row, j);
        }
        ++row;
    }
    return rank;
}

namespace {

// trailing-2x2 eigenvalue closest to the corner entry (Wilkinson shift)
cxd wilkinson_shift(cxd a, cxd b, cxd c, cxd d) {
    const cxd tr = a + d;
    const cxd det = a * d - b * c;
    const cxd disc = std::sqrt(tr * tr - 4.0 * det);
    const cxd r1 = 0.5 * (tr + disc);
    const cxd r2 = 0.5 * (tr - disc);
    return std::abs(r1 - d) < std::abs(r2 - d) ? r1 : r2;
}

}  // namespace

std::vector<cxd> complex_eig(const CMatrix& a) {
    require(a.rows() == a.cols(), "complex_eig: matrix not square");
    const std::size_t n = a.rows();
    if (n == 1) return {a(0, 0)};

    // Householder reduction to upper Hessenberg form
    CMatrix h = a;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::vector<cxd> x(n - k - 1);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = h(k + 1 + i, k);
        double xn = vec_norm2(x);
        if (xn == 0.0) continue;
        cxd alpha = (std::abs(x[0]) > 0.0) ? -(x[0] / std::abs(x[0])) * xn : cxd(-xn, 0.0);
        std::vector<cxd> v = x;
        v[0] -= alpha;
        const double vn = vec_norm2(v);
        if (vn < 1e-300) continue;
        for (cxd& t : v) t /= vn;
        // H = I - 2 v v*, applied from both sides on the trailing block
        for (std::size_t j = 0; j < n; ++j) {
            cxd s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * h(k + 1 + i, j);
            for (std::size_t i = 0; i < v.size(); ++i) h(k + 1 + i, j) -= 2.0 * v[i] * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            cxd s = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) s += h(i, k + 1 + j) * v[j];
            for (std::size_t j = 0; j < v.size(); ++j) h(i, k + 1 + j) -= 2.0 * s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
        h(k + 1, k) = alpha;
    }

    // shifted QR with deflation on the active trailing block
    std::vector<cxd> eig(n);
    std::size_t hi = n;  // active block is h[0..hi)
    std::size_t iters_since_deflate = 0;
    const std::size_t max_total = 200 * n;
    std::size_t total = 0;
    while (hi > 0) {
        if (hi == 1) { eig[0] = h(0, 0); break; }
        // deflate converged subdiagonals
        bool deflated = false;
        for (std::size_t k = hi - 1; k >= 1; --k) {
            const double scale = std::abs(h(k - 1, k - 1)) + std::abs(h(k, k));
            if (std::abs(h(k, k - 1)) <= 1e-12 * (scale > 0 ? scale : 1.0)) {
                h(k, k - 1) = 0.0;
                if (k == hi - 1) {
                    eig[hi - 1] = h(hi - 1, hi - 1);
                    --hi;
                    iters_since_deflate = 0;
                    deflated = true;
                    break;
                }
            }
        }
        if (deflated) continue;
        if (hi == 2) {
            const cxd tr = h(0, 0) + h(1, 1);
            const cxd det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
            const cxd disc = std::sqrt(tr * tr - 4.0 * det);
            eig[0] = 0.5 * (tr + disc);
            eig[1] = 0.5 * (tr - disc);
            break;
        }
        if (++total > max_total) throw NoConvergence("complex_eig: QR iteration limit");

        cxd shift = wilkinson_shift(h(hi - 2, hi - 2), h(hi - 2, hi - 1),
                                    h(hi - 1, hi - 2), h(hi - 1, hi - 1));
        if (++iters_since_deflate % 20 == 0)  // rare stagnation: perturb deterministically
            shift = h(hi - 1, hi - 1) + 0.75 * std::abs(h(hi - 1, hi - 2));

        // explicit QR step on the active block via Givens rotations
        for (std::size_t i = 0; i < hi; ++i) h(i, i) -= shift;
        std::vector<cxd> gc(hi - 1), gs(hi - 1);
        for (std::size_t k = 0; k + 1 < hi; ++k) {
            const cxd f = h(k, k), g = h(k + 1, k);
            const double r = std::sqrt(std::norm(f) + std::norm(g));
            if (r == 0.0) { gc[k] = 1.0; gs[k] = 0.0; continue; }
            gc[k] = std::conj(f) / r;
            gs[k] = std::conj(g) / r;
            for (std::size_t j = k; j < hi; ++j) {
                const cxd t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = gc[k] * t1 + gs[k] * t2;
                h(k + 1, j) = -std::conj(gs[k]) * t1 + std::conj(gc[k]) * t2;
            }
        }
        for (std::size_t k = 0; k + 1 < hi; ++k) {  // RQ: apply rotations on the right
            for (std::size_t i = 0; i <= std::min(k + 1, hi - 1); ++i) {
                const cxd t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = t1 * std::conj(gc[k]) + t2 * std::conj(gs[k]);
                h(i, k + 1) = -t1 * gs[k] + t2 * gc[k];
            }
        }
        for (std::size_t i = 0; i < hi; ++i) h(i, i) += shift;
    }
    return eig;
}

double vec_norm2(const std::vector<cxd>& v) {
    double s = 0.0;
    for (const cxd& x : v) s += std::norm(x);
    return std::sqrt(s);
}

double vec_norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

cxd dot_conj(const std::vector<cxd>& a, const std::vector<cxd>& b) {
    cxd s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

}  // namespace paretoprec
