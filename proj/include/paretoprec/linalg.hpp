#pragma once

// Self-contained dense complex kernels. Problem sizes in this project stay
// below a few hundred rows, so everything here favors transparent, exactly
// reproducible arithmetic (fixed summation order) over raw speed.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "paretoprec/errors.hpp"

namespace paretoprec {

using cxd = std::complex<double>;

// Dense complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<cxd>> rows);
    static CMatrix from_real_rows(std::initializer_list<std::initializer_list<double>> rows);
    // Validating constructor for external data: rejects empty shapes and
    // non-finite entries.
    static CMatrix checked(std::size_t rows, std::size_t cols, std::vector<cxd> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cxd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cxd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cxd>& data() const { return data_; }
    std::vector<cxd>& data() { return data_; }

    double fro_norm() const;
    double max_abs() const;
    std::vector<cxd> col(std::size_t j) const;
    std::vector<cxd> row(std::size_t i) const;
    void set_col(std::size_t j, const std::vector<cxd>& v);

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    CMatrix& operator*=(cxd s);

    friend bool operator==(const CMatrix& a, const CMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cxd> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, cxd s);
CMatrix operator*(cxd s, CMatrix a);
inline CMatrix operator*(CMatrix a, double s) { return std::move(a) * cxd(s, 0.0); }
inline CMatrix operator*(double s, CMatrix a) { return std::move(a) * cxd(s, 0.0); }

struct HermEig {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // unitary, k-th column pairs with values[k]
};

struct ThinSvd {
    CMatrix u;                           // m x n, orthonormal columns
    std::vector<double> sigma;           // descending, size n
    CMatrix v;                           // n x n unitary
    std::vector<std::size_t> deficient;  // columns of u completed by Gram-Schmidt
};

// c = a * b, plain triple loop in row-major order.
CMatrix matmul(const CMatrix& a, const CMatrix& b);

CMatrix conj_transpose(const CMatrix& a);

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

// Solve a*x = b for Hermitian positive definite a via Cholesky.
// Throws NotPositiveDefinite when a pivot drops below 1e-14 * ||a||_F.
CMatrix chol_solve(const CMatrix& a, const CMatrix& b);

// Solve a*x = b via partial-pivot LU. Throws SingularMatrix when the pivot
// magnitude falls below 1e-14 * max|a_ij|.
CMatrix lu_solve(const CMatrix& a, const CMatrix& b);

// Cyclic Jacobi for Hermitian a; sweeps until the largest off-diagonal
// magnitude is at most 1e-12 * ||a||_F, at most 100 sweeps.
HermEig herm_eig(const CMatrix& a);

// Thin SVD of a tall matrix through the Gram matrix h*h. Singular values
// at or below tol * sigma_max are treated as zero; the matching u columns
// are completed by Gram-Schmidt and reported in `deficient`.
ThinSvd thin_svd(const CMatrix& h, double tol = 1e-10);

// Minimum-norm solution x = y (y*y)^{-1} b of the underdetermined system
// y* x = b (y tall with full column rank). Throws RankDeficient when the
// Gram matrix is not positive definite.
std::vector<cxd> min_norm_solve(const CMatrix& y, const std::vector<cxd>& b);

// Rank by elimination with full pivoting, threshold tol * max|a_ij|.
std::size_t numeric_rank(const CMatrix& a, double tol);

// Eigenvalues of a general complex square matrix: Householder Hessenberg
// reduction followed by shifted QR with 1e-12-relative deflation.
std::vector<cxd> complex_eig(const CMatrix& a);

// ---- small vector helpers shared across modules ----
double vec_norm2(const std::vector<cxd>& v);
double vec_norm2(const std::vector<double>& v);
cxd dot_conj(const std::vector<cxd>& a, const std::vector<cxd>& b);  // sum conj(a_i) b_i

}  // namespace paretoprec
