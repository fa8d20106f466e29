#pragma once

#include <complex>
#include <vector>

#include "hypercpf/errors.hpp"

namespace hypercpf {

using cdouble = std::complex<double>;
using CVec = std::vector<cdouble>;

// Dense row-major complex matrix. Every space in this project is tiny
// (local element maps are at most 32x32), so a minimal hand-rolled type
// is all the linear algebra the simulator needs.
class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(const CVec& entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cdouble& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const cdouble& operator()(int i, int j) const {
        return data_[static_cast<size_t>(i) * cols_ + j];
    }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(cdouble scale) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix adjoint() const;

    CVec apply(const CVec& v) const;

    // Largest entrywise |a_ij - b_ij|; matrices must share shape.
    double max_abs_diff(const ComplexMatrix& other) const;

    // Largest singular value via power iteration on A^dagger A.
    double spectral_norm() const;

    // ||A^dagger A - I||_max <= tol
    bool is_unitary(double tol) const;

  private:
    int rows_, cols_;
    CVec data_;
};

// Kronecker product with `slow` as the slow (most significant) index:
// out[s*fast_dim + f, ...] = slow(s_o, s_i) * fast(f_o, f_i).
// Matches the little-endian index packing used throughout the simulator.
ComplexMatrix kron(const ComplexMatrix& slow, const ComplexMatrix& fast);

double squared_norm(const CVec& v);

// Inner product, conjugate-linear in the first argument.
cdouble inner_product(const CVec& x, const CVec& y);

double max_abs_diff(const CVec& x, const CVec& y);

// Multiplies v by the phase that makes its first entry with |v_i| > eps
// real and positive. Zero vectors are returned unchanged.
CVec gauge_phase(const CVec& v, double eps = 1e-14);

// v / ||v||; raises ZeroStateError when ||v|| is numerically zero.
CVec normalized(const CVec& v);

// Nodes and weights of n-point Gauss-Legendre quadrature on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

} // namespace hypercpf
