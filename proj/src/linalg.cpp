#include "hypercpf/linalg.hpp"

#include <cmath>
#include <numbers>

namespace hypercpf {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const CVec& entries) {
    const int n = static_cast<int>(entries.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = entries[static_cast<size_t>(i)];
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw DimensionError("matrix product shape mismatch: " + std::to_string(cols_) + " vs " +
                             std::to_string(rhs.rows_));
    ComplexMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cdouble aik = (*this)(i, k);
            if (aik == cdouble(0.0)) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(cdouble scale) const {
    ComplexMatrix out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * scale;
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("matrix sum shape mismatch");
    ComplexMatrix out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionError("matrix difference shape mismatch");
    ComplexMatrix out(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CVec ComplexMatrix::apply(const CVec& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw DimensionError("matrix-vector shape mismatch: " + std::to_string(cols_) + " vs " +
                             std::to_string(v.size()));
    CVec out(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        cdouble acc = 0.0;
        for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix comparison shape mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < data_.size(); ++i)
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
}

double ComplexMatrix::spectral_norm() const {
    // Power iteration on A^dagger A; the spaces here are tiny and the
    // iteration converges to machine precision in a few dozen steps.
    if (rows_ == 0 || cols_ == 0) return 0.0;
    ComplexMatrix ata = adjoint() * (*this);
    const int n = ata.rows();
    CVec v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = cdouble(1.0 + 0.137 * i, 0.21 * ((i % 3) - 1));
    double lambda = 0.0;
    for (int iter = 0; iter < 500; ++iter) {
        CVec w = ata.apply(v);
        const double norm = std::sqrt(squared_norm(w));
        if (norm == 0.0) return 0.0;
        for (auto& x : w) x /= norm;
        const double next = std::real(inner_product(w, ata.apply(w)));
        v = std::move(w);
        if (iter > 16 && std::abs(next - lambda) <= 1e-15 * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(0.0, lambda));
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    return (adjoint() * (*this)).max_abs_diff(identity(rows_)) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& slow, const ComplexMatrix& fast) {
    ComplexMatrix out(slow.rows() * fast.rows(), slow.cols() * fast.cols());
    for (int si = 0; si < slow.rows(); ++si)
        for (int sj = 0; sj < slow.cols(); ++sj) {
            const cdouble s = slow(si, sj);
            if (s == cdouble(0.0)) continue;
            for (int fi = 0; fi < fast.rows(); ++fi)
                for (int fj = 0; fj < fast.cols(); ++fj)
                    out(si * fast.rows() + fi, sj * fast.cols() + fj) = s * fast(fi, fj);
        }
    return out;
}

double squared_norm(const CVec& v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return acc;
}

cdouble inner_product(const CVec& x, const CVec& y) {
    if (x.size() != y.size())
        throw DimensionError("inner product dimension mismatch: " + std::to_string(x.size()) +
                             " vs " + std::to_string(y.size()));
    cdouble acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double max_abs_diff(const CVec& x, const CVec& y) {
    if (x.size() != y.size())
        throw DimensionError("vector comparison dimension mismatch");
    double worst = 0.0;
    for (size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

CVec gauge_phase(const CVec& v, double eps) {
    for (const auto& x : v) {
        const double mag = std::abs(x);
        if (mag > eps) {
            const cdouble phase = std::conj(x) / mag;
            CVec out(v.size());
            for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * phase;
            return out;
        }
    }
    return v;
}

CVec normalized(const CVec& v) {
    const double n2 = squared_norm(v);
    if (n2 <= 0.0 || !std::isfinite(n2)) throw ZeroStateError("cannot normalize a zero state");
    CVec out(v.size());
    const double inv = 1.0 / std::sqrt(n2);
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * inv;
    return out;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    if (n < 1) throw ValidationError("quadrature node count must be >= 1");
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int pairs = (n + 1) / 2; // roots come in +/- pairs on [-1, 1]
    for (int i = 0; i < pairs; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Recurrence for P_n(x) and P_{n-1}(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<size_t>(i)] = mid - half * x;
        nodes[static_cast<size_t>(n - 1 - i)] = mid + half * x;
        weights[static_cast<size_t>(i)] = half * w;
        weights[static_cast<size_t>(n - 1 - i)] = half * w;
    }
}

} // namespace hypercpf
