#include "telefid/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "telefid/errors.hpp"

namespace telefid::linalg {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double max_asymmetry(const ComplexMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

}  // namespace

Spectrum eig_hermitian(const ComplexMatrix& h) {
    if (!h.is_square()) throw NotHermitianError("eig_hermitian: matrix is not square");
    const std::size_t n = h.rows();
    const double asym = max_asymmetry(h);
    if (asym > kHermitianTol) {
        std::ostringstream msg;
        msg << "eig_hermitian: asymmetry " << asym << " exceeds tolerance " << kHermitianTol;
        throw NotHermitianError(msg.str());
    }

    // Work on the symmetrized copy; rounding in the caller must not leak in.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    const ComplexMatrix sym = a;

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = a.frobenius_norm();
    const double threshold = 1e-13 * scale;

    // Cyclic Jacobi: each rotation G = D*R zeroes one off-diagonal pair, where
    // D = diag(1, e^{-i phase(a_pq)}) makes the 2x2 pivot real symmetric and R
    // is the classic real Jacobi rotation for it.
    int sweep = 0;
    while (n > 1 && off_diagonal_norm(a) > threshold) {
        if (sweep++ >= kMaxSweeps) {
            throw NoConvergenceError("eig_hermitian: Jacobi sweep cap reached");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                const double r = std::abs(b);
                if (r == 0.0) continue;
                const Complex phase = b / r;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                double t = 1.0;
                if (tau != 0.0) {
                    const double root = std::sqrt(1.0 + tau * tau);
                    t = (tau > 0.0) ? 1.0 / (tau + root) : -1.0 / (-tau + root);
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = c * aip + gqp * aiq;
                    a(i, q) = s * aip + gqq * aiq;
                    a(p, i) = std::conj(a(i, p));
                    a(q, i) = std::conj(a(i, q));
                }
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q);
                    v(i, p) = c * vip + gqp * viq;
                    v(i, q) = s * vip + gqq * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }

    double residual = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex acc(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) acc += sym(i, j) * out.eigenvectors(j, k);
            acc -= out.eigenvalues[k] * out.eigenvectors(i, k);
            residual = std::max(residual, std::abs(acc));
        }
    }
    out.residual = residual;
    return out;
}

std::vector<EigenvalueGroup> group_eigenvalues(const std::vector<double>& ascending, double tol) {
    std::vector<EigenvalueGroup> groups;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= ascending.size(); ++i) {
        const bool boundary =
            i == ascending.size() || (i > start && ascending[i] - ascending[i - 1] > tol);
        if (!boundary) continue;
        if (i > start) {
            double sum = 0.0;
            for (std::size_t j = start; j < i; ++j) sum += ascending[j];
            groups.push_back({sum / static_cast<double>(i - start), static_cast<int>(i - start)});
        }
        start = i;
    }
    return groups;
}

bool ComplexMatrix::is_psd(double tol) const {
    if (!is_square() || !is_hermitian(tol)) return false;
    ComplexMatrix sym(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j)
            sym(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return eig_hermitian(sym).min() >= -tol;
}

}  // namespace telefid::linalg
