#include "telefid/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "telefid/errors.hpp"
#include "telefid/gell_mann.hpp"

namespace telefid::states {

using linalg::gell_mann_basis;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double clamped_acos(double x) {
    if (x > 1.0) x = 1.0;
    if (x < -1.0) x = -1.0;
    return std::acos(x);
}

std::array<Complex, 3> gaussian_triple(rng::RandomStream& stream) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<Complex, 3> v;
    for (auto& x : v) {
        const double re = gauss(stream);
        const double im = gauss(stream);
        x = Complex(re, im);
    }
    return v;
}

}  // namespace

PureQutritState pure_state(const std::array<double, 5>& theta) {
    const double c2 = std::cos(theta[1]), s2 = std::sin(theta[1]);
    const double c3 = std::cos(theta[2]), s3 = std::sin(theta[2]);
    const double c4 = std::cos(theta[3]), s4 = std::sin(theta[3]);
    const double c5 = std::cos(theta[4]), s5 = std::sin(theta[4]);

    PureQutritState out;
    out.theta = theta;
    out.amplitudes[0] = Complex(c5, s5 * c4);
    out.amplitudes[1] = s5 * s4 * Complex(c3, s3 * c2);
    out.amplitudes[2] = s5 * s4 * s3 * s2 * Complex(std::cos(theta[0]), std::sin(theta[0]));
    return out;
}

PureQutritState sample_haar_state(rng::RandomStream& stream) {
    auto v = gaussian_triple(stream);
    double norm2 = 0.0;
    for (const auto& x : v) norm2 += std::norm(x);
    while (norm2 == 0.0) {  // probability zero, but keep the map total
        v = gaussian_triple(stream);
        for (const auto& x : v) norm2 += std::norm(x);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;

    // Real coordinates of the unit 5-sphere in the chart's nesting order.
    const double x1 = v[0].real(), x2 = v[0].imag();
    const double x3 = v[1].real(), x4 = v[1].imag();
    const double x5 = v[2].real(), x6 = v[2].imag();

    const double r5 = std::sqrt(x2 * x2 + x3 * x3 + x4 * x4 + x5 * x5 + x6 * x6);
    const double r4 = std::sqrt(x3 * x3 + x4 * x4 + x5 * x5 + x6 * x6);
    const double r3 = std::sqrt(x4 * x4 + x5 * x5 + x6 * x6);
    const double r2 = std::sqrt(x5 * x5 + x6 * x6);

    std::array<double, 5> theta{};
    theta[4] = clamped_acos(x1);
    theta[3] = (r5 > 0.0) ? clamped_acos(x2 / r5) : 0.0;
    theta[2] = (r4 > 0.0) ? clamped_acos(x3 / r4) : 0.0;
    theta[1] = (r3 > 0.0) ? clamped_acos(x4 / r3) : 0.0;
    if (r2 > 0.0) {
        double t1 = std::atan2(x6, x5);
        if (t1 < 0.0) t1 += kTwoPi;
        theta[0] = t1;
    }
    return pure_state(theta);
}

InputProjector input_projector(const PureQutritState& phi) {
    const auto& g = gell_mann_basis();

    InputProjector out;
    out.matrix = ComplexMatrix(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            out.matrix(i, j) = phi.amplitudes[i] * std::conj(phi.amplitudes[j]);
    for (std::size_t k = 0; k < 8; ++k) {
        out.alpha[k] = (out.matrix * g[k]).trace().real();
    }
    return out;
}

ComplexMatrix horodecki_state(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        std::ostringstream msg;
        msg << "horodecki_state: parameter " << a << " outside [0, 1]";
        throw OutOfRangeError(msg.str());
    }
    ComplexMatrix m(9, 9);
    for (std::size_t i = 0; i < 9; ++i) m(i, i) = a;
    m(6, 6) = 0.5 * (1.0 + a);
    m(8, 8) = 0.5 * (1.0 + a);
    m(0, 4) = m(4, 0) = a;
    m(0, 8) = m(8, 0) = a;
    m(4, 8) = m(8, 4) = a;
    const double root = 0.5 * std::sqrt(1.0 - a * a);
    m(6, 8) = root;
    m(8, 6) = root;
    return (1.0 / (8.0 * a + 1.0)) * m;
}

const ComplexMatrix& swap_operator() {
    static const ComplexMatrix n = [] {
        ComplexMatrix m(9, 9);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(3 * j + i, 3 * i + j) = 1.0;
        return m;
    }();
    return n;
}

ComplexMatrix swap_conjugate(const ComplexMatrix& p) {
    const ComplexMatrix& n = swap_operator();
    return n * p * n;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho) {
    if (rho.rows() != 9 || rho.cols() != 9) {
        throw std::invalid_argument("partial_transpose: expected a 9x9 matrix");
    }
    ComplexMatrix out(9, 9);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t l = 0; l < 3; ++l)
                    out(3 * i + j, 3 * k + l) = rho(3 * i + l, 3 * k + j);
    return out;
}

void validate_protocol(const MeasurementProtocol& protocol, double tol) {
    ComplexMatrix sum(9, 9);
    for (std::size_t k = 0; k < 9; ++k) {
        const ComplexMatrix& p = protocol.projectors[k];
        if (p.rows() != 9 || p.cols() != 9) {
            throw InvalidProtocolError("validate_protocol: projector is not 9x9");
        }
        if (!p.is_projector(tol)) {
            std::ostringstream msg;
            msg << "validate_protocol: outcome " << k << " is not a projector within " << tol;
            throw InvalidProtocolError(msg.str());
        }
        if (std::abs(p.trace() - Complex(1.0, 0.0)) > tol) {
            std::ostringstream msg;
            msg << "validate_protocol: outcome " << k << " is not rank 1";
            throw InvalidProtocolError(msg.str());
        }
        const ComplexMatrix& u = protocol.corrections[k];
        if (u.rows() != 3 || u.cols() != 3 || !u.is_unitary(tol)) {
            std::ostringstream msg;
            msg << "validate_protocol: correction " << k << " is not unitary within " << tol;
            throw InvalidProtocolError(msg.str());
        }
        sum += p;
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(9)) > tol) {
        throw InvalidProtocolError("validate_protocol: projectors do not sum to the identity");
    }
}

std::array<Complex, 9> max_entangled_vector() {
    std::array<Complex, 9> v{};
    const double w = 1.0 / std::sqrt(3.0);
    v[0] = v[4] = v[8] = w;
    return v;
}

ComplexMatrix max_entangled_projector() {
    const auto v = max_entangled_vector();
    ComplexMatrix out(9, 9);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) out(i, j) = v[i] * std::conj(v[j]);
    return out;
}

MeasurementProtocol standard_protocol() {
    const Complex w = std::polar(1.0, kTwoPi / 3.0);
    ComplexMatrix shift(3, 3);
    for (std::size_t j = 0; j < 3; ++j) shift((j + 1) % 3, j) = 1.0;
    ComplexMatrix clock(3, 3);
    clock(0, 0) = 1.0;
    clock(1, 1) = w;
    clock(2, 2) = w * w;

    const auto bell0 = max_entangled_vector();
    MeasurementProtocol protocol;
    for (std::size_t m = 0; m < 3; ++m) {
        for (std::size_t n = 0; n < 3; ++n) {
            ComplexMatrix v = ComplexMatrix::identity(3);
            for (std::size_t i = 0; i < n; ++i) v = clock * v;
            for (std::size_t i = 0; i < m; ++i) v = shift * v;

            const ComplexMatrix lifted = kron(v, ComplexMatrix::identity(3));
            std::array<Complex, 9> b{};
            for (std::size_t i = 0; i < 9; ++i)
                for (std::size_t j = 0; j < 9; ++j) b[i] += lifted(i, j) * bell0[j];

            ComplexMatrix proj(9, 9);
            for (std::size_t i = 0; i < 9; ++i)
                for (std::size_t j = 0; j < 9; ++j) proj(i, j) = b[i] * std::conj(b[j]);

            protocol.projectors[3 * m + n] = proj;
            protocol.corrections[3 * m + n] = v;
        }
    }
    return protocol;
}

ComplexMatrix sample_haar_unitary(std::size_t n, rng::RandomStream& stream) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = gauss(stream);
            const double im = gauss(stream);
            g(i, j) = Complex(re, im);
        }

    // Modified Gram-Schmidt with a second orthogonalization pass; positive
    // diagonal normalization makes the column frame Haar distributed.
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex dot(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(g(i, k)) * g(i, j);
                for (std::size_t i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
            }
        }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(g(i, j));
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < n; ++i) g(i, j) *= inv;
    }
    return g;
}

MeasurementProtocol random_protocol(rng::RandomStream& stream) {
    const ComplexMatrix basis = sample_haar_unitary(9, stream);

    MeasurementProtocol protocol;
    for (std::size_t k = 0; k < 9; ++k) {
        ComplexMatrix proj(9, 9);
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 9; ++j) proj(i, j) = basis(i, k) * std::conj(basis(j, k));
        protocol.projectors[k] = proj;
        protocol.corrections[k] = sample_haar_unitary(3, stream);
    }
    return protocol;
}

ComplexMatrix random_density_matrix(std::size_t n, rng::RandomStream& stream) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = gauss(stream);
            const double im = gauss(stream);
            g(i, j) = Complex(re, im);
        }
    ComplexMatrix rho = g * g.adjoint();
    return (1.0 / rho.trace().real()) * rho;
}

}  // namespace telefid::states
