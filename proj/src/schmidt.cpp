#include "telefid/schmidt.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "telefid/errors.hpp"
#include "telefid/gell_mann.hpp"

namespace telefid::schmidt {

using linalg::Complex;
using linalg::gell_mann_basis;

namespace {

constexpr double kImagTol = 1e-9;

// Tr(M (A x B)) contracted directly, without forming the 9x9 product basis
// element: sum_{ijkl} M[(i,j),(k,l)] A[k,i] B[l,j].
Complex trace_with_product(const ComplexMatrix& m, const ComplexMatrix& a,
                           const ComplexMatrix& b) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                const Complex aki = a(k, i);
                if (aki == Complex(0.0, 0.0)) continue;
                for (std::size_t l = 0; l < 3; ++l)
                    acc += m(3 * i + j, 3 * k + l) * aki * b(l, j);
            }
    return acc;
}

double require_real(Complex value, const char* label) {
    if (std::abs(value.imag()) > kImagTol) {
        std::ostringstream msg;
        msg << "decompose: component " << label << " has imaginary part " << value.imag();
        throw NonHermitianInputError(msg.str());
    }
    return value.real();
}

}  // namespace

SchmidtComponents decompose(const ComplexMatrix& m) {
    if (m.rows() != 9 || m.cols() != 9) {
        throw std::invalid_argument("decompose: expected a 9x9 matrix");
    }
    const auto& g = gell_mann_basis();
    const ComplexMatrix id = ComplexMatrix::identity(3);

    SchmidtComponents c;
    c.unit_weight = require_real(m.trace(), "unit_weight");
    for (std::size_t i = 0; i < 8; ++i) {
        c.r[i] = require_real(trace_with_product(m, g[i], id), "r");
        c.s[i] = require_real(trace_with_product(m, id, g[i]), "s");
        for (std::size_t j = 0; j < 8; ++j) {
            c.t[i][j] = require_real(trace_with_product(m, g[i], g[j]), "t");
        }
    }
    return c;
}

ComplexMatrix reconstruct(const SchmidtComponents& c) {
    const auto& g = gell_mann_basis();
    const ComplexMatrix id = ComplexMatrix::identity(3);

    ComplexMatrix out = (c.unit_weight / 9.0) * ComplexMatrix::identity(9);
    for (std::size_t i = 0; i < 8; ++i) {
        if (c.r[i] != 0.0) out += (c.r[i] / 6.0) * kron(g[i], id);
        if (c.s[i] != 0.0) out += (c.s[i] / 6.0) * kron(id, g[i]);
        for (std::size_t j = 0; j < 8; ++j) {
            if (c.t[i][j] != 0.0) out += (c.t[i][j] / 4.0) * kron(g[i], g[j]);
        }
    }
    return out;
}

OrthogonalMap adjoint_orbit(const ComplexMatrix& u) {
    if (u.rows() != 3 || u.cols() != 3) {
        throw NotUnitaryError("adjoint_orbit: expected a 3x3 matrix");
    }
    if (!u.is_unitary(1e-10)) {
        throw NotUnitaryError("adjoint_orbit: matrix is not unitary within 1e-10");
    }
    const auto& g = gell_mann_basis();
    const ComplexMatrix udag = u.adjoint();

    OrthogonalMap map;
    for (std::size_t i = 0; i < 8; ++i) {
        const ComplexMatrix rotated = u * g[i] * udag;
        for (std::size_t j = 0; j < 8; ++j) {
            map.o[i][j] = 0.5 * (rotated * g[j]).trace().real();
        }
    }
    return map;
}

}  // namespace telefid::schmidt
