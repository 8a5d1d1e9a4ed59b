#include "telefid/gell_mann.hpp"

#include <cmath>

namespace telefid::linalg {

namespace {

std::array<ComplexMatrix, 8> build_basis() {
    const Complex i(0.0, 1.0);
    const double q = 1.0 / std::sqrt(3.0);
    return {
        ComplexMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}},
        ComplexMatrix{{0, -i, 0}, {i, 0, 0}, {0, 0, 0}},
        ComplexMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}},
        ComplexMatrix{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}},
        ComplexMatrix{{0, 0, -i}, {0, 0, 0}, {i, 0, 0}},
        ComplexMatrix{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}},
        ComplexMatrix{{0, 0, 0}, {0, 0, -i}, {0, i, 0}},
        ComplexMatrix{{q, 0, 0}, {0, q, 0}, {0, 0, -2.0 * q}},
    };
}

}  // namespace

const std::array<ComplexMatrix, 8>& gell_mann_basis() {
    static const std::array<ComplexMatrix, 8> basis = build_basis();
    return basis;
}

}  // namespace telefid::linalg
