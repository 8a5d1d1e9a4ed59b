#include <doctest.h>

#include <cmath>

#include "telefid/errors.hpp"
#include "telefid/gell_mann.hpp"
#include "telefid/rng.hpp"
#include "telefid/schmidt.hpp"
#include "telefid/states.hpp"

#include "test_support.hpp"

using telefid::linalg::Complex;
using telefid::linalg::ComplexMatrix;
using telefid::linalg::gell_mann_basis;
using telefid::linalg::kron;
using telefid::linalg::max_abs_diff;
using telefid::schmidt::adjoint_orbit;
using telefid::schmidt::decompose;
using telefid::schmidt::reconstruct;
using test_support::random_hermitian;

TEST_CASE("decompose: maximally mixed state has no components") {
    ComplexMatrix mixed = ComplexMatrix::identity(9);
    mixed *= 1.0 / 9.0;
    const auto c = decompose(mixed);
    CHECK(c.unit_weight == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(std::abs(c.r[i]) < 1e-15);
        CHECK(std::abs(c.s[i]) < 1e-15);
        for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(c.t[i][j]) < 1e-15);
    }
}

TEST_CASE("decompose: one-sided component of the bound-entangled family") {
    for (int i = 0; i <= 100; ++i) {
        const double a = static_cast<double>(i) / 100.0;
        const auto c = decompose(telefid::states::horodecki_state(a));
        const double want = (2.0 / std::sqrt(3.0)) * (a - 1.0) / (8.0 * a + 1.0);
        CHECK(std::abs(c.r[7] - want) < 1e-12);
        for (std::size_t q = 0; q < 7; ++q) CHECK(std::abs(c.r[q]) < 1e-12);
    }
    // a = 1: the formula vanishes
    CHECK(std::abs(decompose(telefid::states::horodecki_state(1.0)).r[7]) < 1e-15);
}

TEST_CASE("round trip on arbitrary hermitian operators") {
    auto stream = telefid::rng::make_stream({21, 0});
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix h = random_hermitian(9, stream);
        CHECK(max_abs_diff(reconstruct(decompose(h)), h) < 1e-12);
    }
}

TEST_CASE("reconstruct: zero components give the maximally mixed state") {
    telefid::schmidt::SchmidtComponents zero;
    ComplexMatrix mixed = ComplexMatrix::identity(9);
    mixed *= 1.0 / 9.0;
    CHECK(max_abs_diff(reconstruct(zero), mixed) < 1e-15);
}

TEST_CASE("round trip reproduces the family member at its flagship parameter") {
    const ComplexMatrix rho = telefid::states::horodecki_state(std::sqrt(3.0) / 2.0);
    CHECK(max_abs_diff(reconstruct(decompose(rho)), rho) < 1e-14);
}

TEST_CASE("decompose rejects malformed input") {
    CHECK_THROWS_AS(decompose(ComplexMatrix::identity(3)), std::invalid_argument);

    auto stream = telefid::rng::make_stream({22, 0});
    ComplexMatrix h = random_hermitian(9, stream);
    h(0, 1) += Complex(0.0, 1e-3);  // breaks hermiticity, components go complex
    CHECK_THROWS_AS(decompose(h), telefid::NonHermitianInputError);
}

TEST_CASE("adjoint orbit: identity, orthogonality, conjugation oracle") {
    const auto id_orbit = adjoint_orbit(ComplexMatrix::identity(3));
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(std::abs(id_orbit.o[i][j] - (i == j ? 1.0 : 0.0)) < 1e-14);

    auto stream = telefid::rng::make_stream({23, 0});
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    const auto& basis = gell_mann_basis();
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix u = telefid::states::sample_haar_unitary(3, stream);
        const auto orbit = adjoint_orbit(u);

        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) {
                double dot = 0.0;
                for (std::size_t k = 0; k < 8; ++k) dot += orbit.o[i][k] * orbit.o[j][k];
                CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-10);
            }

        // U (x.g) U^dag must equal (x o).g
        std::array<double, 8> x{};
        for (auto& v : x) v = uniform(stream);
        ComplexMatrix lhs(3, 3);
        ComplexMatrix rhs(3, 3);
        for (std::size_t i = 0; i < 8; ++i) {
            lhs += x[i] * basis[i];
            double rotated = 0.0;
            for (std::size_t k = 0; k < 8; ++k) rotated += x[k] * orbit.o[k][i];
            rhs += rotated * basis[i];
        }
        lhs = u * lhs * u.adjoint();
        CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("adjoint orbit rejects non-unitary input") {
    ComplexMatrix near = ComplexMatrix::identity(3);
    near(0, 0) = 1.0 + 1e-6;
    CHECK_THROWS_AS(adjoint_orbit(near), telefid::NotUnitaryError);
}

TEST_CASE("bob-side rotation acts on the s components through the orbit") {
    auto stream = telefid::rng::make_stream({24, 0});
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = telefid::states::random_density_matrix(9, stream);
        const ComplexMatrix u = telefid::states::sample_haar_unitary(3, stream);
        const ComplexMatrix lifted = kron(ComplexMatrix::identity(3), u);
        const auto rotated = decompose(lifted * rho * lifted.adjoint());
        const auto base = decompose(rho);
        const auto orbit = adjoint_orbit(u);
        for (std::size_t j = 0; j < 8; ++j) {
            double want = 0.0;
            for (std::size_t i = 0; i < 8; ++i) want += base.s[i] * orbit.o[i][j];
            CHECK(std::abs(rotated.s[j] - want) < 1e-10);
        }
    }
}

TEST_CASE("factor swap moves one-sided components to the other side") {
    auto stream = telefid::rng::make_stream({25, 0});
    const auto& basis = gell_mann_basis();
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix p = random_hermitian(9, stream);
        const ComplexMatrix swapped = telefid::states::swap_conjugate(p);
        for (std::size_t i = 0; i < 8; ++i) {
            const ComplexMatrix alice = kron(basis[i], ComplexMatrix::identity(3));
            const ComplexMatrix bob = kron(ComplexMatrix::identity(3), basis[i]);
            CHECK(std::abs((alice * swapped).trace() - (bob * p).trace()) < 1e-12);
        }
    }
}
