#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ellw2/rng.hpp"
#include "ellw2/symmat.hpp"

using namespace ellw2;

namespace {

SymMatrix random_symmetric(std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> e(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const double v = 2.0 * rng.next_unit() - 1.0;
            e[i * m + j] = v;
            e[j * m + i] = v;
        }
    }
    return SymMatrix(m, std::move(e));
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
    double mx = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) mx = std::max(mx, std::abs(a(i, j) - b(i, j)));
    return mx;
}

SymMatrix reconstruct(const SpectralDecomposition& d) {
    return detail::congruence_diag(d.eigenvectors, d.eigenvalues, d.dim);
}

}  // namespace

TEST_CASE("validate_symmetric accepts and symmetrizes", "[symmat]") {
    const auto id = validate_symmetric({{1, 0}, {0, 1}});
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);

    const auto averaged = validate_symmetric({{1, 2 + 1e-12}, {2, 1}});
    CHECK(averaged(0, 1) == averaged(1, 0));
    CHECK(averaged(0, 1) == Catch::Approx(2.0).margin(1e-12));

    CHECK_THROWS_AS(validate_symmetric({{1, 5}, {2, 1}}), AsymmetricInput);
    CHECK_THROWS_AS(validate_symmetric({{1, 2, 3}, {2, 1}}), NotSquare);
    CHECK_THROWS_AS(validate_symmetric({}), NotSquare);
    CHECK_THROWS_AS(validate_symmetric({{1.0, 0.0}, {0.0, std::nan("")}}), NonFinite);
}

TEST_CASE("eigh on small hand cases", "[symmat]") {
    SECTION("already diagonal") {
        const auto d = eigh(SymMatrix::diagonal({3, 1}));
        CHECK(d.eigenvalues == std::vector<double>{3.0, 1.0});
        CHECK(d.vec(0, 0) == 1.0);
        CHECK(d.vec(1, 1) == 1.0);
        CHECK(d.vec(0, 1) == 0.0);
    }
    SECTION("2x2 coupled: characteristic polynomial roots 3 and 1") {
        const auto d = eigh(validate_symmetric({{2, 1}, {1, 2}}));
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CHECK(d.eigenvalues[0] == Catch::Approx(3.0).margin(1e-12));
        CHECK(d.eigenvalues[1] == Catch::Approx(1.0).margin(1e-12));
        CHECK(d.vec(0, 0) == Catch::Approx(inv_sqrt2).margin(1e-12));
        CHECK(d.vec(1, 0) == Catch::Approx(inv_sqrt2).margin(1e-12));
        CHECK(d.vec(0, 1) == Catch::Approx(inv_sqrt2).margin(1e-12));
        CHECK(d.vec(1, 1) == Catch::Approx(-inv_sqrt2).margin(1e-12));
    }
    SECTION("identity keeps the sign convention") {
        const auto d = eigh(SymMatrix::identity(4));
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(d.eigenvalues[i] == 1.0);
            CHECK(d.vec(i, i) == 1.0);
        }
    }
}

TEST_CASE("is_positive_definite", "[symmat]") {
    CHECK(is_positive_definite(SymMatrix::identity(3)));
    CHECK_FALSE(is_positive_definite(validate_symmetric({{1, 1}, {1, 1}})));
    CHECK(is_positive_definite(validate_symmetric({{2, 1}, {1, 2}})));
    CHECK_FALSE(is_positive_definite(SymMatrix::diagonal({1.0, -0.5})));
}

TEST_CASE("matrix_power_psd hand cases", "[symmat]") {
    SECTION("diagonal square root") {
        const auto r = matrix_power_psd(SymMatrix::diagonal({4, 9}), 0.5);
        CHECK(r(0, 0) == Catch::Approx(2.0).margin(1e-14));
        CHECK(r(1, 1) == Catch::Approx(3.0).margin(1e-14));
        CHECK(r(0, 1) == 0.0);
    }
    SECTION("identity is a fixed point for any exponent") {
        for (double q : {0.1, 0.5, 1.0}) {
            const auto r = matrix_power_psd(SymMatrix::identity(3), q);
            CHECK(max_abs_diff(r, SymMatrix::identity(3)) < 1e-14);
        }
    }
    SECTION("coupled 2x2 square root, eigenvalues 1 and 3") {
        const auto r = matrix_power_psd(validate_symmetric({{2, 1}, {1, 2}}), 0.5);
        const double on = (std::sqrt(3.0) + 1.0) / 2.0;
        const double off = (std::sqrt(3.0) - 1.0) / 2.0;
        CHECK(r(0, 0) == Catch::Approx(on).margin(1e-12));
        CHECK(r(0, 1) == Catch::Approx(off).margin(1e-12));
        CHECK(r(1, 0) == r(0, 1));
        // squaring reproduces the input
        const auto sq = detail::mat_mul(r.entries(), r.entries(), 2);
        CHECK(sq[0] == Catch::Approx(2.0).margin(1e-10));
        CHECK(sq[1] == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("rejects indefinite input and bad exponents") {
        CHECK_THROWS_AS(matrix_power_psd(SymMatrix::diagonal({1.0, -1.0}), 0.5), NotPSD);
        CHECK_THROWS_AS(matrix_power_psd(SymMatrix::identity(2), 0.0), BadExponent);
        CHECK_THROWS_AS(matrix_power_psd(SymMatrix::identity(2), 1.5), BadExponent);
    }
}

TEST_CASE("trace_power hand cases", "[symmat]") {
    CHECK(trace_power(SymMatrix::diagonal({4, 9}), 0.5) == Catch::Approx(5.0).margin(1e-13));
    CHECK(trace_power(SymMatrix::identity(3), 0.25) == Catch::Approx(3.0).margin(1e-13));
    CHECK(trace_power(validate_symmetric({{2, 1}, {1, 2}}), 0.5) ==
          Catch::Approx(1.0 + std::sqrt(3.0)).margin(1e-12));
    CHECK_THROWS_AS(trace_power(SymMatrix::diagonal({-1.0}), 0.5), NotPSD);
}

TEST_CASE("eigh reconstruction and orthogonality over a random corpus", "[symmat][property]") {
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 1 + trial % 8;
        const auto a = random_symmetric(m, derive_seed(101, trial));
        const auto d = eigh(a);

        const double rec_err = max_abs_diff(reconstruct(d), a);
        REQUIRE(rec_err <= 1e-9 * (1.0 + a.max_abs()));

        double orth_err = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                double dot = 0.0;
                for (std::size_t k = 0; k < m; ++k) dot += d.vec(k, i) * d.vec(k, j);
                orth_err = std::max(orth_err, std::abs(dot - (i == j ? 1.0 : 0.0)));
            }
        }
        REQUIRE(orth_err <= 1e-10);

        for (std::size_t i = 0; i + 1 < m; ++i) REQUIRE(d.eigenvalues[i] >= d.eigenvalues[i + 1]);
    }
}

TEST_CASE("power composition and trace consistency on random PD matrices", "[symmat][property]") {
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 1 + trial % 8;
        auto base = random_symmetric(m, derive_seed(202, trial));
        // shift to make it comfortably PD
        std::vector<double> shifted = base.entries();
        for (std::size_t i = 0; i < m; ++i) shifted[i * m + i] += static_cast<double>(m) + 1.0;
        const SymMatrix a(m, std::move(shifted));
        REQUIRE(is_positive_definite(a));

        const auto half = matrix_power_psd(matrix_power_psd(a, 0.5), 1.0);
        const auto sq = detail::mat_mul(half.entries(), half.entries(), m);
        double err = 0.0;
        for (std::size_t i = 0; i < m * m; ++i) err = std::max(err, std::abs(sq[i] - a.entries()[i]));
        REQUIRE(err <= 1e-8 * (1.0 + a.max_abs()));

        double diag_sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) diag_sum += a(i, i);
        REQUIRE(trace_power(a, 1.0) == Catch::Approx(diag_sum).epsilon(1e-12));
    }
}

TEST_CASE("eigh is bitwise deterministic", "[symmat][property]") {
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + trial % 7;
        const auto a = random_symmetric(m, derive_seed(303, trial));
        const auto d1 = eigh(a);
        const auto d2 = eigh(a);
        REQUIRE(d1.eigenvalues == d2.eigenvalues);
        REQUIRE(d1.eigenvectors == d2.eigenvectors);
    }
}
