#include <doctest.h>

#include <cmath>

#include <random>

#include "ssrent/entanglement.hpp"
#include "ssrent/hilbert.hpp"
#include "test_util.hpp"

using namespace ssrent;
using testutil::all_labels;
using testutil::random_state;

namespace {

PureState split_particle() {
    PureState psi;
    psi.add_term({{1, 0}, {0, 1}}, {M_SQRT1_2, 0.0});
    psi.add_term({{0, 1}, {1, 0}}, {M_SQRT1_2, 0.0});
    return psi;
}

}  // namespace

TEST_CASE("basis vectors order by alice occupations, then bob") {
    OccupationBasisVector lo{{0, 1}, {1, 0}};
    OccupationBasisVector hi{{1, 0}, {0, 1}};
    CHECK(lo < hi);
    CHECK(OccupationBasisVector{{0, 1}, {0, 1}} < lo);
    CHECK(lo == OccupationBasisVector{{0, 1}, {1, 0}});
    std::vector<OccupationBasisVector> v{hi, lo};
    std::sort(v.begin(), v.end());
    CHECK(v.front() == lo);
}

TEST_CASE("add_term accumulates duplicates and rejects malformed labels") {
    PureState psi;
    psi.add_term({{1}, {0}}, {0.5, 0.0});
    psi.add_term({{1}, {0}}, {0.5, 0.0});
    CHECK(psi.terms().size() == 1);
    CHECK(psi.norm2() == doctest::Approx(1.0).epsilon(1e-12));

    psi.add_term({{0}, {1}}, {0.25, 0.0});
    psi.add_term({{0}, {1}}, {-0.25, 0.0});
    CHECK(psi.terms().size() == 1);  // exact cancellation prunes the term

    CHECK_THROWS_AS(psi.add_term({{-1}, {0}}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(psi.add_term({{1, 0}, {0}}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("normalized rescales and rejects the zero state") {
    PureState psi;
    psi.add_term({{1}, {0}}, {3.0, 0.0});
    psi.add_term({{0}, {1}}, {0.0, 4.0});
    CHECK(psi.normalized().norm2() == doctest::Approx(1.0).epsilon(1e-12));

    PureState zero;
    CHECK_THROWS_WITH_AS(zero.normalized(), "zero state", std::invalid_argument);
}

TEST_CASE("tensor product concatenates modes per party") {
    PureState one_pair;
    one_pair.add_term({{0}, {1}}, {1.0, 0.0});
    PureState two = tensor_pure(one_pair, one_pair);
    REQUIRE(two.terms().size() == 1);
    CHECK(two.terms().begin()->first == OccupationBasisVector{{0, 0}, {1, 1}});

    PureState split = split_particle();
    PureState prod = tensor_pure(split, split);
    CHECK(prod.terms().size() == 4);
    CHECK(prod.norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tensor product multiplies squared norms") {
    std::mt19937_64 rng(2024);
    auto labels = all_labels(2, 2, 1);
    for (int trial = 0; trial < 20; ++trial) {
        PureState a = random_state(rng, labels, 3);
        PureState b = random_state(rng, labels, 3);
        CHECK(tensor_pure(a, b).norm2() == doctest::Approx(a.norm2() * b.norm2()).epsilon(1e-12));
    }
}

TEST_CASE("tensor product associates") {
    std::mt19937_64 rng(7);
    auto labels = all_labels(1, 2, 2);
    PureState a = random_state(rng, labels, 2);
    PureState b = random_state(rng, labels, 3);
    PureState c = random_state(rng, labels, 2);
    PureState lhs = tensor_pure(tensor_pure(a, b), c);
    PureState rhs = tensor_pure(a, tensor_pure(b, c));
    REQUIRE(lhs.terms().size() == rhs.terms().size());
    auto it = rhs.terms().begin();
    for (const auto& [label, amp] : lhs.terms()) {
        CHECK(label == it->first);
        CHECK(std::abs(amp - it->second) < 1e-12);
        ++it;
    }
    CHECK(entanglement_entropy(lhs.normalized()) ==
          doctest::Approx(entanglement_entropy(rhs.normalized())).epsilon(1e-10));
}

TEST_CASE("to_density builds the normalized projector") {
    PureState basis_vec;
    basis_vec.add_term({{1}, {0}}, {2.0, 0.0});
    DensityOperator rho = to_density(basis_vec);
    REQUIRE(rho.dim() == 1);
    CHECK(std::abs(rho.matrix(0, 0) - Complex(1.0, 0.0)) < 1e-12);

    DensityOperator split_rho = to_density(split_particle());
    REQUIRE(split_rho.dim() == 2);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            CHECK(std::abs(split_rho.matrix(i, j) - Complex(0.5, 0.0)) < 1e-12);
        }
    }

    // Normalization happens inside, so scaling the input changes nothing.
    const PureState plain = split_particle();
    PureState scaled;
    for (const auto& [label, amp] : plain.terms()) {
        scaled.add_term(label, amp * Complex(0.0, 5.0));
    }
    CHECK(max_abs_diff(to_density(scaled).matrix, split_rho.matrix) < 1e-12);

    PureState zero;
    CHECK_THROWS_WITH_AS(to_density(zero), "zero state", std::invalid_argument);
}

TEST_CASE("to_density output passes validation") {
    std::mt19937_64 rng(99);
    auto labels = all_labels(2, 1, 1);
    for (int trial = 0; trial < 5; ++trial) {
        DensityOperator rho = to_density(random_state(rng, labels, 4));
        CHECK_NOTHROW(rho.validate());
    }
}

TEST_CASE("partial trace reduces product and entangled states correctly") {
    PureState local;
    local.add_term({{0}, {1}}, {1.0, 0.0});
    DensityOperator reduced = partial_trace(to_density(local), Party::alice);
    REQUIRE(reduced.dim() == 1);
    CHECK(reduced.basis.front().alice_occ == std::vector<int>{0});
    CHECK(reduced.basis.front().bob_occ.empty());
    CHECK(std::abs(reduced.matrix(0, 0) - Complex(1.0, 0.0)) < 1e-12);

    PureState bell;
    bell.add_term({{0, 1}, {1, 0}}, {M_SQRT1_2, 0.0});
    bell.add_term({{1, 0}, {0, 1}}, {M_SQRT1_2, 0.0});
    DensityOperator alice_side = partial_trace(to_density(bell), Party::alice);
    REQUIRE(alice_side.dim() == 2);
    CHECK(std::abs(alice_side.matrix(0, 0) - Complex(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(alice_side.matrix(1, 1) - Complex(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(alice_side.matrix(0, 1)) < 1e-12);
}

TEST_CASE("partial trace preserves trace and composes to the full trace") {
    std::mt19937_64 rng(31337);
    DensityOperator rho = testutil::random_density(rng, all_labels(2, 2, 1));
    DensityOperator ra = partial_trace(rho, Party::alice);
    DensityOperator rb = partial_trace(rho, Party::bob);
    CHECK(ra.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rb.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    // ra carries only alice occupations; tracing those out leaves the scalar.
    DensityOperator scalar = partial_trace(ra, Party::bob);
    REQUIRE(scalar.dim() == 1);
    CHECK(std::abs(scalar.matrix(0, 0) - Complex(rho.trace_real(), 0.0)) < 1e-12);
}

TEST_CASE("hermitian eigenvalues come back sorted and consistent") {
    Matrix half = Matrix::Identity(2, 2) * 0.5;
    auto vals = hermitian_eigenvalues(half);
    REQUIRE(vals.size() == 2);
    CHECK(vals[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(vals[1] == doctest::Approx(0.5).epsilon(1e-12));

    Matrix diag = Matrix::Zero(3, 3);
    diag(0, 0) = 0.25;
    diag(1, 1) = 0.75;
    auto dvals = hermitian_eigenvalues(diag);
    CHECK(dvals[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(dvals[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(dvals[2]) < 1e-12);

    Matrix skew = Matrix::Zero(2, 2);
    skew(0, 1) = Complex(1.0, 0.0);
    CHECK_THROWS_AS(hermitian_eigenvalues(skew), std::invalid_argument);
}

TEST_CASE("eigensystem reproduces the matrix action") {
    std::mt19937_64 rng(4242);
    Matrix a(6, 6);
    for (Eigen::Index i = 0; i < 6; ++i) {
        for (Eigen::Index j = 0; j < 6; ++j) a(i, j) = testutil::random_amplitude(rng);
    }
    Matrix h = (a + a.adjoint()) * 0.5;
    EigenSystem es = hermitian_eigensystem(h);
    double val_sum = 0.0;
    for (Eigen::Index k = 0; k < 6; ++k) {
        val_sum += es.values(k);
        CHECK((h * es.vectors.col(k) - es.values(k) * es.vectors.col(k)).cwiseAbs().maxCoeff() < 1e-9);
    }
    CHECK(val_sum == doctest::Approx(h.trace().real()).epsilon(1e-10));
}

TEST_CASE("projector spectra are zeros and ones") {
    PureState bell;
    bell.add_term({{0}, {1}}, {M_SQRT1_2, 0.0});
    bell.add_term({{1}, {0}}, {M_SQRT1_2, 0.0});
    for (double v : hermitian_eigenvalues(to_density(bell).matrix)) {
        CHECK(std::min(std::abs(v), std::abs(v - 1.0)) < 1e-9);
    }
}

TEST_CASE("embed places a block into a superset basis") {
    PureState local;
    local.add_term({{1}, {0}}, {1.0, 0.0});
    DensityOperator rho = to_density(local);
    auto superset = all_labels(1, 1, 1);
    DensityOperator big = embed(rho, superset);
    REQUIRE(big.dim() == 4);
    CHECK(big.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<OccupationBasisVector> missing{{{2}, {2}}};
    CHECK_THROWS_AS(embed(rho, missing), std::invalid_argument);
}
