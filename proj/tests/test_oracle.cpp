#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "ising/element.hpp"
#include "ising/oracle.hpp"

using namespace ising;

namespace {

AlgebraElement gen(int doubled) {
    return AlgebraElement::generator(SiteIndex::from_doubled(doubled));
}

Monomial mono(std::initializer_list<int> doubled) {
    std::vector<SiteIndex> sites;
    for (int d : doubled) sites.push_back(SiteIndex::from_doubled(d));
    return Monomial{std::move(sites)};
}

}  // namespace

TEST_CASE("integer generators represent as Pauli Z") {
    QubitWindow w(0, 0);
    Eigen::MatrixXcd z = rep_generator(SiteIndex::at_integer(0), w);
    REQUIRE(z.rows() == 2);
    CHECK(z(0, 0) == cplx{1.0, 0.0});
    CHECK(z(1, 1) == cplx{-1.0, 0.0});
    CHECK(z(0, 1) == cplx{0.0, 0.0});
}

TEST_CASE("half generators represent as X tensor X on the straddled qubits") {
    QubitWindow w(0, 1);
    Eigen::MatrixXcd xx = rep_generator(SiteIndex::at_half(0), w);
    REQUIRE(xx.rows() == 4);
    // X (x) X is the anti-diagonal permutation.
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(xx(r, c) == (r + c == 3 ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
}

TEST_CASE("matrix representation honours the exchange relations") {
    QubitWindow w(0, 1);
    Eigen::MatrixXcd z0 = rep_generator(SiteIndex::at_integer(0), w);
    Eigen::MatrixXcd xh = rep_generator(SiteIndex::at_half(0), w);
    Eigen::MatrixXcd z1 = rep_generator(SiteIndex::at_integer(1), w);
    CHECK(((z0 * xh) + (xh * z0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(((xh * z1) + (z1 * xh)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(((z0 * z1) - (z1 * z0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((z0 * z0 - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((xh * xh - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("monomial products match their representations exactly") {
    QubitWindow w(-1, 1);
    Monomial m1 = mono({-2, -1, 1});
    Monomial m2 = mono({-1, 0, 2});
    auto [sign, prod] = mul_monomials(m1, m2);
    Eigen::MatrixXcd lhs = rep_monomial(m1, w) * rep_monomial(m2, w);
    Eigen::MatrixXcd rhs = cplx(static_cast<double>(sign)) * rep_monomial(prod, w);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalized trace matches the symbolic trace") {
    QubitWindow w(-1, 1);
    CHECK(normalized_trace(rep_element(AlgebraElement::identity(), w)) ==
          cplx{1.0, 0.0});
    AlgebraElement x = AlgebraElement::identity(cplx{0.25, -0.5}) +
                       gen(0) * cplx{3.0, 0.0} +
                       AlgebraElement::from_monomial(mono({-1, 1}), cplx{0.0, 2.0});
    cplx t = normalized_trace(rep_element(x, w));
    CHECK(std::abs(t - x.trace()) < 1e-12);
}

TEST_CASE("windows cover supports and enforce the qubit cap") {
    AlgebraElement x = AlgebraElement::identity() +
                       AlgebraElement::from_monomial(mono({-2, 1}), 1.0);
    QubitWindow w = covering_window(x);
    CHECK(w.lo() == -1);
    CHECK(w.hi() == 1);
    CHECK_THROWS_AS(QubitWindow(0, 13), std::length_error);
    CHECK_THROWS_AS(QubitWindow(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(rep_element(gen(10), QubitWindow(0, 1)), std::invalid_argument);
    CHECK_THROWS_AS(rep_generator(SiteIndex::at_half(1), QubitWindow(0, 1)),
                    std::invalid_argument);
}

TEST_CASE("spectrum bounds and contraction predicate") {
    QubitWindow w(0, 0);
    AlgebraElement p = (AlgebraElement::identity() + gen(0)) * cplx{0.5};
    auto [lo, hi] = spectrum_bounds(p, w);
    CHECK(lo == doctest::Approx(0.0));
    CHECK(hi == doctest::Approx(1.0));
    CHECK(is_selfadjoint_contraction(p));
    CHECK_FALSE(is_selfadjoint_contraction(gen(0) * cplx{2.0}));
    // Non-self-adjoint input is rejected rather than silently symmetrized.
    CHECK_THROWS_AS(spectrum_bounds(AlgebraElement::from_monomial(mono({0, 1}), 1.0),
                                    covering_window(gen(1))),
                    std::invalid_argument);
}
