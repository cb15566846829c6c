#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "windex/centre.hpp"

using windex::CentreElement;
using windex::CentreModel;
using windex::cplx;
using windex::InversionStrategy;

TEST_CASE("laurent multiplication convolves exponents") {
    const auto a = CentreElement::laurent({{0, 1.0}, {1, 1.0}});    // 1 + W
    const auto b = CentreElement::laurent({{0, 1.0}, {-1, 1.0}});   // 1 + W^-1
    const auto p = a.mul(b);
    const auto expected = CentreElement::laurent({{-1, 1.0}, {0, 2.0}, {1, 1.0}});
    CHECK(p.approx_equal(expected, 0.0));
}

TEST_CASE("scalar and finite multiplication") {
    CHECK(CentreElement::scalar(2.0).mul(CentreElement::scalar(3.0)).values()[0] == cplx(6.0));
    const auto f = CentreElement::finite({1.0, 2.0}).mul(CentreElement::finite({3.0, 4.0}));
    CHECK(f.values()[0] == cplx(3.0));
    CHECK(f.values()[1] == cplx(8.0));
}

TEST_CASE("multiplication is commutative") {
    const auto a = CentreElement::laurent({{-2, {0.3, 0.1}}, {1, {0.0, -0.7}}});
    const auto b = CentreElement::laurent({{0, {1.0, 0.0}}, {3, {0.2, 0.2}}});
    CHECK(a.mul(b).approx_equal(b.mul(a), 0.0));
}

TEST_CASE("model mismatch is a typed error") {
    CHECK_THROWS_AS(CentreElement::scalar(1.0).mul(CentreElement::finite({1.0, 2.0})),
                    windex::ModelMismatch);
    CHECK_THROWS_AS(CentreElement::finite({1.0}).add(CentreElement::finite({1.0, 2.0})),
                    windex::ModelMismatch);
}

TEST_CASE("adjoint conjugates coefficients and negates exponents") {
    const auto a = CentreElement::laurent_monomial(1, cplx(0.0, 1.0));  // iW
    const auto adj = a.adjoint();
    CHECK(adj.coeffs().size() == 1);
    CHECK(adj.coeffs().at(-1) == cplx(0.0, -1.0));

    const auto s = CentreElement::scalar({2.0, 3.0}).adjoint();
    CHECK(s.values()[0] == cplx(2.0, -3.0));
}

TEST_CASE("eta of the Heisenberg family is self-adjoint") {
    const double mu = 0.37;
    const auto eta =
        CentreElement::laurent({{-1, mu / 3}, {0, mu / 3}, {1, mu / 3}});
    CHECK(eta.is_self_adjoint());
    CHECK(eta.adjoint().approx_equal(eta, 0.0));
}

TEST_CASE("adjoint is an involution and upper-norm isometry") {
    const auto a = CentreElement::laurent({{-2, {0.3, 0.4}}, {0, {1.0, -1.0}}, {3, {0.0, 2.0}}});
    CHECK(a.adjoint().adjoint().approx_equal(a, 0.0));
    CHECK(a.adjoint().sup_norm_bounds().second == doctest::Approx(a.sup_norm_bounds().second));
}

TEST_CASE("exact inversion") {
    CHECK(CentreElement::scalar(2.0)
              .invert(InversionStrategy::Exact)
              .approx_equal(CentreElement::scalar(0.5), 0.0));
    CHECK(CentreElement::laurent_monomial(1)
              .invert(InversionStrategy::Exact)
              .approx_equal(CentreElement::laurent_monomial(-1), 0.0));
    const auto c = CentreElement::laurent_monomial(-2, {0.5, 0.25});
    CHECK(c.invert(InversionStrategy::Exact)
              .invert(InversionStrategy::Exact)
              .approx_equal(c, 1e-12));
    CHECK_THROWS_AS(CentreElement::scalar(0.0).invert(InversionStrategy::Exact),
                    windex::NotInvertible);
    CHECK_THROWS_AS(CentreElement::finite({1.0, 0.0}).invert(InversionStrategy::Exact),
                    windex::NotInvertible);
}

TEST_CASE("Neumann inversion of 1 - 0.5 W") {
    const auto c = CentreElement::laurent({{0, 1.0}, {1, -0.5}});
    const auto inv = c.invert(InversionStrategy::Neumann, 1e-10);
    const double residual =
        c.mul(inv).sub(CentreElement::one(CentreModel::CircleLaurent)).sup_norm_bounds().second;
    CHECK(residual < 1e-10);
    for (int p = 0; p <= 10; ++p)
        CHECK(std::abs(inv.coeffs().at(p) - std::pow(0.5, p)) < 1e-12);
    const int top = inv.coeffs().rbegin()->first;
    CHECK(top >= 30);
    CHECK(top <= 40);
    CHECK_THROWS_AS(CentreElement::laurent({{0, 1.0}, {1, -1.5}})
                        .invert(InversionStrategy::Neumann, 1e-10),
                    windex::NotInvertible);
}

TEST_CASE("GridFFT inversion of a nonvanishing Laurent symbol") {
    const auto c = CentreElement::laurent({{-1, 0.25}, {0, 2.0}, {1, {0.0, 0.5}}});
    const auto inv = c.invert(InversionStrategy::GridFFT, 1e-10);
    const double residual =
        c.mul(inv).sub(CentreElement::one(CentreModel::CircleLaurent)).sup_norm_bounds().second;
    CHECK(residual < 1e-9);
    CHECK_THROWS_AS(CentreElement::laurent({{0, 1.0}, {1, -1.0}})
                        .invert(InversionStrategy::GridFFT, 1e-10),
                    windex::ComputationError);
}

TEST_CASE("sup norm bounds") {
    const auto [lw, uw] = CentreElement::laurent_monomial(1).sup_norm_bounds();
    CHECK(lw == doctest::Approx(1.0));
    CHECK(uw == doctest::Approx(1.0));

    const auto [ls, us] = CentreElement::scalar(-4.0).sup_norm_bounds();
    CHECK(ls == doctest::Approx(4.0));
    CHECK(us == doctest::Approx(4.0));

    const auto [l1, u1] = CentreElement::laurent({{0, 1.0}, {1, 1.0}}).sup_norm_bounds();
    CHECK(std::abs(l1 - 2.0) < 1e-4);
    CHECK(u1 == doctest::Approx(2.0));
    CHECK(l1 <= u1);
}

TEST_CASE("circle sampling round trip") {
    const auto c = CentreElement::laurent(
        {{-3, {0.1, -0.2}}, {-1, {0.0, 0.5}}, {0, 1.0}, {2, {0.7, 0.1}}, {3, {-0.4, 0.0}}});
    const int b = c.support_radius();
    const int n = 4 * b + 2;  // >= 4B+1 samples
    const auto back = CentreElement::from_circle_samples(c.sample_circle(n));
    CHECK(back.sub(c).sup_norm_bounds().second < 1e-10);
}

TEST_CASE("pruning drops explicit zeros") {
    const auto c = CentreElement::laurent({{0, 1.0}, {5, 1e-16}});
    CHECK(c.coeffs().size() == 1);
    CHECK(c.coeffs().count(5) == 0);
}
