#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "windex/winding.hpp"

using namespace windex;

namespace {

AlgebraContext kronecker(double mu) {
    return AlgebraContext(Cocycle::Trivial, CentreElement::scalar(mu));
}

AlgebraContext torus_third(double mu) {
    return AlgebraContext(Cocycle::Torus, CentreElement::scalar(mu), Angle(Rational(1, 3)));
}

CentreElement heisenberg_eta(double mu) {
    return CentreElement::laurent({{-1, mu / 3}, {0, mu / 3}, {1, mu / 3}});
}

AlgebraContext heisenberg(double mu) {
    return AlgebraContext(Cocycle::Heisenberg, heisenberg_eta(mu));
}

// A small random x with ||x||_1 <= radius; for CircleLaurent centres the
// support stays on the U-line so Neumann powers never pick up cocycle
// W-powers and series costs stay linear in the iteration count.
TwistedElement small_ball(const AlgebraContext& ctx, std::mt19937_64& rng, double radius) {
    std::uniform_int_distribution<int> deg(-1, 1);
    const bool uline = ctx.centre_model() == CentreModel::CircleLaurent;
    auto x = TwistedElement::zero(ctx);
    for (int i = 0; i < 4; ++i) {
        const int n = uline ? 0 : deg(rng);
        const auto c = random_centre(ctx.centre_model(), ctx.points(), rng, 1);
        x = x.add(TwistedElement::monomial(ctx, n, deg(rng), c));
    }
    return x.scale(radius / std::max(x.l1_norm(), 1e-9));
}

// Factors of a random invertible element: a monomial times (1 + small
// ball), each factor invertible by its own strategy.
std::vector<TwistedElement> random_invertible_factors(const AlgebraContext& ctx,
                                                      std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(-2, 2);
    const auto mono = TwistedElement::monomial(ctx, deg(rng), deg(rng), cplx(1.3, -0.2));
    const auto ball = small_ball(ctx, rng, 0.35);
    return {mono, TwistedElement::one(ctx).add(ball)};
}

std::vector<TwistedElement> adjoint_factors(const std::vector<TwistedElement>& factors) {
    std::vector<TwistedElement> out;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) out.push_back(it->adjoint());
    return out;
}

}  // namespace

TEST_CASE("golden windings of the generators") {
    for (const double mu : {0.37, 2.0, -1.5}) {
        for (const auto& ctx : {kronecker(mu), torus_third(mu)}) {
            const auto u = TwistedElement::monomial(ctx, 0, 1);
            const auto v = TwistedElement::monomial(ctx, 1, 0);
            CHECK(wind(u).value.approx_equal(CentreElement::scalar(-1.0), 1e-12));
            CHECK(wind(v).value.approx_equal(CentreElement::scalar(-mu), 1e-12));
        }
        const auto hctx = heisenberg(mu);
        const auto v = TwistedElement::monomial(hctx, 1, 0);
        CHECK(wind(v).value.approx_equal(heisenberg_eta(mu).scale(-1.0), 1e-12));
    }
}

TEST_CASE("winding vanishes on central invertibles") {
    const auto ctx = heisenberg(0.37);
    const auto z = TwistedElement::central(ctx, CentreElement::laurent_monomial(2, 3.0));
    const auto r = wind(z);
    CHECK(r.value.sup_norm_bounds().second <= 1e-14);
}

TEST_CASE("index is minus wind with the Heisenberg closed form") {
    const auto ctx = heisenberg(0.37);
    for (int n = -3; n <= 3; ++n)
        for (int m = -3; m <= 3; ++m)
            for (int p : {-2, 0, 1}) {
                if (n == 0 && m == 0 && p == 0) continue;
                const auto a = TwistedElement::monomial(
                    ctx, n, m, CentreElement::laurent_monomial(p));
                const auto expected = heisenberg_eta(0.37)
                                          .scale(static_cast<double>(n))
                                          .add(CentreElement::laurent_monomial(0, m));
                CHECK(toeplitz_index(a).value.approx_equal(expected, 1e-12));
            }
}

TEST_CASE("Kronecker index of the V generator is mu") {
    const auto ctx = kronecker(0.37);
    const auto v = TwistedElement::monomial(ctx, 1, 0);
    CHECK(toeplitz_index(v).value.approx_equal(CentreElement::scalar(0.37), 1e-12));
    CHECK(toeplitz_index(TwistedElement::one(ctx)).value.sup_norm_bounds().second <= 1e-14);
}

TEST_CASE("wind is a homomorphism") {
    for (const auto& ctx : {torus_third(0.37), heisenberg(-1.5)}) {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 25; ++i) {
            const auto fa = random_invertible_factors(ctx, rng);
            const auto fb = random_invertible_factors(ctx, rng);
            std::vector<TwistedElement> fab = fa;
            fab.insert(fab.end(), fb.begin(), fb.end());
            const auto lhs = wind_factored(fab, 1e-10).value;
            const auto rhs =
                wind_factored(fa, 1e-10).value.add(wind_factored(fb, 1e-10).value);
            CHECK(lhs.sub(rhs).upper_norm() <= 1e-9);
        }
    }
}

TEST_CASE("wind is locally constant") {
    const auto ctx = heisenberg(0.37);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 25; ++i) {
        const auto a = TwistedElement::monomial(ctx, 1, -1, 2.0);
        const auto x = small_ball(ctx, rng, 0.35);
        const auto perturbed = a.mul(TwistedElement::one(ctx).add(x));
        const auto lhs = wind_factored({a, TwistedElement::one(ctx).add(x)}, 1e-10).value;
        const auto rhs = wind(a).value;
        CHECK(lhs.sub(rhs).upper_norm() <= 1e-9);
        CHECK(wind(TwistedElement::one(ctx).add(x), TwistedStrategy::Neumann, 1e-10)
                  .value.sup_norm_bounds()
                  .second <= 1e-9);
        (void)perturbed;
    }
}

TEST_CASE("wind is antisymmetric under adjoint") {
    for (const auto& ctx : {torus_third(2.0), heisenberg(0.8)}) {
        std::mt19937_64 rng(15);
        for (int i = 0; i < 20; ++i) {
            const auto fa = random_invertible_factors(ctx, rng);
            const auto w = wind_factored(fa, 1e-10).value;
            const auto wstar = wind_factored(adjoint_factors(fa), 1e-10).value;
            CHECK(wstar.add(w).upper_norm() <= 1e-9);
        }
    }
}

TEST_CASE("winding results are certified") {
    const auto ctx = kronecker(0.37);
    const auto u = TwistedElement::monomial(ctx, 0, 1);
    const auto r = wind(u);
    CHECK(r.strategy_used == TwistedStrategy::Monomial);
    CHECK(r.inversion_residual <= 1e-12);
    CHECK(r.value.is_self_adjoint(1e-9));

    CHECK_THROWS_AS(wind(TwistedElement::zero(ctx)), NotInvertible);
    CHECK_THROWS_AS(wind(TwistedElement::monomial(ctx, 0, 1, 2.0)
                             .add(TwistedElement::monomial(ctx, 1, 0, 2.0))),
                    NotInvertible);
}

TEST_CASE("morphisms commute with trace and flow") {
    const auto eta = CentreElement::finite({0.25, 0.75, -0.5, 1.0});
    const auto ctx = AlgebraContext(Cocycle::Trivial, eta);
    std::mt19937_64 rng(21);
    for (int x0 = 0; x0 < 4; ++x0) {
        const auto m = Morphism::evaluation_at(x0);
        const auto a = random_element(ctx, rng);
        CHECK(m.apply(a).trace().approx_equal(m.apply_centre(a.trace()), 1e-12));
        CHECK(m.apply(a.flow(0.3)).approx_equal(m.apply(a).flow(0.3), 1e-10));
    }

    const auto hctx = heisenberg(0.37);
    const auto q = Morphism::heisenberg_quotient();
    const auto a = random_element(hctx, rng);
    CHECK(q.apply(a).trace().approx_equal(q.apply_centre(a.trace()), 1e-12));
    CHECK(q.apply_centre(heisenberg_eta(0.37)).approx_equal(CentreElement::scalar(0.37), 1e-12));
}

TEST_CASE("evaluation sends the bundle generator to the torus generator") {
    const auto eta = CentreElement::finite({0.25, 0.75});
    const auto ctx = AlgebraContext(Cocycle::Torus, eta, Angle(Rational(1, 3)));
    const auto v = TwistedElement::monomial(ctx, 1, 0);
    const auto image = Morphism::evaluation_at(1).apply(v);
    CHECK(image.context().centre_model() == CentreModel::Scalar);
    CHECK(image.coeff(1, 0).approx_equal(CentreElement::scalar(1.0), 0.0));
}

TEST_CASE("index fibering over a finite base") {
    const auto eta = CentreElement::finite({0.25, 0.75});
    const auto ctx = AlgebraContext(Cocycle::Trivial, eta);
    const auto v = TwistedElement::monomial(ctx, 1, 0);
    for (int x0 = 0; x0 < 2; ++x0) {
        const auto rep = check_index_fibering(Morphism::evaluation_at(x0), v, 1e-9);
        CHECK(rep.pass);
        CHECK(rep.rhs.approx_equal(
            CentreElement::scalar(eta.values()[static_cast<size_t>(x0)]), 1e-12));
    }
}

TEST_CASE("Heisenberg quotient fibering matches the Kronecker computation") {
    const auto hctx = heisenberg(0.37);
    const auto kctx = kronecker(0.37);
    for (int n = -3; n <= 3; ++n)
        for (int m = -3; m <= 3; ++m) {
            if (n == 0 && m == 0) continue;
            const auto a = TwistedElement::monomial(
                hctx, n, m, CentreElement::laurent_monomial(1));
            const auto rep = check_index_fibering(Morphism::heisenberg_quotient(), a, 1e-9);
            CHECK(rep.pass);
            const auto direct =
                toeplitz_index(TwistedElement::monomial(kctx, n, m)).value;
            CHECK(rep.rhs.approx_equal(direct, 1e-12));
            CHECK(rep.rhs.approx_equal(CentreElement::scalar(n * 0.37 + m), 1e-12));
        }

    const auto rep = check_index_fibering(
        Morphism::identity(), TwistedElement::monomial(hctx, 1, 0), 1e-9);
    CHECK(rep.deviation == 0.0);
}

TEST_CASE("morphism equivariance of wind on random invertibles") {
    const auto hctx = heisenberg(2.0);
    std::mt19937_64 rng(27);
    const auto q = Morphism::heisenberg_quotient();
    for (int i = 0; i < 20; ++i) {
        const auto fa = random_invertible_factors(hctx, rng);
        std::vector<TwistedElement> qfa;
        for (const auto& f : fa) qfa.push_back(q.apply(f));
        const auto lhs = q.apply_centre(wind_factored(fa, 1e-10).value);
        const auto rhs = wind_factored(qfa, 1e-10).value;
        CHECK(lhs.sub(rhs).upper_norm() <= 1e-9);
    }
}
