#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "windex/toeplitz.hpp"
#include "windex/winding.hpp"

using namespace windex;
using namespace windex::toeplitz;

TEST_CASE("shift commutator traces") {
    for (int n = 1; n <= 8; ++n) {
        const auto tr = commutator_trace(BandedToeplitz::power(n), BandedToeplitz::power(-n));
        CHECK(std::abs(std::abs(tr) - n) < 1e-12);
        CHECK(tr.real() == doctest::Approx(kOrientation * n));
        CHECK(std::abs(tr.imag()) < 1e-12);
    }
    const auto a = BandedToeplitz({{0, 1.0}, {2, {0.5, 0.5}}});
    CHECK(std::abs(commutator_trace(a, a)) < 1e-14);
}

TEST_CASE("window independence, bilinearity, antisymmetry") {
    const auto a = BandedToeplitz({{-1, {0.3, 0.2}}, {2, 1.0}, {3, {0.0, -0.4}}});
    const auto b = BandedToeplitz({{-2, {1.0, 0.5}}, {1, 0.7}});
    const auto base = commutator_trace(a, b);
    for (int w = a.band() + b.band() + 1; w <= a.band() + b.band() + 20; w += 4)
        CHECK(std::abs(commutator_trace(a, b, w) - base) < 1e-12);

    CHECK(std::abs(commutator_trace(b, a) + base) < 1e-12);

    const auto c = BandedToeplitz({{0, {0.1, 0.9}}, {-3, 0.4}});
    const auto ab = BandedToeplitz({{-1, cplx(0.3, 0.2) * 2.0}, {2, 2.0}, {3, cplx(0.0, -0.8)}});
    CHECK(std::abs(commutator_trace(ab, b) - 2.0 * base) < 1e-12);
    const auto sum_ac = commutator_trace(a, c) + commutator_trace(b, c);
    std::map<int, cplx> apb;
    for (const auto& [p, v] : a.symbol) apb[p] += v;
    for (const auto& [p, v] : b.symbol) apb[p] += v;
    CHECK(std::abs(commutator_trace(BandedToeplitz(apb), c) - sum_ac) < 1e-12);
}

TEST_CASE("numeric index of shifts and of a non-winding symbol") {
    for (int n = 1; n <= 8; ++n) {
        const auto idx = numeric_index(BandedToeplitz::power(n),
                                       BandedToeplitz::power(-n));
        CHECK(std::abs(std::abs(idx) - n) < 1e-12);
    }
    const auto one = BandedToeplitz({{0, 1.0}});
    CHECK(std::abs(numeric_index(one, one)) < 1e-14);

    const auto a = BandedToeplitz({{1, 1.0}, {0, -2.0}});  // z - 2
    const auto inv = shifted_symbol_inverse(2.0, 1e-9);
    CHECK(symbol_inverse_residual(a, inv) < 1e-8);
    CHECK(std::abs(numeric_index(a, inv)) < 1e-6);

    CHECK_THROWS_AS(numeric_index(a, one), InverseResidualTooLarge);
}

TEST_CASE("Helton-Howe pairing matches the symbolic winding stack") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> deg(-3, 3);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    // Circle symbols as U-polynomials in the trivial-cocycle algebra with
    // scalar centre and eta = 0; delta weights the U-grading by -2 pi i m.
    const AlgebraContext circle(Cocycle::Trivial, CentreElement::scalar(0.0));
    const auto lift = [&](const std::map<int, cplx>& coeffs) {
        TwistedElement e = TwistedElement::zero(circle);
        for (const auto& [m, c] : coeffs)
            e = e.add(TwistedElement::monomial(circle, 0, m, c));
        return e;
    };
    const double two_pi = 2.0 * std::numbers::pi;
    for (int trial = 0; trial < 30; ++trial) {
        std::map<int, cplx> ca, cb;
        for (int i = 0; i < 4; ++i) {
            ca[deg(rng)] += cplx(coef(rng), coef(rng));
            cb[deg(rng)] += cplx(coef(rng), coef(rng));
        }
        const BandedToeplitz a(ca), b(cb);
        const cplx lhs = commutator_trace(a, b);
        const cplx symbolic = helton_howe_symbolic(a, b);
        CHECK(std::abs(lhs - kOrientation * symbolic) < 1e-8);

        // (-1/2 pi i) tau(delta(a) b) computed by the winding stack.
        const auto raw = lift(ca).derivation().mul(lift(cb)).trace();
        const cplx stack =
            raw.values()[0] * cplx(0.0, 1.0 / two_pi);  // -1/(2 pi i)
        CHECK(std::abs(stack - symbolic) < 1e-10);
        CHECK(std::abs(lhs - kOrientation * stack) < 1e-8);
    }
}

TEST_CASE("hardy projection and multiplier identities") {
    const auto p = hardy_projection(-32, 31);
    const auto h = hilbert_multiplier(-32, 31);
    for (size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i] * p[i] == p[i]);
        CHECK(h[i] * h[i] == 1.0);
        CHECK(h[i] == 2.0 * p[i] - 1.0);
    }
}

TEST_CASE("projected Toeplitz matrix reproduces the banded entries") {
    const auto a = BandedToeplitz({{-2, {0.1, -0.3}}, {0, 2.0}, {1, {0.5, 0.5}}});
    const auto t = toeplitz_from_projection(a, 32);
    for (int j = 0; j < 16; ++j)
        for (int k = 0; k < 16; ++k)
            CHECK(std::abs(t[static_cast<size_t>(j)][static_cast<size_t>(k)] -
                           a.entry(j, k)) < 1e-12);
}

TEST_CASE("numeric winding oracle") {
    GridSymbol one;
    one.terms.push_back({0, 0, 1.0});
    one.mu = 0.37;
    CHECK(std::abs(numeric_wind(one, 1e-3, 32)) == 0.0);

    GridSymbol w;
    w.terms.push_back({0, 1, 1.0});
    w.mu = 0.37;
    const cplx vw = numeric_wind(w, 1e-3, 64);
    CHECK(std::abs(vw - cplx(-0.37, 0.0)) < 0.0074);

    GridSymbol z2w;
    z2w.terms.push_back({2, 1, 1.0});
    z2w.mu = 0.37;
    CHECK(std::abs(numeric_wind(z2w, 1e-3, 64) - cplx(-2.37, 0.0)) < 0.02 * 2.37);

    GridSymbol vanishing;  // z - 1 vanishes at z = 1
    vanishing.terms.push_back({1, 0, 1.0});
    vanishing.terms.push_back({0, 0, -1.0});
    CHECK_THROWS_AS(numeric_wind(vanishing, 1e-3, 64), SymbolVanishes);
}

TEST_CASE("first-order error model in the step size") {
    GridSymbol w;
    w.terms.push_back({0, 1, 1.0});
    w.mu = 0.37;
    const double e1 = std::abs(numeric_wind(w, 2e-3, 64) - cplx(-0.37, 0.0));
    const double e2 = std::abs(numeric_wind(w, 1e-3, 64) - cplx(-0.37, 0.0));
    const double ratio = e1 / e2;
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);
}

TEST_CASE("consistency triangle for circle symbols") {
    // |numeric_index| = |symbolic wind| = |numeric_wind| for a = z^n.
    const AlgebraContext circle(Cocycle::Trivial, CentreElement::scalar(0.0));
    for (int n = 1; n <= 3; ++n) {
        const double ni = std::abs(
            numeric_index(BandedToeplitz::power(n), BandedToeplitz::power(-n)));
        const double sym = std::abs(
            wind(TwistedElement::monomial(circle, 0, n)).value.values()[0]);
        GridSymbol f;
        f.terms.push_back({n, 0, 1.0});
        f.mu = 0.0;
        const double nw = std::abs(numeric_wind(f, 1e-4, 32));
        CHECK(std::abs(ni - n) < 1e-12);
        CHECK(sym == doctest::Approx(n));
        CHECK(std::abs(nw - n) < 0.02 * n);
    }
}
