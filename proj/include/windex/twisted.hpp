#pragma once

#include <map>
#include <optional>
#include <random>
#include <vector>

#include "windex/centre.hpp"
#include "windex/rational.hpp"

namespace windex {

enum class Cocycle { Trivial, Torus, Heisenberg };

const char* to_string(Cocycle c);

// Rotation angle theta, either an exact rational (phases become exact roots
// of unity) or a plain double.
struct Angle {
    std::optional<Rational> exact;
    double value = 0.0;

    Angle() = default;
    Angle(double v) : value(v) {}                       // NOLINT(google-explicit-constructor)
    Angle(Rational r) : exact(r), value(r.value()) {}   // NOLINT(google-explicit-constructor)

    // e^{sign * 2*pi*i*theta*k}
    cplx phase(long long k, int sign) const;
};

// The ambient algebra family: centre model, 2-cocycle twist, and flow
// weight eta in Z_sa.
struct AlgebraContext {
    Cocycle cocycle = Cocycle::Trivial;
    Angle theta;           // Torus only
    CentreElement eta;     // self-adjoint

    AlgebraContext(Cocycle c, CentreElement eta_in, Angle theta_in = Angle{});

    CentreModel centre_model() const { return eta.model(); }
    int points() const { return eta.points(); }

    CentreElement centre_one() const { return CentreElement::one_like(eta); }
    CentreElement centre_zero() const { return CentreElement::zero_like(eta); }

    bool compatible(const AlgebraContext& other) const;
};

enum class TwistedStrategy { Monomial, Neumann, Product, Auto };

const char* to_string(TwistedStrategy s);

// Finitely supported element sum c_{n,m} V^n U^m over the centre, in normal
// order (centre coefficient, then V-power, then U-power).  Universal carrier
// for the commutative/noncommutative torus, bundle, and Heisenberg families.
class TwistedElement {
public:
    using Key = std::pair<int, int>;  // (n, m)

    explicit TwistedElement(AlgebraContext ctx) : ctx_(std::move(ctx)) {}
    TwistedElement(AlgebraContext ctx, std::map<Key, CentreElement> coeffs);

    static TwistedElement monomial(const AlgebraContext& ctx, int n, int m,
                                   const CentreElement& coeff);
    static TwistedElement monomial(const AlgebraContext& ctx, int n, int m, cplx coeff = 1.0);
    static TwistedElement one(const AlgebraContext& ctx);
    static TwistedElement zero(const AlgebraContext& ctx);
    // A central element z (support only at (0,0)).
    static TwistedElement central(const AlgebraContext& ctx, const CentreElement& z);

    const AlgebraContext& context() const { return ctx_; }
    const std::map<Key, CentreElement>& coeffs() const { return coeffs_; }
    CentreElement coeff(int n, int m) const;
    bool is_zero() const { return coeffs_.empty(); }

    TwistedElement add(const TwistedElement& other) const;
    TwistedElement sub(const TwistedElement& other) const;
    TwistedElement mul(const TwistedElement& other) const;
    TwistedElement scale(cplx s) const;
    TwistedElement scale_central(const CentreElement& z) const;
    TwistedElement adjoint() const;

    // Conditional expectation onto the centre: the (0,0) coefficient.
    CentreElement trace() const;

    // delta: coefficient at (n,m) multiplied by -2*pi*i*(n*eta + m).  Exact
    // and support-preserving.
    TwistedElement derivation() const;

    // alpha_t: coefficient at (n,m) multiplied by e^{-2*pi*i*t*(n*eta + m)}.
    // Exact for Scalar/FinitePoints eta; grid-sampled for CircleLaurent eta.
    TwistedElement flow(double t, int resolution = 256) const;

    TwistedElement invert(TwistedStrategy strategy, double tol = 1e-12) const;

    // l1 norm of centre upper bounds; dominates the C*-norm.
    double l1_norm() const;

    bool approx_equal(const TwistedElement& other, double tol = 1e-12) const;

    // Central cocycle factor picked up when U^{m1} crosses V^{n2}:
    // 1 (Trivial), e^{-2*pi*i*theta*m1*n2} (Torus), W^{m1*n2} (Heisenberg).
    // Orientation fixed by the clock/shift and integer-matrix oracles.
    static CentreElement cocycle_factor(const AlgebraContext& ctx, int m1, int n2);

private:
    AlgebraContext ctx_;
    std::map<Key, CentreElement> coeffs_;

    void insert_term(int n, int m, const CentreElement& c);
    void prune();
};

// Inverts an explicit product of invertible factors, factorwise in reverse
// order (each factor via Monomial, then Neumann).
TwistedElement invert_product(const std::vector<TwistedElement>& factors, double tol = 1e-12);

TwistedElement product_of(const std::vector<TwistedElement>& factors);

// Seeded random element: support drawn from [-3,3]^2, centre coefficients
// with modulus <= 1.
TwistedElement random_element(const AlgebraContext& ctx, std::mt19937_64& rng, int terms = 8);
CentreElement random_centre(CentreModel model, int k, std::mt19937_64& rng, int laurent_radius = 2);

}  // namespace windex
