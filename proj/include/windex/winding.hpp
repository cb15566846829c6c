#pragma once

#include <string>
#include <vector>

#include "windex/twisted.hpp"

namespace windex {

struct WindingResult {
    CentreElement value;        // self-adjoint centre element
    double inversion_residual = 0.0;
    TwistedStrategy strategy_used = TwistedStrategy::Auto;
};

// wind_alpha(a) = (1/2 pi i) tau(delta(a) a^{-1}).  A group homomorphism on
// invertibles, zero on the centre, with values in Z_sa.
WindingResult wind(const TwistedElement& a, TwistedStrategy strategy = TwistedStrategy::Auto,
                   double tol = 1e-12);

// Winding of an explicit product of invertible factors; the inverse is
// assembled factorwise, the derivation acts on the actual product.
WindingResult wind_factored(const std::vector<TwistedElement>& factors, double tol = 1e-12);

// tau-Index(T_a) = -wind(a).
WindingResult toeplitz_index(const TwistedElement& a,
                             TwistedStrategy strategy = TwistedStrategy::Auto,
                             double tol = 1e-12);

enum class MorphismKind { Identity, EvaluationAt, HeisenbergQuotient };

const char* to_string(MorphismKind k);

// A morphism of 4-tuples: commutes with trace and flow.  EvaluationAt sends
// FinitePoints coefficients to their value at x0; HeisenbergQuotient
// substitutes W -> 1.
struct Morphism {
    MorphismKind kind = MorphismKind::Identity;
    int x0 = 0;  // EvaluationAt only

    static Morphism identity() { return {MorphismKind::Identity, 0}; }
    static Morphism evaluation_at(int x0) { return {MorphismKind::EvaluationAt, x0}; }
    static Morphism heisenberg_quotient() { return {MorphismKind::HeisenbergQuotient, 0}; }

    CentreElement apply_centre(const CentreElement& c) const;
    AlgebraContext apply_context(const AlgebraContext& ctx) const;
    TwistedElement apply(const TwistedElement& a) const;
};

struct FiberingReport {
    CentreElement lhs;   // phi(Index(a))
    CentreElement rhs;   // Index(phi(a))
    double deviation = 0.0;
    bool pass = false;
};

FiberingReport check_index_fibering(const Morphism& m, const TwistedElement& a, double tol,
                                    TwistedStrategy strategy = TwistedStrategy::Auto);

}  // namespace windex
