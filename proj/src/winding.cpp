#include "windex/winding.hpp"

#include <cmath>
#include <numbers>

namespace windex {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

WindingResult finish(const TwistedElement& a, const TwistedElement& inv,
                     TwistedStrategy used) {
    const CentreElement raw = a.derivation().mul(inv).trace();
    const CentreElement value = raw.scale(cplx(0.0, -1.0 / kTwoPi));  // 1/(2 pi i)
    const double residual =
        a.mul(inv).sub(TwistedElement::one(a.context())).l1_norm();
    // An imaginary residue signals an inversion failure; never symmetrize.
    const double imag = value.sub(value.adjoint()).upper_norm() / 2.0;
    if (imag > 1e-6)
        throw SelfAdjointnessViolation("wind: non-self-adjoint value, residue " +
                                       std::to_string(imag));
    return {value, residual, used};
}
}  // namespace

WindingResult wind(const TwistedElement& a, TwistedStrategy strategy, double tol) {
    TwistedStrategy used = strategy;
    if (strategy == TwistedStrategy::Auto)
        used = a.coeffs().size() == 1 ? TwistedStrategy::Monomial : TwistedStrategy::Neumann;
    return finish(a, a.invert(used, tol), used);
}

WindingResult wind_factored(const std::vector<TwistedElement>& factors, double tol) {
    const TwistedElement a = product_of(factors);
    return finish(a, invert_product(factors, tol), TwistedStrategy::Product);
}

WindingResult toeplitz_index(const TwistedElement& a, TwistedStrategy strategy, double tol) {
    WindingResult r = wind(a, strategy, tol);
    r.value = r.value.scale(-1.0);
    return r;
}

const char* to_string(MorphismKind k) {
    switch (k) {
        case MorphismKind::Identity: return "identity";
        case MorphismKind::EvaluationAt: return "evaluation";
        case MorphismKind::HeisenbergQuotient: return "quotient";
    }
    return "?";
}

CentreElement Morphism::apply_centre(const CentreElement& c) const {
    switch (kind) {
        case MorphismKind::Identity:
            return c;
        case MorphismKind::EvaluationAt: {
            if (c.model() != CentreModel::FinitePoints)
                throw ContextMismatch("evaluation morphism requires a FinitePoints centre");
            if (x0 < 0 || x0 >= c.points())
                throw ContextMismatch("evaluation morphism: point index out of range");
            return CentreElement::scalar(c.values()[static_cast<size_t>(x0)]);
        }
        case MorphismKind::HeisenbergQuotient: {
            if (c.model() != CentreModel::CircleLaurent)
                throw ContextMismatch("quotient morphism requires a CircleLaurent centre");
            cplx s = 0.0;  // W -> 1
            for (const auto& [p, cp] : c.coeffs()) s += cp;
            return CentreElement::scalar(s);
        }
    }
    throw std::logic_error("bad morphism kind");
}

AlgebraContext Morphism::apply_context(const AlgebraContext& ctx) const {
    switch (kind) {
        case MorphismKind::Identity:
            return ctx;
        case MorphismKind::EvaluationAt:
            return AlgebraContext(ctx.cocycle, apply_centre(ctx.eta), ctx.theta);
        case MorphismKind::HeisenbergQuotient:
            if (ctx.cocycle != Cocycle::Heisenberg)
                throw ContextMismatch("quotient morphism requires a Heisenberg source");
            // C*(H)/(W=1) is the Kronecker algebra: trivial cocycle, scalar centre.
            return AlgebraContext(Cocycle::Trivial, apply_centre(ctx.eta));
    }
    throw std::logic_error("bad morphism kind");
}

TwistedElement Morphism::apply(const TwistedElement& a) const {
    if (kind == MorphismKind::Identity) return a;
    const AlgebraContext target = apply_context(a.context());
    std::map<TwistedElement::Key, CentreElement> coeffs;
    for (const auto& [k, c] : a.coeffs()) coeffs.emplace(k, apply_centre(c));
    return TwistedElement(target, std::move(coeffs));
}

FiberingReport check_index_fibering(const Morphism& m, const TwistedElement& a, double tol,
                                    TwistedStrategy strategy) {
    const CentreElement lhs = m.apply_centre(toeplitz_index(a, strategy, tol).value);
    const CentreElement rhs = toeplitz_index(m.apply(a), strategy, tol).value;
    const double dev = lhs.sub(rhs).upper_norm();
    return {lhs, rhs, dev, dev <= tol};
}

}  // namespace windex
