#include "windex/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace windex {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}
}  // namespace

const char* to_string(Cocycle c) {
    switch (c) {
        case Cocycle::Trivial: return "trivial";
        case Cocycle::Torus: return "torus";
        case Cocycle::Heisenberg: return "heisenberg";
    }
    return "?";
}

const char* to_string(TwistedStrategy s) {
    switch (s) {
        case TwistedStrategy::Monomial: return "monomial";
        case TwistedStrategy::Neumann: return "neumann";
        case TwistedStrategy::Product: return "product";
        case TwistedStrategy::Auto: return "auto";
    }
    return "?";
}

cplx Angle::phase(long long k, int sign) const {
    if (exact) {
        const std::int64_t r = exact->reduced_multiple(k);
        if (r == 0) return 1.0;
        return std::polar(1.0, sign * kTwoPi * static_cast<double>(r) /
                                   static_cast<double>(exact->den));
    }
    return std::polar(1.0, sign * kTwoPi * value * static_cast<double>(k));
}

AlgebraContext::AlgebraContext(Cocycle c, CentreElement eta_in, Angle theta_in)
    : cocycle(c), theta(theta_in), eta(std::move(eta_in)) {
    if (!eta.is_self_adjoint(1e-12))
        throw std::invalid_argument("AlgebraContext: eta must be self-adjoint");
    if (cocycle == Cocycle::Heisenberg && eta.model() != CentreModel::CircleLaurent)
        throw std::invalid_argument("heisenberg cocycle requires laurent centre");
    if (cocycle == Cocycle::Torus && eta.model() == CentreModel::CircleLaurent)
        throw std::invalid_argument("torus cocycle requires scalar or finite centre");
}

bool AlgebraContext::compatible(const AlgebraContext& other) const {
    if (cocycle != other.cocycle) return false;
    if (!eta.same_shape(other.eta)) return false;
    if (cocycle == Cocycle::Torus) {
        if (theta.exact && other.theta.exact) {
            if (!(*theta.exact == *other.theta.exact)) return false;
        } else if (theta.value != other.theta.value) {
            return false;
        }
    }
    return eta.sub(other.eta).upper_norm() <= 1e-12;
}

CentreElement TwistedElement::cocycle_factor(const AlgebraContext& ctx, int m1, int n2) {
    const long long cross = static_cast<long long>(m1) * n2;
    switch (ctx.cocycle) {
        case Cocycle::Trivial:
            return ctx.centre_one();
        case Cocycle::Torus:
            return CentreElement::scalar(ctx.theta.phase(cross, -1));
        case Cocycle::Heisenberg:
            return CentreElement::laurent_monomial(static_cast<int>(cross));
    }
    throw std::logic_error("bad cocycle");
}

TwistedElement::TwistedElement(AlgebraContext ctx, std::map<Key, CentreElement> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    for (const auto& [k, c] : coeffs_)
        if (!c.same_shape(ctx_.eta))
            throw ModelMismatch("TwistedElement: coefficient model differs from context centre");
    prune();
}

TwistedElement TwistedElement::monomial(const AlgebraContext& ctx, int n, int m,
                                        const CentreElement& coeff) {
    TwistedElement e(ctx);
    e.insert_term(n, m, coeff);
    e.prune();
    return e;
}

TwistedElement TwistedElement::monomial(const AlgebraContext& ctx, int n, int m, cplx coeff) {
    return monomial(ctx, n, m, ctx.centre_one().scale(coeff));
}

TwistedElement TwistedElement::one(const AlgebraContext& ctx) { return monomial(ctx, 0, 0); }

TwistedElement TwistedElement::zero(const AlgebraContext& ctx) { return TwistedElement(ctx); }

TwistedElement TwistedElement::central(const AlgebraContext& ctx, const CentreElement& z) {
    return monomial(ctx, 0, 0, z);
}

CentreElement TwistedElement::coeff(int n, int m) const {
    auto it = coeffs_.find({n, m});
    if (it == coeffs_.end()) return ctx_.centre_zero();
    return it->second;
}

void TwistedElement::insert_term(int n, int m, const CentreElement& c) {
    auto [it, inserted] = coeffs_.try_emplace({n, m}, c);
    if (!inserted) it->second = it->second.add(c);
}

void TwistedElement::prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second.upper_norm() < kPruneThreshold)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

TwistedElement TwistedElement::add(const TwistedElement& other) const {
    if (!ctx_.compatible(other.ctx_)) throw ContextMismatch("twisted add: context mismatch");
    TwistedElement r = *this;
    for (const auto& [k, c] : other.coeffs_) r.insert_term(k.first, k.second, c);
    r.prune();
    return r;
}

TwistedElement TwistedElement::sub(const TwistedElement& other) const {
    return add(other.scale(-1.0));
}

TwistedElement TwistedElement::scale(cplx s) const {
    TwistedElement r(ctx_);
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, c.scale(s));
    r.prune();
    return r;
}

TwistedElement TwistedElement::scale_central(const CentreElement& z) const {
    TwistedElement r(ctx_);
    for (const auto& [k, c] : coeffs_) r.coeffs_.emplace(k, c.mul(z));
    r.prune();
    return r;
}

TwistedElement TwistedElement::mul(const TwistedElement& other) const {
    if (!ctx_.compatible(other.ctx_)) throw ContextMismatch("twisted mul: context mismatch");
    TwistedElement r(ctx_);
    for (const auto& [k1, c1] : coeffs_) {
        for (const auto& [k2, c2] : other.coeffs_) {
            // (c1 V^{n1} U^{m1})(c2 V^{n2} U^{m2})
            //   = c1 c2 chi(m1, n2) V^{n1+n2} U^{m1+m2}
            CentreElement c = c1.mul(c2);
            if (ctx_.cocycle != Cocycle::Trivial && k1.second != 0 && k2.first != 0)
                c = c.mul(cocycle_factor(ctx_, k1.second, k2.first));
            r.insert_term(k1.first + k2.first, k1.second + k2.second, c);
        }
    }
    r.prune();
    return r;
}

TwistedElement TwistedElement::adjoint() const {
    TwistedElement r(ctx_);
    for (const auto& [k, c] : coeffs_) {
        // (c V^n U^m)* = c* U^{-m} V^{-n} = c* chi(-m,-n) V^{-n} U^{-m}
        CentreElement a = c.adjoint();
        if (ctx_.cocycle != Cocycle::Trivial && k.second != 0 && k.first != 0)
            a = a.mul(cocycle_factor(ctx_, -k.second, -k.first));
        r.insert_term(-k.first, -k.second, a);
    }
    r.prune();
    return r;
}

CentreElement TwistedElement::trace() const { return coeff(0, 0); }

TwistedElement TwistedElement::derivation() const {
    TwistedElement r(ctx_);
    const cplx minus_two_pi_i(0.0, -kTwoPi);
    for (const auto& [k, c] : coeffs_) {
        if (k.first == 0 && k.second == 0) continue;  // multiplier is 0
        CentreElement mult = ctx_.eta.scale(static_cast<double>(k.first))
                                 .add(ctx_.centre_one().scale(static_cast<double>(k.second)))
                                 .scale(minus_two_pi_i);
        r.coeffs_.emplace(k, c.mul(mult));
    }
    r.prune();
    return r;
}

TwistedElement TwistedElement::flow(double t, int resolution) const {
    TwistedElement r(ctx_);
    if (ctx_.eta.model() != CentreModel::CircleLaurent) {
        for (const auto& [k, c] : coeffs_) {
            // e^{-2 pi i t (n eta + m)} pointwise (eta real by self-adjointness)
            CentreElement mult = ctx_.eta.scale(static_cast<double>(k.first))
                                     .add(ctx_.centre_one().scale(static_cast<double>(k.second)))
                                     .scale(cplx(0.0, -kTwoPi * t))
                                     .exp_pointwise();
            r.coeffs_.emplace(k, c.mul(mult));
        }
        r.prune();
        return r;
    }
    // CircleLaurent eta: the multiplier e^{-2 pi i t (n eta + m)} has infinite
    // Laurent support; sample, exponentiate, transform back, truncate.
    const int n_grid = next_pow2(std::max(resolution, 8 * (ctx_.eta.support_radius() + 1)));
    const auto eta_samples = ctx_.eta.sample_circle(n_grid);
    for (const auto& [k, c] : coeffs_) {
        std::vector<cplx> mult(n_grid);
        for (int j = 0; j < n_grid; ++j) {
            const double phase = -kTwoPi * t *
                (static_cast<double>(k.first) * eta_samples[j].real() +
                 static_cast<double>(k.second));
            mult[j] = std::polar(1.0, phase);
        }
        CentreElement m = CentreElement::from_circle_samples(mult);
        // Aliasing detector: the multiplier's tail must have decayed before
        // the edge of the representable exponent window.
        double edge = 0.0;
        for (const auto& [p, cp] : m.coeffs())
            if (std::abs(p) >= n_grid / 2 - 1) edge = std::max(edge, std::abs(cp));
        if (edge > 1e-8)
            throw ResolutionTooSmall("flow: resolution too small, edge coefficient " +
                                     std::to_string(edge));
        r.coeffs_.emplace(k, c.mul(m));
    }
    r.prune();
    return r;
}

double TwistedElement::l1_norm() const {
    double s = 0.0;
    for (const auto& [k, c] : coeffs_) s += c.upper_norm();
    return s;
}

bool TwistedElement::approx_equal(const TwistedElement& other, double tol) const {
    return sub(other).l1_norm() <= tol;
}

TwistedElement TwistedElement::invert(TwistedStrategy strategy, double tol) const {
    switch (strategy) {
        case TwistedStrategy::Monomial: {
            if (coeffs_.size() != 1)
                throw NotInvertible("monomial inversion: element is not a monomial");
            const auto& [k, c] = *coeffs_.begin();
            // (c V^n U^m)(d V^{-n} U^{-m}) = c d chi(m,-n); solve for d.
            CentreElement factor = c;
            if (ctx_.cocycle != Cocycle::Trivial && k.second != 0 && k.first != 0)
                factor = factor.mul(cocycle_factor(ctx_, k.second, -k.first));
            CentreElement d = factor.invert(InversionStrategy::Exact, tol);
            return monomial(ctx_, -k.first, -k.second, d);
        }
        case TwistedStrategy::Neumann: {
            const TwistedElement u = one(ctx_).sub(*this);  // 1 - a
            const double r = u.l1_norm();
            if (r >= 1.0)
                throw NotInvertible("Neumann inversion: l1 bound of (1 - a) = " +
                                    std::to_string(r) + " >= 1");
            TwistedElement sum = one(ctx_);
            TwistedElement term = one(ctx_);
            double term_norm = 1.0;
            double best = std::numeric_limits<double>::infinity();
            int stalled = 0;
            for (int it = 0; it < 100000; ++it) {
                term = term.mul(u);
                term_norm *= r;
                sum = sum.add(term);
                if (term_norm * r / (1.0 - r) > tol) continue;
                const double res = mul(sum).sub(one(ctx_)).l1_norm();
                if (res <= tol) return sum;
                // Pruned coefficients put a floor under the residual; once it
                // stops improving the requested tol is unreachable.
                stalled = res >= 0.5 * best ? stalled + 1 : 0;
                if (stalled >= 3)
                    throw NeumannDiverged("Neumann inversion: residual stalled at " +
                                          std::to_string(res) + " above tol");
                best = std::min(best, res);
            }
            throw NeumannDiverged("Neumann inversion: did not reach tol");
        }
        case TwistedStrategy::Product:
            throw NotInvertible(
                "product inversion needs explicit factors; use invert_product()");
        case TwistedStrategy::Auto: {
            if (coeffs_.size() == 1) {
                try {
                    return invert(TwistedStrategy::Monomial, tol);
                } catch (const NotInvertible&) {
                }
            }
            return invert(TwistedStrategy::Neumann, tol);
        }
    }
    throw std::logic_error("bad strategy");
}

TwistedElement invert_product(const std::vector<TwistedElement>& factors, double tol) {
    if (factors.empty()) throw NotInvertible("invert_product: no factors");
    TwistedElement inv = factors.back().invert(TwistedStrategy::Auto, tol);
    for (auto it = std::next(factors.rbegin()); it != factors.rend(); ++it)
        inv = inv.mul(it->invert(TwistedStrategy::Auto, tol));
    return inv;
}

TwistedElement product_of(const std::vector<TwistedElement>& factors) {
    if (factors.empty()) throw std::invalid_argument("product_of: no factors");
    TwistedElement p = factors.front();
    for (size_t i = 1; i < factors.size(); ++i) p = p.mul(factors[i]);
    return p;
}

CentreElement random_centre(CentreModel model, int k, std::mt19937_64& rng,
                            int laurent_radius) {
    std::uniform_real_distribution<double> mag(0.1, 1.0);
    std::uniform_real_distribution<double> arg(0.0, kTwoPi);
    auto rand_c = [&] { return std::polar(mag(rng), arg(rng)); };
    switch (model) {
        case CentreModel::Scalar:
            return CentreElement::scalar(rand_c());
        case CentreModel::FinitePoints: {
            std::vector<cplx> v(k);
            for (auto& x : v) x = rand_c();
            return CentreElement::finite(std::move(v));
        }
        case CentreModel::CircleLaurent: {
            std::map<int, cplx> c;
            std::uniform_int_distribution<int> exp(-laurent_radius, laurent_radius);
            for (int i = 0; i < 3; ++i) c[exp(rng)] = rand_c() / 3.0;
            return CentreElement::laurent(std::move(c));
        }
    }
    throw std::logic_error("bad model");
}

TwistedElement random_element(const AlgebraContext& ctx, std::mt19937_64& rng, int terms) {
    std::uniform_int_distribution<int> deg(-3, 3);
    TwistedElement e(ctx);
    std::map<TwistedElement::Key, CentreElement> coeffs;
    for (int i = 0; i < terms; ++i) {
        const int n = deg(rng), m = deg(rng);
        CentreElement c = random_centre(ctx.centre_model(), ctx.points(), rng);
        auto [it, inserted] = coeffs.try_emplace({n, m}, c);
        if (!inserted) it->second = it->second.add(c);
    }
    return TwistedElement(ctx, std::move(coeffs));
}

}  // namespace windex
