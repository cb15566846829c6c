#include "windex/centre.hpp"

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

const char* to_string(CentreModel m) {
    switch (m) {
        case CentreModel::Scalar: return "scalar";
        case CentreModel::FinitePoints: return "finite";
        case CentreModel::CircleLaurent: return "laurent";
    }
    return "?";
}

const char* to_string(InversionStrategy s) {
    switch (s) {
        case InversionStrategy::Exact: return "exact";
        case InversionStrategy::Neumann: return "neumann";
        case InversionStrategy::GridFFT: return "gridfft";
    }
    return "?";
}

CentreElement CentreElement::scalar(cplx v) {
    CentreElement c;
    c.model_ = CentreModel::Scalar;
    c.values_ = {v};
    return c;
}

CentreElement CentreElement::finite(std::vector<cplx> values) {
    if (values.empty()) throw std::invalid_argument("FinitePoints needs k >= 1");
    CentreElement c;
    c.model_ = CentreModel::FinitePoints;
    c.values_ = std::move(values);
    return c;
}

CentreElement CentreElement::laurent(std::map<int, cplx> coeffs) {
    CentreElement c;
    c.model_ = CentreModel::CircleLaurent;
    c.coeffs_ = std::move(coeffs);
    c.prune();
    return c;
}

CentreElement CentreElement::laurent_monomial(int p, cplx a) {
    return laurent({{p, a}});
}

CentreElement CentreElement::one(CentreModel model, int k) {
    switch (model) {
        case CentreModel::Scalar: return scalar(1.0);
        case CentreModel::FinitePoints: return finite(std::vector<cplx>(k, 1.0));
        case CentreModel::CircleLaurent: return laurent({{0, 1.0}});
    }
    throw std::logic_error("bad model");
}

CentreElement CentreElement::zero(CentreModel model, int k) {
    switch (model) {
        case CentreModel::Scalar: return scalar(0.0);
        case CentreModel::FinitePoints: return finite(std::vector<cplx>(k, 0.0));
        case CentreModel::CircleLaurent: return laurent({});
    }
    throw std::logic_error("bad model");
}

CentreElement CentreElement::one_like(const CentreElement& c) {
    return one(c.model_, c.points());
}

CentreElement CentreElement::zero_like(const CentreElement& c) {
    return zero(c.model_, c.points());
}

bool CentreElement::same_shape(const CentreElement& other) const {
    if (model_ != other.model_) return false;
    if (model_ == CentreModel::FinitePoints) return values_.size() == other.values_.size();
    return true;
}

bool CentreElement::is_zero() const {
    if (model_ == CentreModel::CircleLaurent) return coeffs_.empty();
    return std::all_of(values_.begin(), values_.end(),
                       [](cplx v) { return v == cplx{0.0, 0.0}; });
}

void CentreElement::prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) < kPruneThreshold)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

void CentreElement::require_same(const CentreElement& other, const char* op) const {
    if (!same_shape(other))
        throw ModelMismatch(std::string("centre ") + op + ": model mismatch (" +
                            to_string(model_) + " vs " + to_string(other.model_) + ")");
}

CentreElement CentreElement::add(const CentreElement& other) const {
    require_same(other, "add");
    CentreElement r = *this;
    if (model_ == CentreModel::CircleLaurent) {
        for (const auto& [p, c] : other.coeffs_) r.coeffs_[p] += c;
        r.prune();
    } else {
        for (size_t i = 0; i < values_.size(); ++i) r.values_[i] += other.values_[i];
    }
    return r;
}

CentreElement CentreElement::sub(const CentreElement& other) const {
    return add(other.scale(-1.0));
}

CentreElement CentreElement::mul(const CentreElement& other) const {
    require_same(other, "mul");
    if (model_ == CentreModel::CircleLaurent) {
        std::map<int, cplx> out;
        for (const auto& [p, c] : coeffs_)
            for (const auto& [q, d] : other.coeffs_) out[p + q] += c * d;
        return laurent(std::move(out));
    }
    CentreElement r = *this;
    for (size_t i = 0; i < values_.size(); ++i) r.values_[i] *= other.values_[i];
    return r;
}

CentreElement CentreElement::scale(cplx s) const {
    CentreElement r = *this;
    if (model_ == CentreModel::CircleLaurent) {
        for (auto& [p, c] : r.coeffs_) c *= s;
        r.prune();
    } else {
        for (auto& v : r.values_) v *= s;
    }
    return r;
}

CentreElement CentreElement::adjoint() const {
    if (model_ == CentreModel::CircleLaurent) {
        std::map<int, cplx> out;
        for (const auto& [p, c] : coeffs_) out[-p] = std::conj(c);
        return laurent(std::move(out));
    }
    CentreElement r = *this;
    for (auto& v : r.values_) v = std::conj(v);
    return r;
}

bool CentreElement::is_self_adjoint(double tol) const {
    return sub(adjoint()).upper_norm() <= 2.0 * tol;
}

std::pair<double, double> CentreElement::sup_norm_bounds() const {
    if (model_ != CentreModel::CircleLaurent) {
        double m = 0.0;
        for (const auto& v : values_) m = std::max(m, std::abs(v));
        return {m, m};
    }
    double upper = 0.0;
    for (const auto& [p, c] : coeffs_) upper += std::abs(c);
    double lower = 0.0;
    constexpr int kGrid = 1024;
    for (int j = 0; j < kGrid; ++j) lower = std::max(lower, std::abs(eval_circle(j, kGrid)));
    return {std::min(lower, upper), upper};
}

int CentreElement::support_radius() const {
    int r = 0;
    for (const auto& [p, c] : coeffs_) r = std::max(r, std::abs(p));
    return r;
}

cplx CentreElement::eval_circle(int j, int n) const {
    if (model_ != CentreModel::CircleLaurent) return values_[0];
    cplx s = 0.0;
    for (const auto& [p, c] : coeffs_) {
        const long long e = static_cast<long long>(p) * j % n;
        s += c * std::polar(1.0, kTwoPi * static_cast<double>(e) / n);
    }
    return s;
}

std::vector<cplx> CentreElement::sample_circle(int n) const {
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) out[j] = eval_circle(j, n);
    return out;
}

CentreElement CentreElement::from_circle_samples(const std::vector<cplx>& samples,
                                                 double prune) {
    const int n = static_cast<int>(samples.size());
    std::map<int, cplx> coeffs;
    for (int p = -n / 2; p < (n + 1) / 2; ++p) {
        cplx c = 0.0;
        for (int j = 0; j < n; ++j) {
            const long long e = static_cast<long long>(p) * j % n;
            c += samples[j] * std::polar(1.0, -kTwoPi * static_cast<double>(e) / n);
        }
        c /= static_cast<double>(n);
        if (std::abs(c) >= prune) coeffs[p] = c;
    }
    return laurent(std::move(coeffs));
}

CentreElement CentreElement::exp_pointwise() const {
    if (model_ == CentreModel::CircleLaurent)
        throw ModelMismatch("exp_pointwise: CircleLaurent exponentials need a grid");
    CentreElement r = *this;
    for (auto& v : r.values_) v = std::exp(v);
    return r;
}

bool CentreElement::approx_equal(const CentreElement& other, double tol) const {
    if (!same_shape(other)) return false;
    return sub(other).upper_norm() <= tol;
}

CentreElement CentreElement::invert(InversionStrategy strategy, double tol) const {
    switch (strategy) {
        case InversionStrategy::Exact: {
            if (model_ != CentreModel::CircleLaurent) {
                CentreElement r = *this;
                for (auto& v : r.values_) {
                    if (std::abs(v) == 0.0)
                        throw NotInvertible("exact inversion: zero value");
                    v = 1.0 / v;
                }
                return r;
            }
            if (coeffs_.size() != 1)
                throw NotInvertible("exact inversion: Laurent element is not a monomial");
            const auto& [p, c] = *coeffs_.begin();
            if (std::abs(c) == 0.0) throw NotInvertible("exact inversion: zero coefficient");
            return laurent_monomial(-p, 1.0 / c);
        }
        case InversionStrategy::Neumann: {
            const CentreElement u = one_like(*this).sub(*this);  // 1 - c
            const double r = u.upper_norm();
            if (r >= 1.0)
                throw NotInvertible("Neumann inversion: ||1 - c|| bound = " +
                                    std::to_string(r) + " >= 1");
            CentreElement sum = one_like(*this);
            CentreElement term = one_like(*this);
            // ||tail|| <= r^{k+1}/(1-r); stop once it certifies the residual.
            double term_norm = 1.0;
            double best = std::numeric_limits<double>::infinity();
            int stalled = 0;
            for (int k = 0; k < 100000; ++k) {
                term = term.mul(u);
                term_norm *= r;
                sum = sum.add(term);
                if (term_norm * r / (1.0 - r) > tol) continue;
                const double res = mul(sum).sub(one_like(*this)).upper_norm();
                if (res <= tol) return sum;
                // Pruned coefficients put a floor under the residual; once it
                // stops improving the requested tol is unreachable.
                stalled = res >= 0.5 * best ? stalled + 1 : 0;
                if (stalled >= 3)
                    throw NeumannDiverged("Neumann inversion: residual stalled at " +
                                          std::to_string(res) + " above tol");
                best = std::min(best, res);
            }
            throw NeumannDiverged("Neumann inversion: partial sums did not reach tol");
        }
        case InversionStrategy::GridFFT: {
            if (model_ != CentreModel::CircleLaurent)
                throw NotInvertible("GridFFT inversion requires a CircleLaurent element");
            int n = std::max(16, next_pow2(8 * (support_radius() + 1)));
            for (; n <= (1 << 16); n *= 2) {
                auto samples = sample_circle(n);
                bool vanishes = false;
                for (auto& s : samples) {
                    if (std::abs(s) < 1e-13) { vanishes = true; break; }
                    s = 1.0 / s;
                }
                if (vanishes)
                    throw NotInvertible("GridFFT inversion: symbol vanishes on the grid");
                CentreElement inv =
                    from_circle_samples(samples, std::min(tol * 1e-3, kPruneThreshold));
                if (mul(inv).sub(one_like(*this)).upper_norm() <= tol) return inv;
            }
            throw TruncationFailure("GridFFT inversion: residual above tol at max grid size");
        }
    }
    throw std::logic_error("bad strategy");
}

}  // namespace windex
