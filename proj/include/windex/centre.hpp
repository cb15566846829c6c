#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "windex/errors.hpp"

namespace windex {

using cplx = std::complex<double>;

enum class CentreModel { Scalar, FinitePoints, CircleLaurent };

enum class InversionStrategy { Exact, Neumann, GridFFT };

const char* to_string(CentreModel m);
const char* to_string(InversionStrategy s);

// Coefficients below this threshold are dropped after every CircleLaurent
// operation so supports stay finite under Neumann / GridFFT.
inline constexpr double kPruneThreshold = 1e-14;

// An element of the abelian centre Z in one of three concrete models:
//   Scalar        -- a single complex number (Z = C)
//   FinitePoints  -- a function on a k-point set X (Z = C(X))
//   CircleLaurent -- a Laurent polynomial sum c_p W^p (Z = C*(W) = C(T))
class CentreElement {
public:
    static CentreElement scalar(cplx v);
    static CentreElement finite(std::vector<cplx> values);
    static CentreElement laurent(std::map<int, cplx> coeffs);
    // The monomial a * W^p.
    static CentreElement laurent_monomial(int p, cplx a = 1.0);

    static CentreElement one(CentreModel model, int k = 1);
    static CentreElement zero(CentreModel model, int k = 1);
    static CentreElement one_like(const CentreElement& c);
    static CentreElement zero_like(const CentreElement& c);

    CentreModel model() const { return model_; }
    // Number of points for FinitePoints, 1 otherwise.
    int points() const { return static_cast<int>(values_.size()); }

    const std::vector<cplx>& values() const { return values_; }
    const std::map<int, cplx>& coeffs() const { return coeffs_; }

    bool same_shape(const CentreElement& other) const;
    bool is_zero() const;

    CentreElement add(const CentreElement& other) const;
    CentreElement sub(const CentreElement& other) const;
    CentreElement mul(const CentreElement& other) const;
    CentreElement scale(cplx s) const;
    CentreElement adjoint() const;

    bool is_self_adjoint(double tol = 1e-12) const;

    // lower <= ||c||_inf <= upper.  upper is the l1 sum of coefficient
    // moduli; lower is the exact max (Scalar/FinitePoints) or the max over
    // a 1024-point circle grid (CircleLaurent).
    std::pair<double, double> sup_norm_bounds() const;
    double upper_norm() const { return sup_norm_bounds().second; }

    CentreElement invert(InversionStrategy strategy, double tol = 1e-12) const;

    // Largest |p| in the CircleLaurent support (0 for other models).
    int support_radius() const;

    // Value at the grid point e^{2*pi*i*j/n}; Scalar/FinitePoints values are
    // constant in j (FinitePoints is evaluated pointwise elsewhere).
    cplx eval_circle(int j, int n) const;

    // Samples a CircleLaurent element on an n-point circle grid.
    std::vector<cplx> sample_circle(int n) const;
    // Inverse transform: recovers Laurent coefficients with exponents in
    // [-n/2, n/2) from n samples, pruning below `prune`.
    static CentreElement from_circle_samples(const std::vector<cplx>& samples,
                                             double prune = kPruneThreshold);

    // Pointwise exp (Scalar/FinitePoints only; CircleLaurent exponentials go
    // through the sampling path in the flow).
    CentreElement exp_pointwise() const;

    bool approx_equal(const CentreElement& other, double tol = 1e-12) const;

private:
    CentreModel model_ = CentreModel::Scalar;
    std::vector<cplx> values_;      // Scalar: size 1; FinitePoints: size k
    std::map<int, cplx> coeffs_;    // CircleLaurent

    void prune();
    void require_same(const CentreElement& other, const char* op) const;
};

}  // namespace windex
