#pragma once

#include <map>
#include <vector>

#include "windex/centre.hpp"

namespace windex::toeplitz {

// Global sign relating the discrete Hardy-projection commutator trace to the
// symbolic (-1/2 pi i) tau(delta(a) b) side.  Measured once on the unit
// shift a = z, b = z^{-1}: the corner computation gives -1 while the
// symbolic side gives +1.
inline constexpr double kOrientation = -1.0;

// Semi-infinite Toeplitz operator with banded Laurent symbol: entry (j,k) is
// a_hat(j-k) for j,k >= 0.
struct BandedToeplitz {
    std::map<int, cplx> symbol;

    explicit BandedToeplitz(std::map<int, cplx> coeffs);
    static BandedToeplitz power(int n, cplx c = 1.0);  // symbol c z^n
    static BandedToeplitz from_centre(const CentreElement& laurent);

    int band() const;
    cplx entry(int j, int k) const;
};

// l1 distance of the symbol convolution a*b from the constant 1.
double symbol_inverse_residual(const BandedToeplitz& a, const BandedToeplitz& b);

// Exact trace of [T_a, T_b].  Both products are formed with the
// boundary-correct semi-infinite summation before subtraction; truncating
// first would force trace zero.  window <= 0 picks band_a + band_b + 1.
cplx commutator_trace(const BandedToeplitz& a, const BandedToeplitz& b, int window = 0);

// tau-Index via Cor-style commutator: commutator_trace(a, a_inv) after
// certifying that a_inv is an approximate symbol inverse (l1 residual 1e-8).
cplx numeric_index(const BandedToeplitz& a, const BandedToeplitz& a_inv);

// Truncated Neumann/geometric symbol inverse of (z - c) for |c| > 1, with
// l1 residual <= tol.
BandedToeplitz shifted_symbol_inverse(cplx c, double tol = 1e-9);

// Symbolic side of the Helton-Howe pairing for circle symbols:
// (-1/2 pi i) tau(delta(a) b) = sum_m m a_hat(m) b_hat(-m).
cplx helton_howe_symbolic(const BandedToeplitz& a, const BandedToeplitz& b);

// A trigonometric-polynomial symbol on the 2-torus with flow weight mu.
struct GridSymbol {
    struct Term {
        int n = 0;  // power of z
        int m = 0;  // power of w
        cplx coeff = 1.0;
    };
    std::vector<Term> terms;
    double mu = 0.0;

    cplx eval(cplx z, cplx w) const;
};

// Winding oracle: (1/2 pi i) grid mean of [f(flowed by h) - f]/h * 1/f over
// an n x n torus grid, with pairwise tree-sum reduction.
cplx numeric_wind(const GridSymbol& f, double h, int n);

// Diagonal Hardy projection on the Fourier mode window [lo, hi]: 1 on
// nonnegative modes.  Returned as a dense 0/1 diagonal.
std::vector<double> hardy_projection(int lo, int hi);
std::vector<double> hilbert_multiplier(int lo, int hi);  // H = 2P - 1

// T_a assembled as P (multiplication by a) P on the mode window, restricted
// to nonnegative modes; agrees with BandedToeplitz entries.
std::vector<std::vector<cplx>> toeplitz_from_projection(const BandedToeplitz& a, int window);

}  // namespace windex::toeplitz
