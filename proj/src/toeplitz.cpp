#include "windex/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace windex::toeplitz {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx tree_sum(std::vector<cplx>& v) {
    // Pairwise reduction: deterministic and well-conditioned.
    size_t n = v.size();
    while (n > 1) {
        const size_t half = (n + 1) / 2;
        for (size_t i = 0; i + half < n; ++i) v[i] += v[i + half];
        n = half;
    }
    return n == 0 ? cplx{0.0} : v[0];
}
}  // namespace

BandedToeplitz::BandedToeplitz(std::map<int, cplx> coeffs) : symbol(std::move(coeffs)) {
    for (auto it = symbol.begin(); it != symbol.end();) {
        if (std::abs(it->second) == 0.0)
            it = symbol.erase(it);
        else
            ++it;
    }
}

BandedToeplitz BandedToeplitz::power(int n, cplx c) { return BandedToeplitz({{n, c}}); }

BandedToeplitz BandedToeplitz::from_centre(const CentreElement& laurent) {
    if (laurent.model() != CentreModel::CircleLaurent)
        throw ModelMismatch("BandedToeplitz: needs a CircleLaurent symbol");
    return BandedToeplitz(laurent.coeffs());
}

int BandedToeplitz::band() const {
    int b = 0;
    for (const auto& [j, c] : symbol) b = std::max(b, std::abs(j));
    return b;
}

cplx BandedToeplitz::entry(int j, int k) const {
    auto it = symbol.find(j - k);
    return it == symbol.end() ? cplx{0.0} : it->second;
}

double symbol_inverse_residual(const BandedToeplitz& a, const BandedToeplitz& b) {
    std::map<int, cplx> conv;
    for (const auto& [p, c] : a.symbol)
        for (const auto& [q, d] : b.symbol) conv[p + q] += c * d;
    conv[0] -= 1.0;
    double res = 0.0;
    for (const auto& [p, c] : conv) res += std::abs(c);
    return res;
}

cplx commutator_trace(const BandedToeplitz& a, const BandedToeplitz& b, int window) {
    const int ba = a.band(), bb = b.band();
    const int n = window > 0 ? window : ba + bb + 1;
    // (T_a T_b)[j][k] = sum_{l >= 0} a_hat(j-l) b_hat(l-k); only the diagonal
    // is needed for the trace, and it is exactly zero past the corner.
    std::vector<cplx> diag(static_cast<size_t>(n), cplx{0.0});
    for (int j = 0; j < n; ++j) {
        cplx ab = 0.0, ba_term = 0.0;
        const int lmax = j + std::max(ba, bb);
        for (int l = std::max(0, j - std::max(ba, bb)); l <= lmax; ++l) {
            ab += a.entry(j, l) * b.entry(l, j);
            ba_term += b.entry(j, l) * a.entry(l, j);
        }
        diag[static_cast<size_t>(j)] = ab - ba_term;
    }
    return tree_sum(diag);
}

cplx numeric_index(const BandedToeplitz& a, const BandedToeplitz& a_inv) {
    const double res = symbol_inverse_residual(a, a_inv);
    if (res > 1e-8)
        throw InverseResidualTooLarge("numeric_index: symbol inverse residual " +
                                      std::to_string(res));
    return commutator_trace(a, a_inv);
}

BandedToeplitz shifted_symbol_inverse(cplx c, double tol) {
    const double r = std::abs(c);
    if (r <= 1.0)
        throw NotInvertible("shifted_symbol_inverse: |c| <= 1, zero on or inside the circle");
    // (z - c)^{-1} = -(1/c) sum_{k>=0} (z/c)^k; truncate once the l1 tail
    // certifies tol.
    std::map<int, cplx> inv;
    cplx term = -1.0 / c;
    for (int k = 0; k < 10000; ++k) {
        inv[k] = term;
        const double tail = std::abs(term) / (r - 1.0);
        if (tail <= tol) break;
        term /= c;
    }
    return BandedToeplitz(std::move(inv));
}

cplx helton_howe_symbolic(const BandedToeplitz& a, const BandedToeplitz& b) {
    cplx s = 0.0;
    for (const auto& [m, c] : a.symbol) {
        auto it = b.symbol.find(-m);
        if (it != b.symbol.end()) s += static_cast<double>(m) * c * it->second;
    }
    return s;
}

cplx GridSymbol::eval(cplx z, cplx w) const {
    cplx s = 0.0;
    for (const auto& t : terms)
        s += t.coeff * std::pow(z, t.n) * std::pow(w, t.m);
    return s;
}

cplx numeric_wind(const GridSymbol& f, double h, int n) {
    const cplx fz = std::polar(1.0, -kTwoPi * h);
    const cplx fw = std::polar(1.0, -kTwoPi * f.mu * h);
    std::vector<cplx> cells;
    cells.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    const double min_modulus = 10.0 * h;
    for (int j = 0; j < n; ++j) {
        const cplx z = std::polar(1.0, kTwoPi * j / n);
        for (int k = 0; k < n; ++k) {
            const cplx w = std::polar(1.0, kTwoPi * k / n);
            const cplx val = f.eval(z, w);
            if (std::abs(val) < min_modulus)
                throw SymbolVanishes("numeric_wind: |f| below certified minimum at grid point");
            const cplx flowed = f.eval(fz * z, fw * w);
            cells.push_back((flowed - val) / h / val);
        }
    }
    const cplx mean = tree_sum(cells) / static_cast<double>(cells.size());
    return mean / cplx(0.0, kTwoPi);  // 1/(2 pi i)
}

std::vector<double> hardy_projection(int lo, int hi) {
    std::vector<double> p;
    p.reserve(static_cast<size_t>(hi - lo + 1));
    for (int m = lo; m <= hi; ++m) p.push_back(m >= 0 ? 1.0 : 0.0);
    return p;
}

std::vector<double> hilbert_multiplier(int lo, int hi) {
    std::vector<double> h = hardy_projection(lo, hi);
    for (auto& v : h) v = 2.0 * v - 1.0;
    return h;
}

std::vector<std::vector<cplx>> toeplitz_from_projection(const BandedToeplitz& a, int window) {
    // Modes [-window, window]; multiplication by the symbol is the full-line
    // Laurent matrix; compress by P and restrict to modes [0, window].
    const int lo = -window, hi = window;
    const auto p = hardy_projection(lo, hi);
    std::vector<std::vector<cplx>> out(static_cast<size_t>(window + 1),
                                       std::vector<cplx>(static_cast<size_t>(window + 1)));
    for (int j = 0; j <= window; ++j)
        for (int k = 0; k <= window; ++k) {
            const int jj = j - lo, kk = k - lo;
            out[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                p[static_cast<size_t>(jj)] * a.entry(j, k) * p[static_cast<size_t>(kk)];
        }
    return out;
}

}  // namespace windex::toeplitz
