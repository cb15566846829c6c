#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace windex {

// Exact rational p/q, normalized with q > 0.  Used for rational rotation
// angles so that cocycle phases reduce to exact roots of unity.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    // (num * k) mod den, mapped to [0, den).  The reduced phase exponent of
    // e^{2*pi*i*(num/den)*k}.
    std::int64_t reduced_multiple(std::int64_t k) const {
        std::int64_t r = (num % den) * (k % den) % den;
        if (r < 0) r += den;
        return r;
    }

    bool operator==(const Rational&) const = default;

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace windex
