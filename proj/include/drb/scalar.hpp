#pragma once

// Ground ring: polynomials in the formal weight λ with exact rational
// coefficients. Every identity in the library is checked over ℚ[λ], so a
// passing check holds for every numeric specialization of the weight.

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace drb {

using Rational = mpq_class;

std::string to_string(const Rational &q);

class Scalar {
public:
    Scalar() = default;
    Scalar(long value);  // NOLINT(google-explicit-constructor)
    Scalar(const Rational &value);  // NOLINT(google-explicit-constructor)

    static Scalar lambda();
    static Scalar monomial(const Rational &coeff, std::size_t degree);

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    Rational coeff(std::size_t degree) const;
    std::size_t term_count() const;
    bool is_one() const;
    bool is_minus_one() const;

    Scalar &operator+=(const Scalar &rhs);
    Scalar &operator-=(const Scalar &rhs);
    Scalar &operator*=(const Scalar &rhs);
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(const Scalar &a, const Scalar &b);
    friend bool operator==(const Scalar &a, const Scalar &b) = default;

    Scalar pow(unsigned exponent) const;
    Rational eval_at(const Rational &point) const;

    // Canonical text, ascending in λ: `3/2 + 2*L + L^2`. Zero prints as `0`.
    std::string to_string() const;

    // Dense coefficients, index = degree, no trailing zero.
    const std::vector<Rational> &coefficients() const { return coeffs_; }

private:
    void trim();

    std::vector<Rational> coeffs_;
};

inline Scalar add(const Scalar &a, const Scalar &b) { return a + b; }
inline Scalar mul(const Scalar &a, const Scalar &b) { return a * b; }
inline Rational eval_at(const Scalar &a, const Rational &point) { return a.eval_at(point); }

// λ^k
Scalar lambda_pow(unsigned k);
// C(n, k) as an exact integer scalar.
Scalar binomial(unsigned n, unsigned k);

}  // namespace drb
