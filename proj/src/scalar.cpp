#include "drb/scalar.hpp"

#include <algorithm>

namespace drb {

std::string to_string(const Rational &q) { return q.get_str(); }

Scalar::Scalar(long value) {
    if (value != 0) coeffs_.emplace_back(value);
}

Scalar::Scalar(const Rational &value) {
    if (sgn(value) != 0) coeffs_.push_back(value);
}

Scalar Scalar::lambda() { return monomial(Rational(1), 1); }

Scalar Scalar::monomial(const Rational &coeff, std::size_t degree) {
    Scalar s;
    if (sgn(coeff) == 0) return s;
    s.coeffs_.assign(degree + 1, Rational(0));
    s.coeffs_[degree] = coeff;
    return s;
}

Rational Scalar::coeff(std::size_t degree) const {
    return degree < coeffs_.size() ? coeffs_[degree] : Rational(0);
}

std::size_t Scalar::term_count() const {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const Rational &c) { return sgn(c) != 0; }));
}

bool Scalar::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
bool Scalar::is_minus_one() const { return coeffs_.size() == 1 && coeffs_[0] == -1; }

void Scalar::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Scalar &Scalar::operator+=(const Scalar &rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

Scalar &Scalar::operator*=(const Scalar &rhs) { return *this = *this * rhs; }

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto &c : r.coeffs_) c = -c;
    return r;
}

Scalar operator*(const Scalar &a, const Scalar &b) {
    Scalar r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    // b = q λ^k: shift and scale
    if (std::all_of(b.coeffs_.begin(), b.coeffs_.end() - 1, [](const Rational &q) { return sgn(q) == 0; })) {
        const std::size_t k = b.coeffs_.size() - 1;
        const Rational &q = b.coeffs_.back();
        r.coeffs_.reserve(a.coeffs_.size() + k);
        r.coeffs_.resize(k);
        for (const Rational &c : a.coeffs_) r.coeffs_.push_back(q == 1 ? c : Rational(c * q));
        return r;
    }
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    Rational t;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (sgn(b.coeffs_[j]) == 0) continue;
            mpq_mul(t.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
            r.coeffs_[i + j] += t;
        }
    }
    r.trim();
    return r;
}

Scalar Scalar::pow(unsigned exponent) const {
    Scalar result(1L);
    Scalar base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

Rational Scalar::eval_at(const Rational &point) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * point + *it;
    return acc;
}

std::string Scalar::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational &c = coeffs_[k];
        if (sgn(c) == 0) continue;
        Rational mag = abs(c);
        std::string body;
        if (k == 0) {
            body = mag.get_str();
        } else {
            std::string power = k == 1 ? "L" : "L^" + std::to_string(k);
            body = mag == 1 ? power : mag.get_str() + "*" + power;
        }
        if (first) {
            out = sgn(c) < 0 ? "-" + body : body;
            first = false;
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
            out += body;
        }
    }
    return out;
}

Scalar lambda_pow(unsigned k) { return Scalar::monomial(Rational(1), k); }

Scalar binomial(unsigned n, unsigned k) {
    if (k > n) return Scalar();
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Scalar(Rational(r));
}

}  // namespace drb
