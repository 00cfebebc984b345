#pragma once

// Free differential algebras of weight λ on a set X: the commutative
// polynomial algebra k[Δ(X)] and the noncommutative one k^NC[Δ(X)], where
// Δ(X) = {x^(n)} are formal derivatives, with the derivation d_X.

#include <compare>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "drb/algebra.hpp"
#include "drb/lincomb.hpp"

namespace drb {

// x^(n): base variable x differentiated n times. Base names are interned, so
// copies are cheap and equal names compare by address.
class Symbol {
public:
    Symbol() : Symbol(std::string()) {}
    Symbol(const std::string &b, unsigned n = 0) : base_(&intern(b)), order(n) {}  // NOLINT
    Symbol(const char *b, unsigned n = 0) : Symbol(std::string(b), n) {}           // NOLINT

    const std::string &base() const { return *base_; }
    Symbol derived(unsigned times = 1) const {
        Symbol s = *this;
        s.order += times;
        return s;
    }
    std::string to_string() const { return *base_ + "_(" + std::to_string(order) + ")"; }

    friend bool operator==(const Symbol &a, const Symbol &b) { return a.base_ == b.base_ && a.order == b.order; }
    // Base name in string order, then derivative order.
    friend std::strong_ordering operator<=>(const Symbol &a, const Symbol &b) {
        if (a.base_ != b.base_) return *a.base_ <=> *b.base_;
        return a.order <=> b.order;
    }

private:
    static const std::string &intern(const std::string &name);

    const std::string *base_;

public:
    unsigned order = 0;
};

// Commutative word in Δ(X), kept sorted by (base, order). Empty is 1.
class CommMonomial {
public:
    CommMonomial() : factors_(&empty_factors()) {}
    explicit CommMonomial(std::vector<Symbol> factors);

    static CommMonomial unit() { return {}; }
    static CommMonomial from_symbol(const Symbol &s) { return CommMonomial({s}); }
    static CommMonomial product(const CommMonomial &a, const CommMonomial &b);

    const std::vector<Symbol> &factors() const { return *factors_; }
    std::size_t degree() const { return factors_->size(); }
    bool is_unit() const { return factors_->empty(); }
    CommMonomial drop_first() const;
    std::string to_string() const;

    friend bool operator==(const CommMonomial &a, const CommMonomial &b) { return a.factors_ == b.factors_; }
    // Basis order: shorter words first, then lexicographic on factors.
    friend std::strong_ordering operator<=>(const CommMonomial &a, const CommMonomial &b);

private:
    // Factor lists are interned, so copies share storage and equality is identity.
    static const std::vector<Symbol> *intern(std::vector<Symbol> sorted);
    static const std::vector<Symbol> &empty_factors();

    const std::vector<Symbol> *factors_;
};

// Noncommutative word in Δ(X). Empty is 1.
class NCWord {
public:
    NCWord() = default;
    explicit NCWord(std::vector<Symbol> factors) : factors_(std::move(factors)) {}

    static NCWord unit() { return {}; }
    static NCWord from_symbol(const Symbol &s) { return NCWord({s}); }
    static NCWord product(const NCWord &a, const NCWord &b);

    const std::vector<Symbol> &factors() const { return factors_; }
    std::size_t degree() const { return factors_.size(); }
    bool is_unit() const { return factors_.empty(); }
    NCWord drop_first() const;
    std::string to_string() const;

    friend bool operator==(const NCWord &, const NCWord &) = default;
    friend std::strong_ordering operator<=>(const NCWord &a, const NCWord &b);

private:
    std::vector<Symbol> factors_;
};

template <class W>
concept FreeWord = requires(const W &w, const Symbol &s) {
    { W::unit() } -> std::same_as<W>;
    { W::from_symbol(s) } -> std::same_as<W>;
    { W::product(w, w) } -> std::same_as<W>;
    { w.drop_first() } -> std::same_as<W>;
    { w.factors() } -> std::convertible_to<const std::vector<Symbol> &>;
};

using CommDiffElem = LinComb<CommMonomial>;
using NCDiffElem = LinComb<NCWord>;

template <FreeWord W>
LinComb<W> operator*(const LinComb<W> &a, const LinComb<W> &b) {
    return bilinear(a, b, [](const W &x, const W &y) { return LinComb<W>(W::product(x, y)); });
}

template <FreeWord W>
LinComb<W> unit_elem() {
    return LinComb<W>(W::unit());
}

template <FreeWord W>
LinComb<W> symbol_elem(const Symbol &s) {
    return LinComb<W>(W::from_symbol(s));
}

template <FreeWord W>
LinComb<W> pow(const LinComb<W> &x, unsigned n) {
    LinComb<W> r = unit_elem<W>();
    for (unsigned i = 0; i < n; ++i) r = r * x;
    return r;
}

// d_X on a single word: x^(n) -> x^(n+1), d(1) = 0, and for longer words
// d(u1 w') = d(u1) w' + u1 d(w') + λ d(u1) d(w'), splitting off the first factor.
template <FreeWord W>
LinComb<W> d_word(const W &w) {
    const auto &f = w.factors();
    if (f.empty()) return {};
    if (f.size() == 1) return LinComb<W>(W::from_symbol(f.front().derived()));
    const LinComb<W> u1(W::from_symbol(f.front()));
    const LinComb<W> du1(W::from_symbol(f.front().derived()));
    const W rest = w.drop_first();
    const LinComb<W> drest = d_word(rest);
    LinComb<W> out = du1 * LinComb<W>(rest);
    out += u1 * drest;
    out.add_scaled(du1 * drest, Scalar::lambda());
    return out;
}

template <FreeWord W>
LinComb<W> d_X(const LinComb<W> &e) {
    return e.map_linear([](const W &w) { return d_word(w); });
}

// d(x^n) = Σ_{i=1}^{n} C(n,i) λ^{i-1} x^{n-i} d(x)^i, evaluated in any
// algebra with a derivation. Throws for n = 0.
template <class T>
T power_rule_rhs(const DiffAlgebraHandle<T> &alg, const T &x, unsigned n) {
    if (n == 0) throw std::invalid_argument("power_rule_rhs: exponent must be positive");
    const T dx = alg.d(x);
    T sum = alg.zero();
    for (unsigned i = 1; i <= n; ++i) {
        T term = alg.mul(alg.power(x, n - i), alg.power(dx, i));
        sum = alg.add(sum, alg.scale(binomial(n, i) * lambda_pow(i - 1), term));
    }
    return sum;
}

// d^n(xy) = Σ_{k=0}^{n} Σ_{j=0}^{n-k} C(n,k) C(n-k,j) λ^k d^{n-j}(x) d^{k+j}(y).
template <class T>
T iterated_leibniz_rhs(const DiffAlgebraHandle<T> &alg, const T &x, const T &y, unsigned n) {
    std::vector<T> dx{x}, dy{y};
    for (unsigned i = 1; i <= n; ++i) {
        dx.push_back(alg.d(dx.back()));
        dy.push_back(alg.d(dy.back()));
    }
    T sum = alg.zero();
    for (unsigned k = 0; k <= n; ++k)
        for (unsigned j = 0; j <= n - k; ++j) {
            Scalar c = binomial(n, k) * binomial(n - k, j) * lambda_pow(k);
            sum = alg.add(sum, alg.scale(c, alg.mul(dx[n - j], dy[k + j])));
        }
    return sum;
}

// Evaluates the unique λ-differential morphism extending f: X -> R on e.
// x^(n) goes to d^n(f(x)); words go to ordered products of their factors.
template <class T, FreeWord W>
T extend_hom(const std::map<std::string, T> &f, const DiffAlgebraHandle<T> &target, const LinComb<W> &e) {
    T out = target.zero();
    for (const auto &[word, coeff] : e) {
        T value = target.one();
        for (const Symbol &s : word.factors()) {
            auto it = f.find(s.base());
            if (it == f.end()) throw UnmappedVariable(s.base());
            value = target.mul(value, target.apply_d(it->second, s.order));
        }
        out = target.add(out, target.scale(coeff, value));
    }
    return out;
}

// Images of the generators Δ(X) in a target algebra.
template <class T>
using SymbolImage = std::function<T(const Symbol &)>;

// x^(n) -> d^n(f(x)); throws UnmappedVariable for a base outside f.
template <class T>
SymbolImage<T> differential_images(std::map<std::string, T> f, DiffAlgebraHandle<T> target) {
    return [f = std::move(f), target = std::move(target)](const Symbol &s) {
        auto it = f.find(s.base());
        if (it == f.end()) throw UnmappedVariable(s.base());
        return target.apply_d(it->second, s.order);
    };
}

// Ordered product of the images of a word's factors (1 for the empty word).
template <class T, FreeWord W>
T evaluate_word(const SymbolImage<T> &image, const AlgebraHandle<T> &target, const W &word) {
    T value = target.one();
    for (const Symbol &s : word.factors()) value = target.mul(value, image(s));
    return value;
}

std::string to_text(const CommDiffElem &e);
std::string to_text(const NCDiffElem &e);

DiffAlgebraHandle<CommDiffElem> comm_diff_algebra();
DiffAlgebraHandle<NCDiffElem> nc_diff_algebra();

}  // namespace drb
