#pragma once

// Finite formal linear combinations of basis objects with Scalar
// coefficients. Every algebra in the library stores its elements this way;
// exact equality is map equality because zero coefficients are never kept.

#include <concepts>
#include <functional>
#include <map>
#include <string>
#include <type_traits>
#include <utility>

#include "drb/scalar.hpp"

namespace drb {

template <class Key, class Compare = std::less<Key>>
class LinComb {
public:
    using key_type = Key;
    using map_type = std::map<Key, Scalar, Compare>;
    using const_iterator = typename map_type::const_iterator;

    LinComb() = default;
    explicit LinComb(Key key, Scalar coeff = Scalar(1L)) { add_term(std::move(key), std::move(coeff)); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }

    Scalar coeff(const Key &key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? Scalar() : it->second;
    }

    void add_term(const Key &key, const Scalar &coeff) { add_term<const Key &, const Scalar &>(key, coeff); }

    // Moves rvalue keys and coefficients into new nodes.
    template <class K, class C>
        requires std::same_as<std::remove_cvref_t<K>, Key> && std::same_as<std::remove_cvref_t<C>, Scalar>
    void add_term(K &&key, C &&coeff) {
        if (coeff.is_zero()) return;
        auto it = terms_.lower_bound(key);
        if (it == terms_.end() || terms_.key_comp()(key, it->first)) {
            terms_.emplace_hint(it, std::forward<K>(key), std::forward<C>(coeff));
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    // this += c * other
    void add_scaled(const LinComb &other, const Scalar &c) {
        if (c.is_zero()) return;
        if (c.is_one()) {
            *this += other;
            return;
        }
        for (const auto &[k, v] : other.terms_) add_term(k, v * c);
    }

    LinComb &operator+=(const LinComb &rhs) {
        for (const auto &[k, v] : rhs.terms_) add_term(k, v);
        return *this;
    }
    LinComb &operator-=(const LinComb &rhs) {
        for (const auto &[k, v] : rhs.terms_) add_term(k, -v);
        return *this;
    }

    friend LinComb operator+(LinComb a, const LinComb &b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb &b) { return a -= b; }
    friend LinComb operator-(const LinComb &a) {
        LinComb r;
        for (const auto &[k, v] : a.terms_) r.terms_.emplace(k, -v);
        return r;
    }
    friend LinComb operator*(const Scalar &c, const LinComb &a) {
        LinComb r;
        if (c.is_zero()) return r;
        for (const auto &[k, v] : a.terms_) r.add_term(k, c * v);
        return r;
    }
    friend bool operator==(const LinComb &a, const LinComb &b) { return a.terms_ == b.terms_; }

    // Linear extension of a basis map Key -> LinComb<K2>.
    template <class F>
    auto map_linear(F &&f) const {
        using Result = std::invoke_result_t<F, const Key &>;
        Result out;
        for (const auto &[k, v] : terms_) out.add_scaled(f(k), v);
        return out;
    }

    // Coefficient-wise transform, e.g. specializing λ.
    template <class F>
    LinComb map_coeffs(F &&f) const {
        LinComb r;
        for (const auto &[k, v] : terms_) r.add_term(k, f(v));
        return r;
    }

private:
    map_type terms_;
};

// Bilinear extension of a basis product Key x Key -> LinComb.
template <class Key, class Compare, class F>
auto bilinear(const LinComb<Key, Compare> &u, const LinComb<Key, Compare> &v, F &&basis_product) {
    using Result = std::invoke_result_t<F, const Key &, const Key &>;
    Result out;
    for (const auto &[a, ca] : u)
        for (const auto &[b, cb] : v) out.add_scaled(basis_product(a, b), ca * cb);
    return out;
}

// Renders `c` as the coefficient of a basis element printed as `basis`.
// `basis_is_unit` drops the basis text entirely (so 3*1 prints as 3).
std::string format_term(const Scalar &c, const std::string &basis, bool basis_is_unit);

// Joins already formatted terms, folding a leading '-' into " - ".
std::string join_terms(const std::vector<std::string> &terms);

template <class Key, class Compare, class Show, class IsUnit>
std::string to_text(const LinComb<Key, Compare> &lc, Show &&show, IsUnit &&is_unit) {
    if (lc.is_zero()) return "0";
    std::vector<std::string> parts;
    parts.reserve(lc.size());
    for (const auto &[k, v] : lc) parts.push_back(format_term(v, show(k), is_unit(k)));
    return join_terms(parts);
}

}  // namespace drb
