#pragma once

// λ-Hurwitz series: functions ℕ -> A under the λ-deformed binomial
// convolution, truncated at a per-series order N. Entry n of a product only
// depends on entries ≤ n of the factors, so every retained entry is exact.
//
// Order bookkeeping: hmul keeps N, partial drops to N-1, pi raises to N+1.
// Binary operations on series of different order throw OrderMismatch;
// truncate_to() is the explicit coercion.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drb/algebra.hpp"

namespace drb {

template <class A>
class HurwitzSeries {
public:
    // entries.size() must be at least 1; order = entries.size() - 1.
    explicit HurwitzSeries(std::vector<A> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw std::invalid_argument("HurwitzSeries needs at least one entry");
    }

    std::size_t order() const { return entries_.size() - 1; }
    const A &operator[](std::size_t n) const { return entries_.at(n); }
    const std::vector<A> &entries() const { return entries_; }

    friend bool operator==(const HurwitzSeries &, const HurwitzSeries &) = default;

private:
    std::vector<A> entries_;
};

namespace hurwitz_detail {
template <class A>
void require_same_order(const HurwitzSeries<A> &f, const HurwitzSeries<A> &g, const char *what) {
    if (f.order() != g.order())
        throw OrderMismatch(std::string(what) + ": series orders differ (" + std::to_string(f.order()) + " vs " +
                            std::to_string(g.order()) + ")");
}
}  // namespace hurwitz_detail

template <class A>
HurwitzSeries<A> zero_series(const AlgebraHandle<A> &base, std::size_t order) {
    return HurwitzSeries<A>(std::vector<A>(order + 1, base.zero()));
}

template <class A>
HurwitzSeries<A> kappa(const AlgebraHandle<A> &base, const A &a, std::size_t order) {
    std::vector<A> e(order + 1, base.zero());
    e[0] = a;
    return HurwitzSeries<A>(std::move(e));
}

template <class A>
HurwitzSeries<A> unit_series(const AlgebraHandle<A> &base, std::size_t order) {
    return kappa(base, base.one(), order);
}

template <class A>
A epsilon(const HurwitzSeries<A> &f) {
    return f[0];
}

template <class A>
HurwitzSeries<A> truncate_to(const HurwitzSeries<A> &f, std::size_t order) {
    if (order > f.order())
        throw OrderMismatch("truncate_to: cannot extend order " + std::to_string(f.order()) + " to " +
                            std::to_string(order));
    return HurwitzSeries<A>(std::vector<A>(f.entries().begin(), f.entries().begin() + order + 1));
}

template <class A>
HurwitzSeries<A> hadd(const AlgebraHandle<A> &base, const HurwitzSeries<A> &f, const HurwitzSeries<A> &g) {
    hurwitz_detail::require_same_order(f, g, "hadd");
    std::vector<A> e;
    e.reserve(f.order() + 1);
    for (std::size_t n = 0; n <= f.order(); ++n) e.push_back(base.add(f[n], g[n]));
    return HurwitzSeries<A>(std::move(e));
}

template <class A>
HurwitzSeries<A> hscale(const AlgebraHandle<A> &base, const Scalar &c, const HurwitzSeries<A> &f) {
    std::vector<A> e;
    e.reserve(f.order() + 1);
    for (const A &a : f.entries()) e.push_back(base.scale(c, a));
    return HurwitzSeries<A>(std::move(e));
}

namespace hurwitz_detail {

// Coefficient of f(a) g(b) in (fg)(n): with j = n - a and k = a + b - n,
// C(n,k) C(n-k,j) λ^k, for a, b ≤ n and a + b ≥ n.
inline Scalar hmul_coeff(unsigned n, unsigned a, unsigned b) {
    const unsigned k = a + b - n;
    const unsigned j = n - a;
    return binomial(n, k) * binomial(n - k, j) * lambda_pow(k);
}

template <class A>
concept InPlaceLinear = requires(A &acc, const A &x, const Scalar &c) { acc.add_scaled(x, c); };

}  // namespace hurwitz_detail

// (fg)(n) = Σ_{k=0}^{n} Σ_{j=0}^{n-k} C(n,k) C(n-k,j) λ^k f(n-j) g(k+j)
// Each product f(a) g(b) is formed once and reused for every n it feeds.
// Linear-combination carriers are accumulated in place, which assumes their
// handle scales coefficientwise.
template <class A>
HurwitzSeries<A> hmul(const AlgebraHandle<A> &base, const HurwitzSeries<A> &f, const HurwitzSeries<A> &g) {
    hurwitz_detail::require_same_order(f, g, "hmul");
    const unsigned order = static_cast<unsigned>(f.order());
    std::vector<std::vector<std::optional<A>>> prod(order + 1, std::vector<std::optional<A>>(order + 1));
    auto product = [&](unsigned a, unsigned b) -> const A & {
        auto &slot = prod[a][b];
        if (!slot) slot = base.mul(f[a], g[b]);
        return *slot;
    };
    std::vector<A> e;
    e.reserve(order + 1);
    for (unsigned n = 0; n <= order; ++n) {
        A acc = base.zero();
        for (unsigned a = 0; a <= n; ++a)
            for (unsigned b = n - a; b <= n; ++b) {
                if (base.is_zero(f[a]) || base.is_zero(g[b])) continue;
                const Scalar c = hurwitz_detail::hmul_coeff(n, a, b);
                if constexpr (hurwitz_detail::InPlaceLinear<A>) {
                    acc.add_scaled(product(a, b), c);
                } else {
                    acc = base.add(acc, base.scale(c, product(a, b)));
                }
            }
        e.push_back(std::move(acc));
    }
    return HurwitzSeries<A>(std::move(e));
}

// (∂f)(n) = f(n+1)
template <class A>
HurwitzSeries<A> partial(const HurwitzSeries<A> &f) {
    if (f.order() == 0) throw OrderMismatch("partial: an order-0 series cannot be shifted");
    return HurwitzSeries<A>(std::vector<A>(f.entries().begin() + 1, f.entries().end()));
}

// (πf)(0) = 0, (πf)(n) = f(n-1)
template <class A>
HurwitzSeries<A> pi(const AlgebraHandle<A> &base, const HurwitzSeries<A> &f) {
    std::vector<A> e;
    e.reserve(f.order() + 2);
    e.push_back(base.zero());
    e.insert(e.end(), f.entries().begin(), f.entries().end());
    return HurwitzSeries<A>(std::move(e));
}

// (η(x))(n) = d^n(x), the cofree comparison map for (R, d).
template <class R>
HurwitzSeries<R> eta(const DiffAlgebraHandle<R> &source, const R &x, std::size_t order) {
    std::vector<R> e{x};
    for (std::size_t n = 1; n <= order; ++n) e.push_back(source.d(e.back()));
    return HurwitzSeries<R>(std::move(e));
}

// ((Dh)(f))(n) = h(f(n))
template <class A, class H>
auto lift_D(H &&h, const HurwitzSeries<A> &f) {
    using B = std::invoke_result_t<H, const A &>;
    std::vector<B> e;
    e.reserve(f.order() + 1);
    for (const A &a : f.entries()) e.push_back(h(a));
    return HurwitzSeries<B>(std::move(e));
}

// f~(x)(n) = f(d^n(x)): the differential morphism (R, d) -> (DA, ∂) lifting
// the algebra map f: R -> A, built as Df ∘ η.
template <class R, class F>
auto cofree_lift(F &&f, const DiffAlgebraHandle<R> &source, const R &x, std::size_t order) {
    return lift_D(std::forward<F>(f), eta(source, x, order));
}

template <class A>
bool series_equal(const AlgebraHandle<A> &base, const HurwitzSeries<A> &f, const HurwitzSeries<A> &g) {
    if (f.order() != g.order()) return false;
    for (std::size_t n = 0; n <= f.order(); ++n)
        if (!base.equal(f[n], g[n])) return false;
    return true;
}

template <class A>
std::string to_text(const AlgebraHandle<A> &base, const HurwitzSeries<A> &f) {
    std::string out = "[";
    for (std::size_t n = 0; n <= f.order(); ++n) {
        if (n > 0) out += ", ";
        out += base.show(f[n]);
    }
    return out + "]";
}

// DA as a differential Rota-Baxter algebra (d = ∂, P = π) at nominal order N.
// Mixed-order operands are truncated to the smaller order and equality
// compares the common retained range, so identities mixing ∂ (order -1) and
// π (order +1) are compared on exactly the entries both sides determine.
template <class A>
DrbAlgebraHandle<HurwitzSeries<A>> hurwitz_algebra(const AlgebraHandle<A> &base, std::size_t order) {
    using S = HurwitzSeries<A>;
    auto common = [](const S &f, const S &g) {
        std::size_t m = std::min(f.order(), g.order());
        return std::pair<S, S>(truncate_to(f, m), truncate_to(g, m));
    };
    DrbAlgebraHandle<S> h;
    h.name = "hurwitz(" + base.name + ", N=" + std::to_string(order) + ")";
    h.add = [base, common](const S &f, const S &g) {
        auto [a, b] = common(f, g);
        return hadd(base, a, b);
    };
    h.mul = [base, common](const S &f, const S &g) {
        auto [a, b] = common(f, g);
        return hmul(base, a, b);
    };
    h.scale = [base](const Scalar &c, const S &f) { return hscale(base, c, f); };
    h.zero = [base, order] { return zero_series(base, order); };
    h.one = [base, order] { return unit_series(base, order); };
    h.equal = [base, common](const S &f, const S &g) {
        auto [a, b] = common(f, g);
        return series_equal(base, a, b);
    };
    h.show = [base](const S &f) { return to_text(base, f); };
    h.d = [](const S &f) { return partial(f); };
    h.P = [base](const S &f) { return pi(base, f); };
    return h;
}

}  // namespace drb
