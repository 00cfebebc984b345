#pragma once

// Type-erased view of an algebra over ℚ[λ], optionally carrying a
// λ-derivation `d` and/or a Rota-Baxter operator `P`. Universal-property
// evaluations and the axiom checkers are written against this interface so
// any carrier (free objects, Hurwitz series, plain rationals) can be a target.

#include <functional>
#include <stdexcept>
#include <string>

#include "drb/scalar.hpp"

namespace drb {

template <class T>
struct AlgebraHandle {
    using value_type = T;
    using Unary = std::function<T(const T &)>;

    std::string name;
    std::function<T(const T &, const T &)> add;
    std::function<void(T &, const T &)> add_assign;  // optional in-place add
    std::function<T(const T &, const T &)> mul;
    std::function<T(const Scalar &, const T &)> scale;
    std::function<T()> zero;
    std::function<T()> one;
    std::function<bool(const T &, const T &)> equal;
    std::function<std::string(const T &)> show;
    Unary d;  // empty when the algebra has no derivation
    Unary P;  // empty when the algebra has no Rota-Baxter operator

    bool has_d() const { return static_cast<bool>(d); }
    bool has_P() const { return static_cast<bool>(P); }

    T sub(const T &a, const T &b) const { return add(a, scale(Scalar(-1L), b)); }
    void accumulate(T &acc, const T &x) const {
        if (add_assign)
            add_assign(acc, x);
        else
            acc = add(acc, x);
    }
    bool is_zero(const T &a) const { return equal(a, zero()); }

    T power(const T &x, unsigned n) const {
        T r = one();
        for (unsigned i = 0; i < n; ++i) r = mul(r, x);
        return r;
    }

    T apply_d(const T &x, unsigned times) const {
        T r = x;
        for (unsigned i = 0; i < times; ++i) r = d(r);
        return r;
    }
};

// Roles named after the structure they must carry.
template <class T>
using DiffAlgebraHandle = AlgebraHandle<T>;
template <class T>
using RBAlgebraHandle = AlgebraHandle<T>;
template <class T>
using DrbAlgebraHandle = AlgebraHandle<T>;

// ℚ[λ] as an algebra over itself (no d, no P).
AlgebraHandle<Scalar> scalar_algebra();

class UnmappedVariable : public std::runtime_error {
public:
    explicit UnmappedVariable(const std::string &variable)
        : std::runtime_error("no image given for variable '" + variable + "'"), variable_(variable) {}
    const std::string &variable() const { return variable_; }

private:
    std::string variable_;
};

class OrderMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace drb
