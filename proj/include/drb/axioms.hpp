#pragma once

// Seeded random generators, the axiom and morphism checkers, and the small
// fixtures used to exercise them (degenerate scalar instance, difference
// operator on ℚ[t], deliberately broken variants).
//
// Sample i of a check draws from an RNG seeded by (seed, i), so a verdict is
// reproducible from (identity, seed, samples) and does not depend on how the
// samples are spread over worker threads.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "drb/algebra.hpp"
#include "drb/decorated.hpp"
#include "drb/forest.hpp"
#include "drb/freediff.hpp"
#include "drb/hurwitz.hpp"
#include "drb/shuffle.hpp"

namespace drb {

using Rng = std::mt19937_64;

Rng sample_rng(std::uint64_t seed, std::uint64_t index);

// Size bounds. A bound of 0 yields the unit (•, 1, the unit series).
struct GenOptions {
    std::size_t max_vertices = 6;    // forests, decorated forests
    std::size_t max_slots = 6;       // tensor words
    std::size_t max_degree = 3;      // monomials and words
    unsigned max_order = 2;          // derivative order of generated symbols
    std::size_t max_terms = 3;       // basis terms per element
    std::vector<std::string> variables{"x", "y"};
};

Scalar random_scalar(Rng &rng);
Rational random_rational(Rng &rng);
Symbol random_symbol(Rng &rng, const GenOptions &opt);
Forest random_forest(Rng &rng, std::size_t max_vertices);
Forest random_forest_exact(Rng &rng, std::size_t vertices);
DecForest random_dec_forest(Rng &rng, const GenOptions &opt);
CommMonomial random_comm_monomial(Rng &rng, const GenOptions &opt);
NCWord random_nc_word(Rng &rng, const GenOptions &opt);
TensorWord random_tensor_word(Rng &rng, const GenOptions &opt);

ForestElem random_forest_elem(Rng &rng, const GenOptions &opt);
DecElem random_dec_elem(Rng &rng, const GenOptions &opt);
CommDiffElem random_comm_elem(Rng &rng, const GenOptions &opt);
NCDiffElem random_nc_elem(Rng &rng, const GenOptions &opt);
ShaElem random_sha_elem(Rng &rng, const GenOptions &opt);

template <class A, class Gen>
HurwitzSeries<A> random_series(Rng &rng, std::size_t order, Gen &&entry) {
    std::vector<A> e;
    e.reserve(order + 1);
    for (std::size_t n = 0; n <= order; ++n) e.push_back(entry(rng));
    return HurwitzSeries<A>(std::move(e));
}

// Every finite forest with exactly n vertices, and with at most n.
std::vector<Forest> all_forests(std::size_t n);
std::vector<Forest> all_forests_up_to(std::size_t n);
// Every decoration of the given forests by the symbols.
std::vector<DecForest> all_dec_forests_up_to(std::size_t vertices, const std::vector<Symbol> &symbols);

template <class T>
struct AlgebraUnderTest {
    AlgebraHandle<T> alg;
    std::function<T(Rng &)> gen;
};

struct CheckOptions {
    std::size_t samples = 300;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    // Skip the d(1) = 0 assertion (weak differential operators).
    bool weak = false;
    // Counterexamples kept in the report.
    std::size_t max_failures = 5;
};

struct CheckReport {
    std::string identity;
    std::string algebra;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    // Failing samples; a failed precondition such as d(1) = 0 is reported in
    // `failures` without being counted here.
    std::size_t failed = 0;
    std::vector<std::string> failures;
    double elapsed_ms = 0;

    bool passed() const { return failures.empty(); }
    std::string to_text() const;
    std::string to_json() const;
};

namespace axioms_detail {

// Runs `sample(i)` for i in [0, n); each returns a counterexample text or
// nothing. Results are merged by sample index.
CheckReport run_samples(std::string identity, std::string algebra, const CheckOptions &opt,
                        const std::function<std::optional<std::string>(std::size_t)> &sample,
                        const std::optional<std::string> &preamble_failure = std::nullopt);

template <class T>
std::string show_inputs(const AlgebraHandle<T> &alg, std::initializer_list<std::pair<const char *, const T *>> vals,
                        const T &residual) {
    std::string out;
    for (const auto &[name, v] : vals) out += std::string(name) + " = " + alg.show(*v) + "; ";
    return out + "residual = " + alg.show(residual);
}

}  // namespace axioms_detail

// d(xy) - d(x)y - x d(y) - λ d(x)d(y) = 0, and d(1) = 0 unless opt.weak.
template <class T>
CheckReport check_leibniz(const AlgebraUnderTest<T> &aut, const CheckOptions &opt) {
    const auto &A = aut.alg;
    std::optional<std::string> unit_failure;
    if (!opt.weak && !A.is_zero(A.d(A.one()))) unit_failure = "d(1) = " + A.show(A.d(A.one())) + " is not 0";
    return axioms_detail::run_samples(
        opt.weak ? "weak-leibniz" : "leibniz", A.name, opt,
        [&](std::size_t i) -> std::optional<std::string> {
            Rng rng = sample_rng(opt.seed, i);
            const T x = aut.gen(rng);
            const T y = aut.gen(rng);
            const T dx = A.d(x), dy = A.d(y);
            T rhs = A.mul(dx, y);
            A.accumulate(rhs, A.mul(x, dy));
            A.accumulate(rhs, A.scale(Scalar::lambda(), A.mul(dx, dy)));
            const T lhs = A.d(A.mul(x, y));
            if (A.equal(lhs, rhs)) return std::nullopt;
            return axioms_detail::show_inputs(A, {{"x", &x}, {"y", &y}}, A.sub(lhs, rhs));
        },
        unit_failure);
}

// P(x)P(y) - P(xP(y)) - P(P(x)y) - λP(xy) = 0
template <class T>
CheckReport check_rb(const AlgebraUnderTest<T> &aut, const CheckOptions &opt) {
    const auto &A = aut.alg;
    return axioms_detail::run_samples("rb", A.name, opt, [&](std::size_t i) -> std::optional<std::string> {
        Rng rng = sample_rng(opt.seed, i);
        const T x = aut.gen(rng);
        const T y = aut.gen(rng);
        const T px = A.P(x), py = A.P(y);
        const T lhs = A.mul(px, py);
        T rhs = A.P(A.mul(x, py));
        A.accumulate(rhs, A.P(A.mul(px, y)));
        A.accumulate(rhs, A.scale(Scalar::lambda(), A.P(A.mul(x, y))));
        if (A.equal(lhs, rhs)) return std::nullopt;
        return axioms_detail::show_inputs(A, {{"x", &x}, {"y", &y}}, A.sub(lhs, rhs));
    });
}

// d(P(x)) = x
template <class T>
CheckReport check_section(const AlgebraUnderTest<T> &aut, const CheckOptions &opt) {
    const auto &A = aut.alg;
    return axioms_detail::run_samples("section", A.name, opt, [&](std::size_t i) -> std::optional<std::string> {
        Rng rng = sample_rng(opt.seed, i);
        const T x = aut.gen(rng);
        const T dpx = A.d(A.P(x));
        if (A.equal(dpx, x)) return std::nullopt;
        return axioms_detail::show_inputs(A, {{"x", &x}}, A.sub(dpx, x));
    });
}

// (xy)z = x(yz), 1x = x = x1
template <class T>
CheckReport check_assoc(const AlgebraUnderTest<T> &aut, const CheckOptions &opt) {
    const auto &A = aut.alg;
    return axioms_detail::run_samples("assoc", A.name, opt, [&](std::size_t i) -> std::optional<std::string> {
        Rng rng = sample_rng(opt.seed, i);
        const T x = aut.gen(rng);
        const T y = aut.gen(rng);
        const T z = aut.gen(rng);
        const T lhs = A.mul(A.mul(x, y), z);
        const T rhs = A.mul(x, A.mul(y, z));
        if (!A.equal(lhs, rhs)) return axioms_detail::show_inputs(A, {{"x", &x}, {"y", &y}, {"z", &z}}, A.sub(lhs, rhs));
        if (!A.equal(A.mul(A.one(), x), x) || !A.equal(A.mul(x, A.one()), x))
            return "unit fails on x = " + A.show(x);
        return std::nullopt;
    });
}

enum class HomPart { Mul, D, P };

std::string to_string(HomPart which);

template <class S, class T>
struct MorphismUnderTest {
    std::string name;
    AlgebraUnderTest<S> source;
    AlgebraHandle<T> target;
    std::function<T(const S &)> map;
};

// φ(xy) = φ(x)φ(y) and φ(1) = 1;  φ(d x) = d φ(x);  φ(P x) = P φ(x).
template <class S, class T>
CheckReport check_hom(const MorphismUnderTest<S, T> &m, HomPart which, const CheckOptions &opt) {
    const auto &A = m.source.alg;
    const auto &B = m.target;
    std::optional<std::string> unit_failure;
    if (which == HomPart::Mul && !B.equal(m.map(A.one()), B.one()))
        unit_failure = "image of 1 is " + B.show(m.map(A.one()));
    return axioms_detail::run_samples(
        "hom-" + to_string(which), m.name, opt,
        [&](std::size_t i) -> std::optional<std::string> {
            Rng rng = sample_rng(opt.seed, i);
            const S x = m.source.gen(rng);
            std::string inputs = "x = " + A.show(x);
            auto [lhs, rhs] = [&]() -> std::pair<T, T> {
                switch (which) {
                    case HomPart::Mul: {
                        const S y = m.source.gen(rng);
                        inputs += "; y = " + A.show(y);
                        return {m.map(A.mul(x, y)), B.mul(m.map(x), m.map(y))};
                    }
                    case HomPart::D:
                        return {m.map(A.d(x)), B.d(m.map(x))};
                    case HomPart::P:
                        break;
                }
                return {m.map(A.P(x)), B.P(m.map(x))};
            }();
            if (B.equal(lhs, rhs)) return std::nullopt;
            return inputs + "; residual = " + B.show(B.sub(lhs, rhs));
        },
        unit_failure);
}

// ℚ with λ specialized to λ0: d(r) = -r/λ0, P(r) = -λ0 r. Throws for λ0 = 0.
AlgebraUnderTest<Scalar> degenerate_instance(const Rational &lambda0);

// ℚ[t] (carried as a Scalar in the indeterminate) with λ = 1,
// d = φ - id for the shift φ(t) = t + 1, and the summation P(f)(t) = Σ_{k<t} f(k).
AlgebraUnderTest<Scalar> difference_instance();

// Mutations that the checkers must reject.
// d_ℱ with every λ-term dropped: d(V_1 ⋄ S) = d(V_1) ⋄ S + V_1 ⋄ d(S).
ForestElem d_forest_no_lambda(const ForestElem &u);
// Forests with the broken d above and P = id.
DrbAlgebraHandle<ForestElem> broken_forest_algebra();
// Forests with P = ⌊⌊·⌋⌋.
DrbAlgebraHandle<ForestElem> shifted_forest_algebra();

// Standard instances with their generators.
AlgebraUnderTest<ForestElem> forests_under_test(const GenOptions &opt);
AlgebraUnderTest<DecElem> decorated_under_test(const GenOptions &opt);
AlgebraUnderTest<ShaElem> sha_under_test(const GenOptions &opt);
AlgebraUnderTest<CommDiffElem> comm_under_test(const GenOptions &opt);
AlgebraUnderTest<NCDiffElem> nc_under_test(const GenOptions &opt);
AlgebraUnderTest<HurwitzSeries<CommDiffElem>> hurwitz_under_test(const GenOptions &opt, std::size_t order);
AlgebraUnderTest<HurwitzSeries<NCDiffElem>> hurwitz_nc_under_test(const GenOptions &opt, std::size_t order);

// φ~: Ш(k{x}) -> (D k{x}, ∂, π) extending η on slot monomials.
MorphismUnderTest<ShaElem, HurwitzSeries<CommDiffElem>> sha_to_hurwitz(const GenOptions &opt, std::size_t order);
// f̄: Ш^NC(Δ(X)) -> (D k^NC{X}, ∂, π) with f(x^(n)) = η(x^(n)).
MorphismUnderTest<DecElem, HurwitzSeries<NCDiffElem>> decorated_to_hurwitz(const GenOptions &opt,
                                                                            std::size_t order);
// The identity ℚ -> ℚ from the λ0 = 1 instance to the λ0 = 2 instance.
MorphismUnderTest<Scalar, Scalar> degenerate_identity_mismatch();

}  // namespace drb
