#include "drb/axioms.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

namespace drb {

namespace {

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

long uniform_nonzero(Rng &rng, long bound) {
    long v = 0;
    while (v == 0) v = std::uniform_int_distribution<long>(-bound, bound)(rng);
    return v;
}

template <class Key, class Gen>
LinComb<Key> random_comb(Rng &rng, const GenOptions &opt, Gen &&basis) {
    LinComb<Key> out;
    const std::size_t terms = uniform(rng, 1, std::max<std::size_t>(opt.max_terms, 1));
    for (std::size_t i = 0; i < terms; ++i) {
        Key k = basis(rng);
        Scalar c = random_scalar(rng);
        out.add_term(k, c);
    }
    return out;
}

std::string poly_text(const Scalar &p) {
    std::string s = p.to_string();
    for (char &ch : s)
        if (ch == 'L') ch = 't';
    return s;
}

// p(t + 1), with t carried as the indeterminate of Scalar.
Scalar shift(const Scalar &p) {
    const Scalar t1 = Scalar::lambda() + Scalar(1L);
    Scalar r;
    const auto &c = p.coefficients();
    for (std::size_t k = c.size(); k-- > 0;) r = r * t1 + Scalar(c[k]);
    return r;
}

// binom(t, m) as a polynomial in t.
Scalar binomial_poly(std::size_t m) {
    Scalar r(1L);
    Rational fact(1);
    for (std::size_t i = 0; i < m; ++i) {
        r = r * (Scalar::lambda() - Scalar(static_cast<long>(i)));
        fact *= static_cast<long>(i + 1);
    }
    return Scalar(Rational(1) / fact) * r;
}

// Σ_{k<t} f(k): expand f in the binomial basis and raise each index by one.
Scalar summation(const Scalar &f) {
    if (f.is_zero()) return {};
    const std::size_t n = static_cast<std::size_t>(f.degree());
    std::vector<Rational> diffs;
    for (std::size_t k = 0; k <= n; ++k) diffs.push_back(f.eval_at(Rational(static_cast<long>(k))));
    Scalar out;
    for (std::size_t k = 0; k <= n; ++k) {
        out += Scalar(diffs[0]) * binomial_poly(k + 1);
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i) diffs[i] = diffs[i + 1] - diffs[i];
        diffs.pop_back();
    }
    return out;
}

AlgebraHandle<Scalar> specialized_rationals(std::string name, const Rational &lambda0) {
    AlgebraHandle<Scalar> h = scalar_algebra();
    h.name = std::move(name);
    h.scale = [lambda0](const Scalar &c, const Scalar &r) { return Scalar(c.eval_at(lambda0)) * r; };
    return h;
}

}  // namespace

Rng sample_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

Scalar random_scalar(Rng &rng) {
    Scalar c(uniform_nonzero(rng, 3));
    if (uniform(rng, 0, 2) == 0) c += Scalar::monomial(Rational(uniform_nonzero(rng, 2)), 1);
    return c;
}

Rational random_rational(Rng &rng) {
    Rational q(std::uniform_int_distribution<long>(-9, 9)(rng), std::uniform_int_distribution<long>(1, 5)(rng));
    q.canonicalize();
    return q;
}

Symbol random_symbol(Rng &rng, const GenOptions &opt) {
    const std::string &base = opt.variables[uniform(rng, 0, opt.variables.size() - 1)];
    return Symbol(base, static_cast<unsigned>(uniform(rng, 0, opt.max_order)));
}

Forest random_forest_exact(Rng &rng, std::size_t vertices) {
    if (vertices == 0) throw std::invalid_argument("random_forest_exact: a forest has at least one vertex");
    std::vector<Tree> trees;
    std::size_t left = vertices;
    while (left > 0) {
        const std::size_t k = uniform(rng, 1, left);
        trees.push_back(k == 1 ? Tree::dot() : graft(random_forest_exact(rng, k - 1)));
        left -= k;
    }
    return Forest(std::move(trees));
}

Forest random_forest(Rng &rng, std::size_t max_vertices) {
    if (max_vertices == 0) return Forest::unit();
    return random_forest_exact(rng, uniform(rng, 1, max_vertices));
}

DecForest random_dec_forest(Rng &rng, const GenOptions &opt) {
    Forest shape = random_forest(rng, opt.max_vertices);
    std::vector<Symbol> decs;
    for (std::size_t i = 1; i < shape.leaves(); ++i) decs.push_back(random_symbol(rng, opt));
    return DecForest(std::move(shape), std::move(decs));
}

CommMonomial random_comm_monomial(Rng &rng, const GenOptions &opt) {
    std::vector<Symbol> f;
    const std::size_t deg = uniform(rng, 0, opt.max_degree);
    for (std::size_t i = 0; i < deg; ++i) f.push_back(random_symbol(rng, opt));
    return CommMonomial(std::move(f));
}

NCWord random_nc_word(Rng &rng, const GenOptions &opt) {
    std::vector<Symbol> f;
    const std::size_t deg = uniform(rng, 0, opt.max_degree);
    for (std::size_t i = 0; i < deg; ++i) f.push_back(random_symbol(rng, opt));
    return NCWord(std::move(f));
}

TensorWord random_tensor_word(Rng &rng, const GenOptions &opt) {
    if (opt.max_slots == 0) return TensorWord({CommMonomial::unit()});
    std::vector<CommMonomial> slots;
    const std::size_t n = uniform(rng, 1, opt.max_slots);
    for (std::size_t i = 0; i < n; ++i) slots.push_back(random_comm_monomial(rng, opt));
    return TensorWord(std::move(slots));
}

ForestElem random_forest_elem(Rng &rng, const GenOptions &opt) {
    return random_comb<Forest>(rng, opt, [&](Rng &r) { return random_forest(r, opt.max_vertices); });
}

DecElem random_dec_elem(Rng &rng, const GenOptions &opt) {
    return random_comb<DecForest>(rng, opt, [&](Rng &r) { return random_dec_forest(r, opt); });
}

CommDiffElem random_comm_elem(Rng &rng, const GenOptions &opt) {
    return random_comb<CommMonomial>(rng, opt, [&](Rng &r) { return random_comm_monomial(r, opt); });
}

NCDiffElem random_nc_elem(Rng &rng, const GenOptions &opt) {
    return random_comb<NCWord>(rng, opt, [&](Rng &r) { return random_nc_word(r, opt); });
}

ShaElem random_sha_elem(Rng &rng, const GenOptions &opt) {
    return random_comb<TensorWord>(rng, opt, [&](Rng &r) { return random_tensor_word(r, opt); });
}

std::vector<Forest> all_forests(std::size_t n) {
    static std::map<std::size_t, std::vector<Forest>> memo;
    static std::mutex mu;
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(n); it != memo.end()) return it->second;
    }
    std::vector<Forest> out;
    if (n == 0) return out;
    // First tree with k vertices, followed by any forest on the rest.
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<Tree> firsts;
        if (k == 1) {
            firsts.push_back(Tree::dot());
        } else {
            for (const Forest &f : all_forests(k - 1)) firsts.push_back(graft(f));
        }
        for (const Tree &t : firsts) {
            if (k == n) {
                out.emplace_back(t);
                continue;
            }
            for (const Forest &rest : all_forests(n - k)) out.push_back(concat(Forest(t), rest));
        }
    }
    std::lock_guard lock(mu);
    memo.emplace(n, out);
    return out;
}

std::vector<Forest> all_forests_up_to(std::size_t n) {
    std::vector<Forest> out;
    for (std::size_t k = 1; k <= n; ++k) {
        auto fs = all_forests(k);
        out.insert(out.end(), fs.begin(), fs.end());
    }
    return out;
}

std::vector<DecForest> all_dec_forests_up_to(std::size_t vertices, const std::vector<Symbol> &symbols) {
    std::vector<DecForest> out;
    for (const Forest &f : all_forests_up_to(vertices)) {
        const std::size_t slots = f.leaves() - 1;
        std::vector<std::size_t> idx(slots, 0);
        while (true) {
            std::vector<Symbol> decs;
            for (std::size_t i : idx) decs.push_back(symbols[i]);
            out.emplace_back(f, std::move(decs));
            std::size_t pos = 0;
            while (pos < slots && ++idx[pos] == symbols.size()) idx[pos++] = 0;
            if (pos == slots) break;
        }
    }
    return out;
}

std::string CheckReport::to_text() const {
    std::string out = (passed() ? "PASS " : "FAIL ") + identity + " on " + algebra + ": " +
                      std::to_string(samples - failed) + "/" + std::to_string(samples) +
                      " samples ok (seed " + std::to_string(seed) + ", " + std::to_string(elapsed_ms) + " ms)";
    for (const std::string &f : failures) out += "\n  counterexample: " + f;
    return out;
}

std::string CheckReport::to_json() const {
    nlohmann::json j{{"identity", identity}, {"algebra", algebra},     {"seed", seed},
                     {"samples", samples},   {"failed", failed},       {"passed", passed()},
                     {"failures", failures}, {"elapsed_ms", elapsed_ms}};
    return j.dump(2);
}

std::string to_string(HomPart which) {
    switch (which) {
        case HomPart::Mul:
            return "mul";
        case HomPart::D:
            return "d";
        case HomPart::P:
            return "P";
    }
    return "?";
}

namespace axioms_detail {

CheckReport run_samples(std::string identity, std::string algebra, const CheckOptions &opt,
                        const std::function<std::optional<std::string>(std::size_t)> &sample,
                        const std::optional<std::string> &preamble_failure) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::optional<std::string>> results(opt.samples);
    const unsigned workers = std::max(1U, std::min<unsigned>(opt.threads, static_cast<unsigned>(opt.samples)));
    if (workers == 1) {
        for (std::size_t i = 0; i < opt.samples; ++i) results[i] = sample(i);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex mu;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < opt.samples; i += workers) results[i] = sample(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!error) error = std::current_exception();
                }
            });
        for (auto &t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    CheckReport r;
    r.identity = std::move(identity);
    r.algebra = std::move(algebra);
    r.seed = opt.seed;
    r.samples = opt.samples;
    if (preamble_failure) r.failures.push_back(*preamble_failure);
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i]) continue;
        ++r.failed;
        if (r.failures.size() < std::max<std::size_t>(opt.max_failures, 1))
            r.failures.push_back("sample " + std::to_string(i) + ": " + *results[i]);
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace axioms_detail

AlgebraUnderTest<Scalar> degenerate_instance(const Rational &lambda0) {
    if (sgn(lambda0) == 0) throw std::invalid_argument("degenerate_instance: the weight must be nonzero");
    AlgebraUnderTest<Scalar> aut;
    aut.alg = specialized_rationals("degenerate(L=" + to_string(lambda0) + ")", lambda0);
    aut.alg.d = [lambda0](const Scalar &r) { return Scalar(Rational(-1) / lambda0) * r; };
    aut.alg.P = [lambda0](const Scalar &r) { return Scalar(Rational(-lambda0)) * r; };
    aut.gen = [](Rng &rng) { return Scalar(random_rational(rng)); };
    return aut;
}

AlgebraUnderTest<Scalar> difference_instance() {
    AlgebraUnderTest<Scalar> aut;
    aut.alg = specialized_rationals("difference(Q[t], L=1)", Rational(1));
    aut.alg.show = poly_text;
    aut.alg.d = [](const Scalar &p) { return shift(p) - p; };
    aut.alg.P = summation;
    aut.gen = [](Rng &rng) {
        Scalar p;
        const std::size_t deg = uniform(rng, 0, 3);
        for (std::size_t k = 0; k <= deg; ++k) p += Scalar::monomial(random_rational(rng), k);
        return p;
    };
    return aut;
}

ForestElem d_forest_no_lambda(const ForestElem &u) {
    return u.map_linear([](const Forest &f) {
        const std::vector<Forest> slots = std_decomposition(f);
        ForestElem suffix(slots.back());
        ForestElem dsuffix = d_factor(slots.back());
        for (std::size_t i = slots.size() - 1; i-- > 0;) {
            const ForestElem v(slots[i]);
            ForestElem next = rb_product(d_factor(slots[i]), suffix) + rb_product(v, dsuffix);
            dsuffix = std::move(next);
            suffix = rb_product(v, suffix);
        }
        return dsuffix;
    });
}

DrbAlgebraHandle<ForestElem> broken_forest_algebra() {
    DrbAlgebraHandle<ForestElem> h = forest_algebra();
    h.name = "broken-forests";
    h.d = [](const ForestElem &a) { return d_forest_no_lambda(a); };
    h.P = [](const ForestElem &a) { return a; };
    return h;
}

DrbAlgebraHandle<ForestElem> shifted_forest_algebra() {
    DrbAlgebraHandle<ForestElem> h = forest_algebra();
    h.name = "shifted-forests";
    h.P = [](const ForestElem &a) { return graft(graft(a)); };
    return h;
}

AlgebraUnderTest<ForestElem> forests_under_test(const GenOptions &opt) {
    return {forest_algebra(), [opt](Rng &rng) { return random_forest_elem(rng, opt); }};
}

AlgebraUnderTest<DecElem> decorated_under_test(const GenOptions &opt) {
    return {decorated_algebra(), [opt](Rng &rng) { return random_dec_elem(rng, opt); }};
}

AlgebraUnderTest<ShaElem> sha_under_test(const GenOptions &opt) {
    return {sha_algebra(), [opt](Rng &rng) { return random_sha_elem(rng, opt); }};
}

AlgebraUnderTest<CommDiffElem> comm_under_test(const GenOptions &opt) {
    return {comm_diff_algebra(), [opt](Rng &rng) { return random_comm_elem(rng, opt); }};
}

AlgebraUnderTest<NCDiffElem> nc_under_test(const GenOptions &opt) {
    return {nc_diff_algebra(), [opt](Rng &rng) { return random_nc_elem(rng, opt); }};
}

AlgebraUnderTest<HurwitzSeries<CommDiffElem>> hurwitz_under_test(const GenOptions &opt, std::size_t order) {
    return {hurwitz_algebra(comm_diff_algebra(), order), [opt, order](Rng &rng) {
                return random_series<CommDiffElem>(rng, order, [&](Rng &r) { return random_comm_elem(r, opt); });
            }};
}

AlgebraUnderTest<HurwitzSeries<NCDiffElem>> hurwitz_nc_under_test(const GenOptions &opt, std::size_t order) {
    return {hurwitz_algebra(nc_diff_algebra(), order), [opt, order](Rng &rng) {
                return random_series<NCDiffElem>(rng, order, [&](Rng &r) { return random_nc_elem(r, opt); });
            }};
}

MorphismUnderTest<ShaElem, HurwitzSeries<CommDiffElem>> sha_to_hurwitz(const GenOptions &opt, std::size_t order) {
    using S = HurwitzSeries<CommDiffElem>;
    const auto base = comm_diff_algebra();
    const auto target = hurwitz_algebra(base, order);
    SymbolImage<S> phi = [base, order](const Symbol &s) {
        return eta(base, symbol_elem<CommMonomial>(s), order);
    };
    MorphismUnderTest<ShaElem, S> m;
    m.name = "sha->hurwitz";
    m.source = sha_under_test(opt);
    m.target = target;
    m.map = [phi, target](const ShaElem &u) { return extend_rb_hom(phi, target, u); };
    return m;
}

MorphismUnderTest<DecElem, HurwitzSeries<NCDiffElem>> decorated_to_hurwitz(const GenOptions &opt,
                                                                            std::size_t order) {
    using S = HurwitzSeries<NCDiffElem>;
    const auto base = nc_diff_algebra();
    const auto target = hurwitz_algebra(base, order);
    SymbolImage<S> f = [base, order](const Symbol &s) { return eta(base, symbol_elem<NCWord>(s), order); };
    MorphismUnderTest<DecElem, S> m;
    m.name = "decorated->hurwitz";
    m.source = decorated_under_test(opt);
    m.target = target;
    m.map = [f, target](const DecElem &u) { return extend_drb_hom(f, target, u); };
    return m;
}

MorphismUnderTest<Scalar, Scalar> degenerate_identity_mismatch() {
    MorphismUnderTest<Scalar, Scalar> m;
    m.name = "identity: degenerate(L=1) -> degenerate(L=2)";
    m.source = degenerate_instance(Rational(1));
    m.target = degenerate_instance(Rational(2)).alg;
    m.map = [](const Scalar &r) { return r; };
    return m;
}

}  // namespace drb
