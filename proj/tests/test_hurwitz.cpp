#include <doctest.h>

#include "drb/axioms.hpp"
#include "drb/hurwitz.hpp"

using namespace drb;

namespace {

using Series = HurwitzSeries<CommDiffElem>;

CommDiffElem cx(const std::string &v, unsigned n = 0) { return symbol_elem<CommMonomial>(Symbol(v, n)); }

GenOptions entry_options() {
    GenOptions g;
    g.variables = {"x"};
    g.max_degree = 2;
    g.max_terms = 2;
    return g;
}

Series random_comm_series(Rng &rng, std::size_t order) {
    const GenOptions g = entry_options();
    return random_series<CommDiffElem>(rng, order, [&](Rng &r) { return random_comm_elem(r, g); });
}

}  // namespace

TEST_SUITE("hurwitz") {
    TEST_CASE("product coefficients over the rationals") {
        const auto Q = scalar_algebra();
        // Weight 0: (fg)(n) = Σ C(n,j) f(n-j) g(j); with f = g = 1 this is 2^n.
        const HurwitzSeries<Scalar> one({Scalar(1L), Scalar(1L), Scalar(1L), Scalar(1L)});
        const auto sq = hmul(Q, one, one);
        // Σ_k Σ_j C(n,k) C(n-k,j) λ^k = Σ_k C(n,k) 2^{n-k} λ^k = (2 + λ)^n
        for (unsigned n = 0; n <= 3; ++n) CHECK(sq[n] == (Scalar(2L) + Scalar::lambda()).pow(n));
    }

    TEST_CASE("eta is multiplicative: the iterated Leibniz rule") {
        const auto A = comm_diff_algebra();
        const Series ex = eta(A, cx("x"), 4), ey = eta(A, cx("y"), 4);
        CHECK(hmul(A, ex, ey) == eta(A, A.mul(cx("x"), cx("y")), 4));
    }

    TEST_CASE("commutative and associative at order 5") {
        const auto A = comm_diff_algebra();
        for (std::uint64_t i = 0; i < 40; ++i) {
            Rng rng = sample_rng(31, i);
            const Series f = random_comm_series(rng, 5), g = random_comm_series(rng, 5), h = random_comm_series(rng, 5);
            CHECK(hmul(A, f, g) == hmul(A, g, f));
            CHECK(hmul(A, hmul(A, f, g), h) == hmul(A, f, hmul(A, g, h)));
            CHECK(hmul(A, unit_series(A, 5), f) == f);
        }
    }

    TEST_CASE("order bookkeeping") {
        const auto A = comm_diff_algebra();
        const Series f = eta(A, cx("x"), 3);
        CHECK(partial(f).order() == 2);
        CHECK(pi(A, f).order() == 4);
        CHECK(hmul(A, f, f).order() == 3);
        CHECK(partial(pi(A, f)) == f);
        CHECK(pi(A, partial(f)) != f);
        CHECK(truncate_to(f, 1) == Series({cx("x"), cx("x", 1)}));
        CHECK_THROWS_AS(truncate_to(f, 4), OrderMismatch);
        CHECK_THROWS_AS(hmul(A, f, truncate_to(f, 2)), OrderMismatch);
        CHECK_THROWS_AS(hadd(A, f, truncate_to(f, 2)), OrderMismatch);
        CHECK_THROWS_AS(partial(truncate_to(f, 0)), OrderMismatch);
        CHECK_THROWS_AS(Series(std::vector<CommDiffElem>{}), std::invalid_argument);
    }

    TEST_CASE("epsilon of eta is the identity, and d commutes with eta") {
        const auto A = comm_diff_algebra();
        GenOptions g = entry_options();
        for (std::uint64_t i = 0; i < 50; ++i) {
            Rng rng = sample_rng(37, i);
            const auto x = random_comm_elem(rng, g);
            CHECK(epsilon(eta(A, x, 5)) == x);
            CHECK(partial(eta(A, x, 5)) == eta(A, A.d(x), 4));
        }
    }

    TEST_CASE("lifted maps commute with the shift") {
        const auto A = comm_diff_algebra();
        // h: k{x} -> k{x}, substitution x -> x + x*y, an algebra map.
        const std::map<std::string, CommDiffElem> img{{"x", cx("x") + cx("x") * cx("y")}, {"y", cx("y")}};
        auto h = [&](const CommDiffElem &e) { return extend_hom(img, A, e); };
        for (std::uint64_t i = 0; i < 30; ++i) {
            Rng rng = sample_rng(41, i);
            const Series f = random_comm_series(rng, 4);
            CHECK(partial(lift_D(h, f)) == lift_D(h, partial(f)));
        }
    }

    TEST_CASE("cofree lift of an algebra map is a differential map") {
        const auto A = comm_diff_algebra();
        const auto Q = scalar_algebra();
        // f: k{x} -> Q[λ], x^(n) -> n + 1.
        auto f = [&](const CommDiffElem &e) {
            Scalar out;
            for (const auto &[w, c] : e) {
                Scalar v(1L);
                for (const Symbol &s : w.factors()) v *= Scalar(static_cast<long>(s.order + 1));
                out += c * v;
            }
            return out;
        };
        const auto x = cx("x");
        const auto lifted = cofree_lift(f, A, x, 3);
        CHECK(lifted == HurwitzSeries<Scalar>({Scalar(1L), Scalar(2L), Scalar(3L), Scalar(4L)}));
        CHECK(epsilon(lifted) == f(x));
    }

    TEST_CASE("epsilon and kappa are algebra maps") {
        const auto A = comm_diff_algebra();
        GenOptions g = entry_options();
        for (std::uint64_t i = 0; i < 50; ++i) {
            Rng rng = sample_rng(43, i);
            const Series f = random_comm_series(rng, 4), h = random_comm_series(rng, 4);
            CHECK(epsilon(hmul(A, f, h)) == A.mul(epsilon(f), epsilon(h)));
            CHECK(epsilon(hadd(A, f, h)) == A.add(epsilon(f), epsilon(h)));
            const auto a = random_comm_elem(rng, g), b = random_comm_elem(rng, g);
            CHECK(hmul(A, kappa(A, a, 4), kappa(A, b, 4)) == kappa(A, A.mul(a, b), 4));
            CHECK(hadd(A, kappa(A, a, 4), kappa(A, b, 4)) == kappa(A, A.add(a, b), 4));
        }
        CHECK(epsilon(unit_series(A, 3)) == A.one());
        CHECK(kappa(A, A.one(), 3) == unit_series(A, 3));
    }

    TEST_CASE("differential Rota-Baxter axioms") {
        const auto aut = hurwitz_under_test(entry_options(), 4);
        const CheckOptions opt{.samples = 60, .seed = 47};
        for (const auto &r : {check_leibniz(aut, opt), check_rb(aut, opt), check_section(aut, opt)})
            CHECK_MESSAGE(r.passed(), r.to_text());
        const auto nc = hurwitz_nc_under_test(entry_options(), 3);
        for (const auto &r : {check_leibniz(nc, opt), check_rb(nc, opt), check_section(nc, opt)})
            CHECK_MESSAGE(r.passed(), r.to_text());
    }

    TEST_CASE("text form") {
        const auto A = comm_diff_algebra();
        CHECK(to_text(A, eta(A, cx("x"), 2)) == "[x_(0), x_(1), x_(2)]");
        CHECK(to_text(A, pi(A, unit_series(A, 1))) == "[0, 1, 0]");
    }
}
