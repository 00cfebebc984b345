#include <doctest.h>

#include "drb/axioms.hpp"
#include "drb/lincomb.hpp"
#include "drb/scalar.hpp"

using namespace drb;

TEST_SUITE("scalar") {
    TEST_CASE("canonical text") {
        const Scalar L = Scalar::lambda();
        CHECK(Scalar().to_string() == "0");
        CHECK(Scalar(Rational(3, 2)).to_string() == "3/2");
        CHECK((Scalar(Rational(3, 2)) + Scalar(2L) * L + L * L).to_string() == "3/2 + 2*L + L^2");
        CHECK((-L).to_string() == "-L");
        CHECK((Scalar(-1L) - L).to_string() == "-1 - L");
        CHECK((L.pow(3) * Scalar(Rational(-5, 7))).to_string() == "-5/7*L^3");
    }

    TEST_CASE("rationals are canonical and exact") {
        Rational q(6, -4);
        q.canonicalize();
        CHECK(Scalar(q).to_string() == "-3/2");
        Scalar big(1L);
        for (int i = 0; i < 40; ++i) big *= Scalar(Rational(1000000007));
        mpz_class expected;
        mpz_ui_pow_ui(expected.get_mpz_t(), 1000000007UL, 40);
        CHECK(big.coefficients()[0] == Rational(expected));
        CHECK((big - big).is_zero());
        CHECK((Scalar(Rational(1, 3)) + Scalar(Rational(1, 6))).to_string() == "1/2");
    }

    TEST_CASE("degree, coefficients and zero pruning") {
        const Scalar L = Scalar::lambda();
        const Scalar p = Scalar(1L) + L * L;
        CHECK(p.degree() == 2);
        CHECK(p.coeff(1) == 0);
        CHECK(p.term_count() == 2);
        CHECK((p - L * L).degree() == 0);
        CHECK(Scalar().degree() == -1);
        CHECK(Scalar(0L).is_zero());
        CHECK(Scalar(1L).is_one());
        CHECK(Scalar(-1L).is_minus_one());
    }

    TEST_CASE("evaluation is a ring map") {
        Rng rng = sample_rng(3, 0);
        for (int i = 0; i < 200; ++i) {
            const Scalar a = random_scalar(rng) * random_scalar(rng);
            const Scalar b = random_scalar(rng) + random_scalar(rng);
            const Rational t = random_rational(rng);
            CHECK((a * b).eval_at(t) == a.eval_at(t) * b.eval_at(t));
            CHECK((a + b).eval_at(t) == a.eval_at(t) + b.eval_at(t));
        }
    }

    TEST_CASE("ring axioms on samples") {
        Rng rng = sample_rng(5, 0);
        for (int i = 0; i < 300; ++i) {
            const Scalar a = random_scalar(rng), b = random_scalar(rng) * Scalar::lambda(), c = random_scalar(rng);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == Scalar());
            CHECK(a.pow(3) == a * a * a);
        }
    }

    TEST_CASE("binomials and lambda powers") {
        CHECK(binomial(5, 2) == Scalar(10L));
        CHECK(binomial(3, 4).is_zero());
        CHECK(binomial(0, 0) == Scalar(1L));
        CHECK(lambda_pow(0) == Scalar(1L));
        CHECK(lambda_pow(3) == Scalar::lambda().pow(3));
        for (unsigned n = 1; n < 12; ++n)
            for (unsigned k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }

    TEST_CASE("linear combination term formatting") {
        const Scalar L = Scalar::lambda();
        CHECK(format_term(Scalar(1L), "x", false) == "x");
        CHECK(format_term(Scalar(-1L), "x", false) == "-x");
        CHECK(format_term(Scalar(2L) * L, "x", false) == "2*L*x");
        CHECK(format_term(Scalar(1L) + L, "x", false) == "(1 + L)*x");
        CHECK(format_term(Scalar(1L) + L, "1", true) == "1 + L");
        CHECK(join_terms({"a", "-b", "c"}) == "a - b + c");
    }

    TEST_CASE("linear combinations prune zeros") {
        LinComb<int> u;
        u.add_term(1, Scalar(2L));
        u.add_term(1, Scalar(-2L));
        CHECK(u.is_zero());
        LinComb<int> v(3, Scalar::lambda());
        CHECK((v - v).is_zero());
        CHECK((Scalar(0L) * v).is_zero());
        CHECK(v.map_coeffs([](const Scalar &c) { return Scalar(c.eval_at(Rational(0))); }).is_zero());
    }
}
