#include <doctest.h>

#include "drb/axioms.hpp"
#include "drb/freediff.hpp"

using namespace drb;

namespace {

CommDiffElem cx(const std::string &v, unsigned n = 0) { return symbol_elem<CommMonomial>(Symbol(v, n)); }
NCDiffElem nx(const std::string &v, unsigned n = 0) { return symbol_elem<NCWord>(Symbol(v, n)); }

}  // namespace

TEST_SUITE("freediff") {
    TEST_CASE("symbols and words print canonically") {
        CHECK(Symbol("x", 3).to_string() == "x_(3)");
        CHECK(to_text(cx("y") * cx("x", 1) * cx("x")) == "x_(0)*x_(1)*y_(0)");
        CHECK(to_text(nx("y") * nx("x")) == "y_(0)*x_(0)");
        CHECK(to_text(unit_elem<CommMonomial>()) == "1");
        CHECK(to_text(CommDiffElem()) == "0");
    }

    TEST_CASE("commutative words commute, noncommutative words do not") {
        CHECK(cx("x") * cx("y") == cx("y") * cx("x"));
        CHECK(!(nx("x") * nx("y") == nx("y") * nx("x")));
    }

    TEST_CASE("d raises orders with the weight-lambda product rule") {
        const auto A = comm_diff_algebra();
        CHECK(A.d(cx("x", 2)) == cx("x", 3));
        CHECK(A.d(A.one()).is_zero());
        CHECK(to_text(A.d(cx("x") * cx("y"))) == "x_(0)*y_(1) + x_(1)*y_(0) + L*x_(1)*y_(1)");
        CHECK(A.d(cx("x") * cx("x")) == Scalar(2L) * cx("x") * cx("x", 1) + Scalar::lambda() * cx("x", 1) * cx("x", 1));
        const auto N = nc_diff_algebra();
        CHECK(to_text(N.d(nx("y") * nx("x"))) == "y_(0)*x_(1) + y_(1)*x_(0) + L*y_(1)*x_(1)");
    }

    TEST_CASE("Leibniz rule on random elements") {
        GenOptions opt;
        const auto comm = check_leibniz(comm_under_test(opt), CheckOptions{.samples = 150, .seed = 11});
        CHECK_MESSAGE(comm.passed(), comm.to_text());
        const auto nc = check_leibniz(nc_under_test(opt), CheckOptions{.samples = 150, .seed = 11});
        CHECK_MESSAGE(nc.passed(), nc.to_text());
        const auto assoc = check_assoc(nc_under_test(opt), CheckOptions{.samples = 100, .seed = 2});
        CHECK_MESSAGE(assoc.passed(), assoc.to_text());
    }

    TEST_CASE("iterated Leibniz formula against repeated d") {
        const auto A = comm_diff_algebra();
        const auto N = nc_diff_algebra();
        GenOptions opt;
        opt.max_degree = 2;
        opt.max_terms = 2;
        for (std::uint64_t i = 0; i < 40; ++i) {
            Rng rng = sample_rng(17, i);
            const auto x = random_comm_elem(rng, opt), y = random_comm_elem(rng, opt);
            const auto u = random_nc_elem(rng, opt), v = random_nc_elem(rng, opt);
            for (unsigned n = 0; n <= 3; ++n) {
                CHECK(A.apply_d(A.mul(x, y), n) == iterated_leibniz_rhs(A, x, y, n));
                CHECK(N.apply_d(N.mul(u, v), n) == iterated_leibniz_rhs(N, u, v, n));
            }
        }
    }

    TEST_CASE("power rule") {
        const auto A = comm_diff_algebra();
        const auto x = cx("x") + Scalar(2L) * cx("y", 1);
        for (unsigned n = 1; n <= 5; ++n) CHECK(A.d(A.power(x, n)) == power_rule_rhs(A, x, n));
        CHECK_THROWS_AS(power_rule_rhs(A, x, 0), std::invalid_argument);
        // d(x^2) = 2 x dx + λ dx^2
        CHECK(power_rule_rhs(A, cx("x"), 2) ==
              Scalar(2L) * cx("x") * cx("x", 1) + Scalar::lambda() * cx("x", 1) * cx("x", 1));
    }

    TEST_CASE("universal property: extension is a differential algebra map") {
        const auto A = comm_diff_algebra();
        // x -> x*y, y -> y + 1 inside the free algebra itself.
        const std::map<std::string, CommDiffElem> f{{"x", cx("x") * cx("y")}, {"y", cx("y") + A.one()}};
        GenOptions opt;
        opt.max_terms = 2;
        for (std::uint64_t i = 0; i < 60; ++i) {
            Rng rng = sample_rng(23, i);
            const auto e = random_comm_elem(rng, opt), g = random_comm_elem(rng, opt);
            CHECK(extend_hom(f, A, A.d(e)) == A.d(extend_hom(f, A, e)));
            CHECK(extend_hom(f, A, A.mul(e, g)) == A.mul(extend_hom(f, A, e), extend_hom(f, A, g)));
        }
        CHECK(extend_hom(f, A, cx("x", 1)) == A.d(cx("x") * cx("y")));
        CHECK_THROWS_AS(extend_hom(f, A, cx("z")), UnmappedVariable);
    }

    TEST_CASE("basis order: shorter words first") {
        const auto e = cx("x") * cx("y") + cx("z") + unit_elem<CommMonomial>();
        CHECK(to_text(e) == "1 + z_(0) + x_(0)*y_(0)");
    }
}
