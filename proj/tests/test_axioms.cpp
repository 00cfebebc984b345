#include <doctest.h>

#include <json.hpp>

#include "drb/axioms.hpp"

using namespace drb;

TEST_SUITE("axioms") {
    TEST_CASE("generators are deterministic in (seed, index)") {
        const GenOptions opt;
        for (std::uint64_t i = 0; i < 20; ++i) {
            Rng a = sample_rng(5, i), b = sample_rng(5, i);
            CHECK(random_forest_elem(a, opt) == random_forest_elem(b, opt));
            CHECK(random_dec_elem(a, opt) == random_dec_elem(b, opt));
            CHECK(random_sha_elem(a, opt) == random_sha_elem(b, opt));
            CHECK(random_comm_elem(a, opt) == random_comm_elem(b, opt));
            CHECK(random_nc_elem(a, opt) == random_nc_elem(b, opt));
        }
        Rng a = sample_rng(5, 0), b = sample_rng(5, 1);
        CHECK(random_forest_elem(a, opt) != random_forest_elem(b, opt));
    }

    TEST_CASE("generators respect the size bounds") {
        GenOptions opt;
        opt.max_vertices = 4;
        opt.max_slots = 3;
        opt.max_degree = 2;
        opt.max_order = 1;
        Rng rng = sample_rng(9, 0);
        for (int i = 0; i < 200; ++i) {
            CHECK(random_forest(rng, 4).vertices() <= 4);
            CHECK(random_forest_exact(rng, 4).vertices() == 4);
            const DecForest d = random_dec_forest(rng, opt);
            CHECK(d.shape().vertices() <= 4);
            CHECK(d.decorations().size() + 1 == d.shape().leaves());
            const TensorWord w = random_tensor_word(rng, opt);
            CHECK(w.slots().size() <= 3);
            for (const CommMonomial &m : w.slots()) {
                CHECK(m.degree() <= 2);
                for (const Symbol &s : m.factors()) CHECK(s.order <= 1);
            }
        }
    }

    TEST_CASE("degenerate instances are weak but not strict") {
        for (long l : {1L, 2L, -3L}) {
            const auto aut = degenerate_instance(Rational(l));
            CheckOptions opt{.samples = 100, .seed = 79};
            CHECK_MESSAGE(check_rb(aut, opt).passed(), l);
            CHECK_MESSAGE(check_section(aut, opt).passed(), l);
            opt.weak = true;
            CHECK_MESSAGE(check_leibniz(aut, opt).passed(), l);
            opt.weak = false;
            const CheckReport strict = check_leibniz(aut, opt);
            CHECK(!strict.passed());
            CHECK(strict.failed == 0);
            REQUIRE(strict.failures.size() == 1);
            CHECK(strict.failures[0].find("d(1)") != std::string::npos);
            CHECK(!aut.alg.is_zero(aut.alg.d(aut.alg.one())));
        }
        CHECK_THROWS_AS(degenerate_instance(Rational(0)), std::invalid_argument);
    }

    TEST_CASE("difference and summation on polynomials") {
        const auto aut = difference_instance();
        const CheckOptions opt{.samples = 100, .seed = 83};
        for (const auto &r : {check_leibniz(aut, opt), check_rb(aut, opt), check_section(aut, opt)})
            CHECK_MESSAGE(r.passed(), r.to_text());
        // t -> Δt = 1, Σ_{k<t} 1 = t
        const Scalar t = Scalar::monomial(Rational(1), 1);
        CHECK(aut.alg.d(t) == Scalar(1L));
        CHECK(aut.alg.P(Scalar(1L)) == t);
    }

    TEST_CASE("mutations are caught within 100 samples") {
        const CheckOptions opt{.samples = 100, .seed = 7};
        const auto gen = [](Rng &rng) { return random_forest_elem(rng, GenOptions{}); };
        const AlgebraUnderTest<ForestElem> broken{broken_forest_algebra(), gen};
        const AlgebraUnderTest<ForestElem> shifted{shifted_forest_algebra(), gen};
        for (const auto &r : {check_leibniz(broken, opt), check_rb(broken, opt), check_section(shifted, opt)}) {
            CHECK_MESSAGE(!r.passed(), r.to_text());
            CHECK(r.failed > 0);
        }
        const auto mismatch = degenerate_identity_mismatch();
        CHECK(!check_hom(mismatch, HomPart::D, opt).passed());
        CHECK(!check_hom(mismatch, HomPart::P, opt).passed());
        CHECK(check_hom(mismatch, HomPart::Mul, opt).passed());
    }

    TEST_CASE("threads do not change the verdict") {
        const auto aut = forests_under_test(GenOptions{});
        const auto broken = AlgebraUnderTest<ForestElem>{broken_forest_algebra(), aut.gen};
        CheckOptions one{.samples = 60, .seed = 89};
        CheckOptions many = one;
        many.threads = 4;
        for (const auto *a : {&aut, &broken}) {
            const CheckReport r1 = check_leibniz(*a, one), r4 = check_leibniz(*a, many);
            CHECK(r1.passed() == r4.passed());
            CHECK(r1.failed == r4.failed);
            CHECK(r1.failures == r4.failures);
        }
    }

    TEST_CASE("report text and JSON") {
        const auto aut = forests_under_test(GenOptions{});
        const CheckReport ok = check_section(aut, CheckOptions{.samples = 10, .seed = 3});
        CHECK(ok.to_text().rfind("PASS section on forests: 10/10 samples ok (seed 3", 0) == 0);
        const auto j = nlohmann::json::parse(ok.to_json());
        CHECK(j["passed"] == true);
        CHECK(j["samples"] == 10);
        CHECK(j["identity"] == "section");
        const CheckReport bad =
            check_rb(AlgebraUnderTest<ForestElem>{broken_forest_algebra(), aut.gen}, CheckOptions{.samples = 10, .seed = 3});
        CHECK(bad.to_text().rfind("FAIL rb on broken-forests", 0) == 0);
        CHECK(bad.to_text().find("counterexample: sample ") != std::string::npos);
        CHECK(nlohmann::json::parse(bad.to_json())["failed"].get<int>() == static_cast<int>(bad.failed));
    }
}
