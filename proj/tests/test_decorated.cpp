#include <doctest.h>

#include "drb/axioms.hpp"
#include "drb/decorated.hpp"

using namespace drb;

namespace {

const Tree dot = Tree::dot();
const Symbol x("x"), y("y");
const Scalar L = Scalar::lambda();

Forest F(std::initializer_list<Tree> trees) { return Forest(std::vector<Tree>(trees)); }
Tree G(const Forest &f) { return Tree::graft(f); }
DecElem E(Forest shape, std::vector<Symbol> decs = {}) { return DecElem(DecForest(std::move(shape), std::move(decs))); }

}  // namespace

TEST_SUITE("decorated") {
    TEST_CASE("text form and decoration count") {
        CHECK(DecForest().to_string() == ".");
        CHECK(DecForest(F({dot, G(F({dot, dot}))}), {x, y}).to_string() == ". x_(0) [. y_(0) .]");
        CHECK(j_X(x).to_string() == ". x_(0) .");
        CHECK_THROWS_AS(DecForest(F({dot, dot}), {}), std::invalid_argument);
        CHECK_THROWS_AS(DecForest(Forest(), {x}), std::invalid_argument);
    }

    TEST_CASE("product and derivative goldens") {
        const DecElem a = E(Forest(G(F({dot, dot}))), {x});
        const DecElem b = E(Forest(G(dot)));
        const DecElem p = dec_product(a, b);
        CHECK(to_text(p) == "[. x_(0) [.]] + [[. x_(0) .]] + L*[. x_(0) .]");
        CHECK(to_text(d_dec(p)) == ". x_(0) [.] + [. x_(0) .] + L*. x_(0) .");
        CHECK(d_dec(p) == dec_product(d_dec(a), b) + dec_product(a, d_dec(b)) + L * dec_product(d_dec(a), d_dec(b)));
        CHECK(d_dec(dec_unit()).is_zero());
    }

    TEST_CASE("d on a junction differentiates the decoration") {
        // d(•⊔•; x) = x' as a junction of units, with no λ correction
        CHECK(d_dec(DecElem(j_X(x))) == DecElem(j_X(x.derived())));
    }

    TEST_CASE("recursive derivative equals the subset sum up to five vertices") {
        std::size_t count = 0;
        for (const DecForest &d : all_dec_forests_up_to(5, {x, y.derived()})) {
            REQUIRE_MESSAGE(d_dec(d) == d_dec_general(d), d.to_string());
            ++count;
        }
        CHECK(count > 100);
    }

    TEST_CASE("standard decomposition round trip") {
        for (const DecForest &d : all_dec_forests_up_to(4, {x, y})) {
            const DecDecomposition parts = std_decomposition(d);
            CHECK(parts.trees.size() == d.shape().breadth());
            CHECK(parts.junctions.size() + 1 == parts.trees.size());
            for (const DecForest &t : parts.trees) CHECK(t.shape().breadth() == 1);
            CHECK(assemble(parts) == d);
        }
    }

    TEST_CASE("junction") {
        const DecForest a(Forest(G(F({dot, dot}))), {x});
        const DecForest j = junction(a, y, DecForest());
        CHECK(j.to_string() == "[. x_(0) .] y_(0) .");
        CHECK(junction(DecForest(), x, DecForest()) == j_X(x));
    }

    TEST_CASE("axioms on random elements") {
        GenOptions opt;
        opt.max_vertices = 5;
        const auto aut = decorated_under_test(opt);
        const CheckOptions copt{.samples = 80, .seed = 71};
        for (const auto &r :
             {check_leibniz(aut, copt), check_rb(aut, copt), check_section(aut, copt), check_assoc(aut, copt)})
            CHECK_MESSAGE(r.passed(), r.to_text());
    }

    TEST_CASE("the product is noncommutative") {
        const DecElem a = DecElem(j_X(x)), b = DecElem(j_X(y));
        CHECK(dec_product(a, b) != dec_product(b, a));
    }

    TEST_CASE("Rota-Baxter extension into Hurwitz series") {
        GenOptions opt;
        opt.max_vertices = 4;
        opt.max_order = 1;
        opt.max_terms = 2;
        const auto m = decorated_to_hurwitz(opt, 2);
        const CheckOptions copt{.samples = 20, .seed = 73};
        for (HomPart part : {HomPart::Mul, HomPart::D, HomPart::P}) {
            const auto r = check_hom(m, part, copt);
            CHECK_MESSAGE(r.passed(), r.to_text());
        }
        const auto base = nc_diff_algebra();
        const auto j = m.map(DecElem(j_X(x)));
        CHECK(j == eta(base, symbol_elem<NCWord>(x), 2));
    }
}
