#include "drb/examples.hpp"

#include <chrono>

namespace drb {

namespace {

constexpr const char *kEightTerms = "[.|[.]] + [[.|.]] + .|.|[.] + [.|.]|. + L*.|[.] + 2*L*[.|.] + L*.|.|. + L^2*.|.";
constexpr const char *kDecProduct = "[. x_(0) [.]] + [[. x_(0) .]] + L*[. x_(0) .]";
constexpr const char *kDecDerived = ". x_(0) [.] + [. x_(0) .] + L*. x_(0) .";

template <class F>
ExampleOutcome timed(std::string id, std::string expected, F &&compute) {
    ExampleOutcome out;
    out.id = std::move(id);
    out.expected = std::move(expected);
    const auto start = std::chrono::steady_clock::now();
    try {
        out.actual = compute();
        out.passed = out.actual == out.expected;
    } catch (const std::exception &e) {
        out.actual = std::string("error: ") + e.what();
    }
    out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace

const std::vector<WorkedExample> &worked_examples() {
    using K = AlgebraKind;
    static const std::vector<WorkedExample> examples = {
        {"forest-product", "[.|.] * [.]", K::Forests, "[.|.] * [.]", "[.|[.]] + [[.|.]] + L*[.|.]"},
        {"forest-product-recursion", "[.|.] * [.] by the tree recursion", K::Forests,
         "[(.|.) * [.]] + [[.|.] * .] + L*[(.|.) * .]", "[.|[.]] + [[.|.]] + L*[.|.]"},
        {"d-single-trees", "d([.|.]) and d([.|[.]])", K::Forests, "d([.|.]) + d([.|[.]])", ".|[.] + .|."},
        {"d-dot-graft", "d(.|[.])", K::Forests, "d(. | [.])", "[.] + .|. + L*."},
        {"d-dot-graft-expanded", "d(.|[.]) expanded", K::Forests, ". * [.] + (.|.) * . + L*(. * .)",
         "[.] + .|. + L*."},
        {"d-cherry-dot", "d([.|.]|.)", K::Forests, "d([.|.] | .)", "[.|.] + .|.|. + L*.|."},
        {"d-cherry-dot-expanded", "d([.|.]|.) expanded", K::Forests,
         "(.|.) * (.|.) + [.|.] * . + L*(.|.) * .", "[.|.] + .|.|. + L*.|."},
        {"d-cherry-graft", "d([.|.]|[.])", K::Forests, "d([.|.] | [.])", kEightTerms},
        {"d-cherry-graft-leibniz", "d([.|.]|[.]) by the Leibniz rule", K::Forests,
         "d([.|.]) * ((.|.) * [.]) + [.|.] * d((.|.) * [.]) + L*d([.|.]) * d((.|.) * [.])", kEightTerms},
        {"d-cherry-graft-substituted", "d([.|.]|[.]) with the factors substituted", K::Forests,
         "(.|.) * ((.|.) * [.]) + [.|.] * ([.] + .|. + L*.) + L*(.|.) * ([.] + .|. + L*.)", kEightTerms},
        {"d-cherry-graft-closed-form", "d([.|.]|[.]) by the subset sum", K::Forests,
         "[.|.] * d(.|[.]) + d([.|.]) * (.|.) * [.] + L*d([.|.]) * d(.|[.])", kEightTerms},
        {"decorated-product", "[. x .] * [.]", K::Decorated, "[. x .] * [.]", kDecProduct},
        {"decorated-derivative", "d([. x .] * [.])", K::Decorated, "d([. x .] * [.])", kDecDerived},
        {"decorated-derivative-expanded", "d of the expanded product", K::Decorated,
         "d([. x [.]] + [[. x .]] + L*[. x .])", kDecDerived},
        {"decorated-derivative-leibniz", "d([. x .]) * [.] + [. x .] * d([.]) + L*d([. x .]) * d([.])",
         K::Decorated, "d([. x .]) * [.] + [. x .] * d([.]) + L*d([. x .]) * d([.])", kDecDerived},
    };
    return examples;
}

const std::vector<DisplayErratum> &display_errata() {
    using K = AlgebraKind;
    static const std::vector<DisplayErratum> errata = {
        {"d-cherry-graft-printed", K::Forests, "d([.|.] | [.])",
         "[.|[.]] + [[.|.]] + 2*L*[.|.] + [.|.]|. + .|.|.|[.] + L*.|[.] + L*.|.|. + L^2*.|.", "-.|.|.|[.] + .|.|[.]",
         "the printed display has .|.|.|[.] for (.|.) * ((.|.) * [.]); since (.|.) * (.|.) = .|.|., the term is "
         ".|.|[.]"},
        {"d-cherry-graft-printed-sum", K::Forests, "d([.|.] | [.])",
         ".|.|.|[.] + [.|.] * [.] + [.|.]|. + L*[.|.] + L*.|[.] + L*.|.|. + L^2*.|.", "-.|.|.|[.] + .|.|[.]",
         "the same term appears in the intermediate line"},
        {"decorated-derivative-printed", K::Decorated, "d([. x .] * [.])", ". x [.] + [. x .] + . x .",
         "(-1 + L)*. x_(0) .",
         "the printed display has . x . where the weight-lambda term gives L*. x .; the Leibniz expansion it is "
         "said to agree with yields L*. x ."},
    };
    return errata;
}

ExampleOutcome run_example(const WorkedExample &ex) {
    return timed(ex.id, ex.expected, [&] {
        Context ctx;
        ctx.algebra = ex.algebra;
        return eval_text(ex.input, ctx).text;
    });
}

ExampleOutcome run_erratum(const DisplayErratum &er) {
    return timed(er.id, er.difference, [&] {
        Context ctx;
        ctx.algebra = er.algebra;
        Value diff = evaluate(parse("(" + er.computed + ") - (" + er.printed + ")", er.algebra), ctx);
        return show(diff);
    });
}

}  // namespace drb
