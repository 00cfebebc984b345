#include <cctype>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <type_traits>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "drb/axioms.hpp"
#include "drb/examples.hpp"
#include "drb/expr.hpp"
#include "drb/runtime.hpp"

namespace {

using namespace drb;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string> &items, const std::string &sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

std::optional<Rational> parse_lambda(const std::string &text) {
    if (text == "formal") return std::nullopt;
    static const std::regex rational(R"(\s*(-?\d+)(?:\s*/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, rational))
        throw UsageError("--lambda expects 'formal' or a rational such as 2, -3 or 1/2; got '" + text + "'");
    Rational q(m[1].str());
    if (m[2].matched) {
        Rational d(m[2].str());
        if (d == 0) throw UsageError("--lambda: zero denominator");
        q /= d;
    }
    return q;
}

AlgebraKind parse_kind(const std::string &name) {
    if (auto k = parse_algebra_kind(name)) return *k;
    throw UsageError("unknown algebra '" + name + "'; available: " + join(algebra_kind_names()));
}

// Points at the error column of the offending input line.
void print_error(std::ostream &os, std::string_view input, const std::exception &e) {
    os << "error: " << e.what() << "\n";
    std::optional<SourcePos> pos;
    if (auto *pe = dynamic_cast<const ParseError *>(&e)) pos = pe->pos();
    if (auto *ee = dynamic_cast<const EvalError *>(&e)) pos = ee->pos();
    if (!pos) return;
    std::istringstream lines{std::string(input)};
    std::string line;
    for (std::size_t i = 0; i < pos->line && std::getline(lines, line); ++i) {
    }
    os << "  " << line << "\n  " << std::string(pos->column - 1, ' ') << "^\n";
}

// ---------------------------------------------------------------- eval

struct EvalSettings {
    std::string algebra = "forests";
    std::string lambda = "formal";
    std::size_t order = 5;
    bool json = false;
};

Context make_context(const EvalSettings &s) {
    Context ctx;
    ctx.algebra = parse_kind(s.algebra);
    ctx.lambda = parse_lambda(s.lambda);
    ctx.order = s.order;
    return ctx;
}

int eval_one(std::string_view input, const Context &ctx, bool json, std::ostream &out, std::ostream &err) {
    try {
        EvalOutput r = eval_text(input, ctx);
        out << (json ? r.json : r.text) << "\n";
        return kOk;
    } catch (const ParseError &e) {
        print_error(err, input, e);
    } catch (const EvalError &e) {
        print_error(err, input, e);
    } catch (const std::exception &e) {
        print_error(err, input, e);
    }
    return kUsage;
}

int run_eval(const EvalSettings &s, const std::vector<std::string> &words) {
    const Context ctx = make_context(s);
    std::string input = join(words, " ");
    if (words.empty() || input == "-") {
        std::ostringstream all;
        all << std::cin.rdbuf();
        input = all.str();
    }
    return eval_one(input, ctx, s.json, std::cout, std::cerr);
}

// ---------------------------------------------------------------- repl

int run_repl(EvalSettings s) {
    Context ctx = make_context(s);
    const bool interactive = isatty(STDIN_FILENO) != 0;
    auto prompt = [&] {
        if (interactive) std::cout << to_string(ctx.algebra) << "> " << std::flush;
    };
    prompt();
    std::string line;
    while (std::getline(std::cin, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            prompt();
            continue;
        }
        line = line.substr(first);
        if (line.front() == ':') {
            std::istringstream cmd(line.substr(1));
            std::string name, arg;
            cmd >> name >> arg;
            try {
                if (name == "quit" || name == "q") break;
                if (name == "algebra") {
                    if (arg.empty()) throw UsageError("available algebras: " + join(algebra_kind_names()));
                    ctx.algebra = parse_kind(arg);
                } else if (name == "lambda") {
                    ctx.lambda = parse_lambda(arg.empty() ? "formal" : arg);
                } else if (name == "order") {
                    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos || arg.size() > 3)
                        throw UsageError(":order expects a nonnegative integer");
                    ctx.order = std::stoul(arg);
                } else if (name == "json") {
                    s.json = arg != "off";
                } else if (name == "help") {
                    std::cout << ":algebra NAME  :lambda formal|Q  :order N  :json on|off  :quit\n";
                } else {
                    throw UsageError("unknown command ':" + name + "'; try :help");
                }
            } catch (const UsageError &e) {
                std::cout << "error: " << e.what() << "\n";
            }
        } else {
            eval_one(line, ctx, s.json, std::cout, std::cout);
        }
        prompt();
    }
    return kOk;
}

// ---------------------------------------------------------------- check

struct CheckSettings {
    std::string identity;
    std::string algebra;
    std::size_t samples = 300;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string lambda = "1";
    std::optional<std::size_t> order;
    bool json = false;
};

using Reports = std::vector<CheckReport>;

template <class T>
std::map<std::string, std::function<Reports()>> identity_table(AlgebraUnderTest<T> aut, const CheckOptions &opt,
                                                               std::type_identity_t<std::optional<AlgebraUnderTest<T>>> triples = {}) {
    std::map<std::string, std::function<Reports()>> t;
    const AlgebraHandle<T> &A = aut.alg;
    if (A.has_d()) {
        t["leibniz"] = [=] { return Reports{check_leibniz(aut, opt)}; };
        t["weak-leibniz"] = [=] {
            CheckOptions weak = opt;
            weak.weak = true;
            return Reports{check_leibniz(aut, weak)};
        };
    }
    if (A.has_P()) t["rb"] = [=] { return Reports{check_rb(aut, opt)}; };
    if (A.has_d() && A.has_P()) t["section"] = [=] { return Reports{check_section(aut, opt)}; };
    t["assoc"] = [=] { return Reports{check_assoc(triples.value_or(aut), opt)}; };
    return t;
}

template <class S, class T>
std::map<std::string, std::function<Reports()>> hom_table(MorphismUnderTest<S, T> m, const CheckOptions &opt) {
    std::map<std::string, std::function<Reports()>> t;
    t["hom-mul"] = [=] { return Reports{check_hom(m, HomPart::Mul, opt)}; };
    t["hom-d"] = [=] { return Reports{check_hom(m, HomPart::D, opt)}; };
    t["hom-P"] = [=] { return Reports{check_hom(m, HomPart::P, opt)}; };
    t["hom"] = [=] {
        return Reports{check_hom(m, HomPart::Mul, opt), check_hom(m, HomPart::D, opt), check_hom(m, HomPart::P, opt)};
    };
    return t;
}

GenOptions with(GenOptions g, std::function<void(GenOptions &)> edit) {
    edit(g);
    return g;
}

const std::vector<std::string> &check_algebra_names() {
    static const std::vector<std::string> names = {
        "forests",  "decorated",  "sha",           "freediff-comm",   "freediff-nc",     "hurwitz",
        "hurwitz-nc", "degenerate", "difference",  "broken-forests",  "shifted-forests", "sha-hurwitz",
        "decorated-hurwitz", "degenerate-mismatch"};
    return names;
}

std::map<std::string, std::function<Reports()>> check_table(const CheckSettings &s) {
    CheckOptions opt;
    opt.samples = s.samples;
    opt.seed = s.seed;
    opt.threads = s.threads;
    const GenOptions base;
    const std::size_t series_order = s.order.value_or(5);
    const std::size_t hom_order = s.order.value_or(3);
    const GenOptions hom_gen = with(base, [](GenOptions &g) {
        g.max_slots = 4;
        g.max_degree = 2;
        g.max_order = 1;
        g.max_terms = 2;
    });
    const std::string &a = s.algebra;
    if (a == "forests") return identity_table(forests_under_test(base), opt);
    if (a == "decorated") return identity_table(decorated_under_test(base), opt);
    if (a == "sha")
        return identity_table(sha_under_test(with(base, [](GenOptions &g) { g.max_slots = 3; })), opt,
                              sha_under_test(with(base, [](GenOptions &g) { g.max_slots = 2; })));
    if (a == "freediff-comm") return identity_table(comm_under_test(base), opt);
    if (a == "freediff-nc") return identity_table(nc_under_test(base), opt);
    if (a == "hurwitz")
        return identity_table(hurwitz_under_test(with(base, [](GenOptions &g) { g.variables = {"x"}; }), series_order),
                              opt);
    if (a == "hurwitz-nc")
        return identity_table(
            hurwitz_nc_under_test(with(base, [](GenOptions &g) { g.variables = {"x"}; }), series_order), opt);
    if (a == "degenerate") {
        const std::optional<Rational> l0 = parse_lambda(s.lambda);
        if (!l0 || *l0 == 0) throw UsageError("the degenerate instance needs a nonzero rational --lambda");
        return identity_table(degenerate_instance(*l0), opt);
    }
    if (a == "difference") return identity_table(difference_instance(), opt);
    if (a == "broken-forests") {
        AlgebraUnderTest<ForestElem> aut = forests_under_test(base);
        aut.alg = broken_forest_algebra();
        return identity_table(aut, opt);
    }
    if (a == "shifted-forests") {
        AlgebraUnderTest<ForestElem> aut = forests_under_test(base);
        aut.alg = shifted_forest_algebra();
        return identity_table(aut, opt);
    }
    if (a == "sha-hurwitz")
        return hom_table(sha_to_hurwitz(with(hom_gen, [](GenOptions &g) { g.variables = {"x"}; }), hom_order), opt);
    if (a == "decorated-hurwitz") return hom_table(decorated_to_hurwitz(hom_gen, hom_order), opt);
    if (a == "degenerate-mismatch") return hom_table(degenerate_identity_mismatch(), opt);
    throw UsageError("unknown algebra '" + a + "'; available: " + join(check_algebra_names()));
}

int run_check(const CheckSettings &s) {
    const auto table = check_table(s);
    auto it = table.find(s.identity);
    if (it == table.end()) {
        std::vector<std::string> names;
        for (const auto &[name, _] : table) names.push_back(name);
        throw UsageError("identity '" + s.identity + "' is not available for " + s.algebra + "; available: " +
                         join(names));
    }
    const Reports reports = it->second();
    bool ok = true;
    nlohmann::json docs = nlohmann::json::array();
    for (const CheckReport &r : reports) {
        ok = ok && r.passed();
        if (s.json) {
            docs.push_back(nlohmann::json::parse(r.to_json()));
        } else {
            std::cout << r.to_text() << "\n";
        }
    }
    if (s.json) std::cout << (docs.size() == 1 ? docs[0] : docs).dump(2) << "\n";
    return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- examples

int run_examples(bool json) {
    bool ok = true;
    nlohmann::json doc = nlohmann::json::array();
    for (const WorkedExample &ex : worked_examples()) {
        const ExampleOutcome r = run_example(ex);
        ok = ok && r.passed;
        if (json) {
            doc.push_back({{"id", r.id}, {"input", ex.input}, {"algebra", to_string(ex.algebra)},
                           {"expected", r.expected}, {"actual", r.actual}, {"passed", r.passed}});
            continue;
        }
        std::printf("%s %-32s %s  (%.3f ms)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), ex.input.c_str(),
                    r.elapsed_ms);
        std::printf("     = %s\n", r.actual.c_str());
        if (!r.passed) std::printf("     expected %s\n", r.expected.c_str());
    }
    for (const DisplayErratum &er : display_errata()) {
        const ExampleOutcome r = run_erratum(er);
        ok = ok && r.passed;
        if (json) {
            doc.push_back({{"id", r.id}, {"printed", er.printed}, {"computed", er.computed}, {"note", er.note},
                           {"expected_difference", r.expected}, {"difference", r.actual}, {"passed", r.passed}});
            continue;
        }
        std::printf("%s %-32s printed: %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), er.printed.c_str());
        std::printf("     computed - printed = %s\n", r.actual.c_str());
        std::printf("     note: %s\n", er.note.c_str());
    }
    if (json) std::cout << doc.dump(2) << "\n";
    return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char **argv) {
    drb::configure_allocator();
    CLI::App app{"Differential Rota-Baxter algebra calculator"};
    app.require_subcommand(1);

    EvalSettings es;
    auto add_eval_flags = [&](CLI::App *cmd) {
        cmd->add_option("--algebra", es.algebra, "Active algebra: " + join(algebra_kind_names()))->capture_default_str();
        cmd->add_option("--lambda", es.lambda, "'formal' or a rational value for L")->capture_default_str();
        cmd->add_option("--order", es.order, "Hurwitz truncation order")->capture_default_str();
        cmd->add_flag("--json", es.json, "Print JSON");
    };
    CLI::App *eval = app.add_subcommand("eval", "Evaluate an expression (read stdin when none is given)");
    add_eval_flags(eval);
    eval->allow_extras();
    eval->footer("EXPR: the expression; stdin is read when it is omitted or '-'.");
    CLI::App *repl = app.add_subcommand("repl", "Read-eval-print loop");
    add_eval_flags(repl);

    CheckSettings cs;
    std::size_t order_value = 0;
    CLI::App *check = app.add_subcommand("check", "Check an identity on seeded random samples");
    check->add_option("identity", cs.identity, "leibniz, weak-leibniz, rb, section, assoc, hom, hom-mul, hom-d, hom-P")
        ->required();
    check->add_option("target", cs.algebra, "Algebra or morphism: " + join(check_algebra_names()));
    check->add_option("--samples", cs.samples, "Number of samples")->capture_default_str();
    check->add_option("--seed", cs.seed, "Base seed")->capture_default_str();
    check->add_option("--threads", cs.threads, "Worker threads")->capture_default_str();
    check->add_option("--lambda", cs.lambda, "L for the degenerate instance")->capture_default_str();
    CLI::Option *order_opt = check->add_option("--order", order_value, "Hurwitz order (5, or 3 for morphisms)");
    check->add_flag("--json", cs.json, "Print JSON");
    check->add_option("--algebra", cs.algebra, "Same as the positional algebra");

    bool examples_json = false;
    CLI::App *examples = app.add_subcommand("examples", "Replay the worked examples against their goldens");
    examples->add_flag("--json", examples_json, "Print JSON");

    // Everything after `--` is expression text.
    std::vector<std::string> tail;
    for (int i = 1; i < argc; ++i) {
        if (std::string_view(argv[i]) != "--") continue;
        tail.assign(argv + i + 1, argv + argc);
        argc = i;
        break;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*eval) {
            std::vector<std::string> words = eval->remaining();
            for (const std::string &w : words)
                if (w.size() > 2 && w.starts_with("--") && std::isalpha(static_cast<unsigned char>(w[2])))
                    throw UsageError("unknown option '" + w + "'");
            words.insert(words.end(), tail.begin(), tail.end());
            return run_eval(es, words);
        }
        if (*repl) return run_repl(es);
        if (*check) {
            if (order_opt->count() > 0) cs.order = order_value;
            if (cs.algebra.empty()) throw UsageError("check needs an algebra; available: " + join(check_algebra_names()));
            return run_check(cs);
        }
        if (*examples) return run_examples(examples_json);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
