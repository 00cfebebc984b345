#pragma once

// Surface syntax for every algebra in the library, the typed evaluator and
// canonical text/JSON output used by the command-line front end.
//
// Grammar, loosest binding first:
//   sum      := tensor (('+' | '-') tensor)*
//   tensor   := product ('(x)' product)*
//   product  := concat ('*' concat)*
//   concat   := unary (('|' | SYMBOL) unary)*       SYMBOL junctions: decorated mode
//   unary    := '-' unary | power
//   power    := primary ('^' INT)?
//   primary  := INT ('/' INT)? | 'L' | SYMBOL | '.' | '[' sum ']' | '(' sum ')'
//             | '[' sum (',' sum)* ']'               series literal: Hurwitz modes
//             | 'd' '(' sum ')' | 'P' '(' sum ')' | 'eta' '(' sum ')'
//   SYMBOL   := IDENT ('_(' INT ')')?               x is x_(0)
// `L`, `d`, `P` and `eta` are reserved. Entries of a series literal use the
// grammar of the Hurwitz base algebra.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "drb/decorated.hpp"
#include "drb/forest.hpp"
#include "drb/freediff.hpp"
#include "drb/hurwitz.hpp"
#include "drb/scalar.hpp"
#include "drb/shuffle.hpp"

namespace drb {

enum class AlgebraKind {
    FreeDiffComm,
    FreeDiffNC,
    Sha,
    Forests,
    Decorated,
    Hurwitz,        // over freediff-comm
    HurwitzNC,      // over freediff-nc
    HurwitzScalar,  // over ℚ[λ]
};

std::string to_string(AlgebraKind kind);
std::optional<AlgebraKind> parse_algebra_kind(std::string_view name);
const std::vector<std::string> &algebra_kind_names();
bool is_hurwitz(AlgebraKind kind);
// Kind of the entries of a Hurwitz kind; nullopt for the scalar base.
std::optional<AlgebraKind> hurwitz_base(AlgebraKind kind);

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
    friend bool operator==(const SourcePos &, const SourcePos &) = default;
};

struct SourceSpan {
    SourcePos begin;
    SourcePos end;  // one past the last character
};

// Parse errors carry the position of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, const std::string &message);
    SourcePos pos() const { return pos_; }
    const std::string &detail() const { return detail_; }

private:
    SourcePos pos_;
    std::string detail_;
};

// Type and domain errors found while evaluating a well-formed expression.
class EvalError : public std::runtime_error {
public:
    EvalError(SourcePos pos, const std::string &message);
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

struct Expr {
    enum class Kind {
        Number,  // number
        Lambda,
        Symbol,  // symbol
        Dot,
        Graft,      // args[0]
        Series,     // args = entries
        Neg,        // args[0]
        Add,        // args[0] + args[1]
        Sub,        // args[0] - args[1]
        Mul,        // args[0] * args[1]
        Tensor,     // args[0] (x) args[1]
        Concat,     // args[0] | args[1]
        Junction,   // args[0] symbol args[1]
        Power,      // args[0] ^ exponent
        D,          // d(args[0])
        P,          // P(args[0])
        Eta,        // eta(args[0])
    };

    Kind kind;
    SourceSpan span;
    Rational number;
    Symbol symbol;
    unsigned exponent = 0;
    std::vector<Expr> args;
};

// S-expression view of the tree, e.g. `(mul (graft (concat dot dot)) (graft dot))`.
std::string to_sexpr(const Expr &e);

Expr parse(std::string_view input, AlgebraKind kind);

struct Context {
    AlgebraKind algebra = AlgebraKind::Forests;
    std::optional<Rational> lambda;  // nullopt: λ stays formal
    std::size_t order = 5;           // Hurwitz truncation order
};

using Value = std::variant<CommDiffElem, NCDiffElem, ShaElem, ForestElem, DecElem, HurwitzSeries<CommDiffElem>,
                           HurwitzSeries<NCDiffElem>, HurwitzSeries<Scalar>>;

Value evaluate(const Expr &e, const Context &ctx);
// Substitutes λ = lambda0 in every coefficient.
Value specialize(const Value &v, const Rational &lambda0);

// Canonical text; parse(show(v)) evaluates back to v.
std::string show(const Value &v);
// JSON document with the algebra, the λ mode, the text and the structured terms.
std::string to_json(const Value &v, const Context &ctx, int indent = -1);

struct EvalOutput {
    Value value;
    std::string text;
    std::string json;
};

// parse + evaluate + optional λ specialization.
EvalOutput eval_text(std::string_view input, const Context &ctx);

}  // namespace drb
