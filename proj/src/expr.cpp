#include "drb/expr.hpp"

#include <cctype>
#include <functional>

#include <json.hpp>

namespace drb {

namespace {

std::string position_text(SourcePos pos) {
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column);
}

// ---------------------------------------------------------------- algebra kinds

struct KindName {
    AlgebraKind kind;
    const char *name;
};

constexpr KindName kKindNames[] = {
    {AlgebraKind::FreeDiffComm, "freediff-comm"}, {AlgebraKind::FreeDiffNC, "freediff-nc"},
    {AlgebraKind::Sha, "sha"},                    {AlgebraKind::Forests, "forests"},
    {AlgebraKind::Decorated, "decorated"},        {AlgebraKind::Hurwitz, "hurwitz"},
    {AlgebraKind::HurwitzNC, "hurwitz-nc"},       {AlgebraKind::HurwitzScalar, "hurwitz-scalar"},
};

// ---------------------------------------------------------------- lexer

enum class Tok { Int, Ident, Dot, LBrack, RBrack, LParen, RParen, Plus, Minus, Star, Slash, Caret, Bar, Comma, Tensor, End };

struct Token {
    Tok type;
    std::string text;
    SourcePos begin;
    SourcePos end;
    std::optional<unsigned> order;  // Ident with an explicit `_(n)`
};

bool is_function_name(const std::string &s) { return s == "d" || s == "P" || s == "eta"; }
bool is_reserved(const std::string &s) { return s == "L" || is_function_name(s); }

std::string describe(const Token &t) {
    switch (t.type) {
        case Tok::End: return "end of input";
        case Tok::Tensor: return "'(x)'";
        case Tok::Int: return "number '" + t.text + "'";
        case Tok::Ident: return "'" + t.text + (t.order ? "_(" + std::to_string(*t.order) + ")" : "") + "'";
        default: return "'" + t.text + "'";
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            const SourcePos begin = pos_;
            if (at_end()) {
                out.push_back({Tok::End, "", begin, begin, std::nullopt});
                return out;
            }
            const char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
                out.push_back({Tok::Int, digits, begin, pos_, std::nullopt});
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                out.push_back(identifier(begin));
            } else if (c == '(' && !out.empty() && ends_operand(out.back()) && tensor_ahead()) {
                for (int i = 0; i < tensor_length_; ++i) advance();
                out.push_back({Tok::Tensor, "(x)", begin, pos_, std::nullopt});
            } else {
                advance();
                out.push_back({single(c, begin), std::string(1, c), begin, pos_, std::nullopt});
            }
        }
    }

private:
    bool at_end() const { return i_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }

    char advance() {
        const char c = src_[i_++];
        if (c == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        return c;
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    static bool ends_operand(const Token &t) {
        switch (t.type) {
            case Tok::Int:
            case Tok::Dot:
            case Tok::RBrack:
            case Tok::RParen: return true;
            case Tok::Ident: return !is_function_name(t.text) || t.order.has_value();
            default: return false;
        }
    }

    // `(` spaces `x` spaces `)`, with `x` not the start of a longer identifier.
    bool tensor_ahead() {
        std::size_t k = 1;
        auto space = [&] {
            while (std::isspace(static_cast<unsigned char>(peek(k))) && peek(k) != '\0') ++k;
        };
        space();
        if (peek(k) != 'x') return false;
        ++k;
        if (std::isalnum(static_cast<unsigned char>(peek(k))) || peek(k) == '_') return false;
        space();
        if (peek(k) != ')') return false;
        tensor_length_ = static_cast<int>(k + 1);
        return true;
    }

    Token identifier(SourcePos begin) {
        std::string name;
        while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) name += advance();
        std::optional<unsigned> order;
        if (peek() == '_') {
            const SourcePos at = pos_;
            advance();
            if (peek() != '(') throw ParseError(at, "expected '(' after '_' in symbol '" + name + "_(n)'");
            advance();
            std::string digits;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
            if (digits.empty()) throw ParseError(pos_, "expected a derivative order in symbol '" + name + "_(n)'");
            if (peek() != ')') throw ParseError(pos_, "expected ')' to close symbol '" + name + "_(" + digits + "'");
            advance();
            if (digits.size() > 6) throw ParseError(at, "derivative order " + digits + " is too large");
            order = static_cast<unsigned>(std::stoul(digits));
        }
        return {Tok::Ident, name, begin, pos_, order};
    }

    static Tok single(char c, SourcePos at) {
        switch (c) {
            case '.': return Tok::Dot;
            case '[': return Tok::LBrack;
            case ']': return Tok::RBrack;
            case '(': return Tok::LParen;
            case ')': return Tok::RParen;
            case '+': return Tok::Plus;
            case '-': return Tok::Minus;
            case '*': return Tok::Star;
            case '/': return Tok::Slash;
            case '^': return Tok::Caret;
            case '|': return Tok::Bar;
            case ',': return Tok::Comma;
            default: break;
        }
        throw ParseError(at, std::string("unknown character '") + c + "'");
    }

    std::string_view src_;
    std::size_t i_ = 0;
    SourcePos pos_;
    int tensor_length_ = 0;
};

// ---------------------------------------------------------------- parser

using Mode = std::optional<AlgebraKind>;  // nullopt: scalar entries

Expr node(Expr::Kind kind, SourceSpan span, std::vector<Expr> args = {}) {
    Expr e;
    e.kind = kind;
    e.span = span;
    e.args = std::move(args);
    return e;
}

Expr binary(Expr::Kind kind, Expr lhs, Expr rhs) {
    const SourceSpan span{lhs.span.begin, rhs.span.end};
    std::vector<Expr> args;
    args.push_back(std::move(lhs));
    args.push_back(std::move(rhs));
    return node(kind, span, std::move(args));
}

class Parser {
public:
    Parser(std::vector<Token> tokens, Mode mode) : toks_(std::move(tokens)), mode_(mode) {}

    Expr run() {
        if (peek().type == Tok::End) throw ParseError(peek().begin, "empty expression");
        Expr e = sum();
        const Token &t = peek();
        if (t.type == Tok::RBrack || t.type == Tok::RParen)
            throw ParseError(t.begin, "unbalanced '" + t.text + "' with no matching opener");
        if (t.type != Tok::End) throw ParseError(t.begin, "unexpected " + describe(t));
        return e;
    }

private:
    const Token &peek() const { return toks_[i_]; }
    const Token &take() { return toks_[i_++]; }
    bool accept(Tok t) {
        if (peek().type != t) return false;
        ++i_;
        return true;
    }

    bool decorated() const { return mode_ == AlgebraKind::Decorated; }
    bool series_mode() const { return mode_ && is_hurwitz(*mode_); }

    const Token &close(Tok type, const Token &opener) {
        if (peek().type == type) return take();
        const char *want = type == Tok::RBrack ? "']'" : "')'";
        if (peek().type == Tok::End)
            throw ParseError(opener.begin, "unbalanced '" + opener.text + "': missing " + want);
        throw ParseError(peek().begin, std::string("expected ") + want + " to close '" + opener.text + "' at " +
                                           position_text(opener.begin) + ", found " + describe(peek()));
    }

    Expr sum() {
        Expr lhs = tensor();
        for (;;) {
            if (accept(Tok::Plus)) {
                lhs = binary(Expr::Kind::Add, std::move(lhs), tensor());
            } else if (accept(Tok::Minus)) {
                lhs = binary(Expr::Kind::Sub, std::move(lhs), tensor());
            } else {
                return lhs;
            }
        }
    }

    Expr tensor() {
        Expr lhs = product();
        while (accept(Tok::Tensor)) lhs = binary(Expr::Kind::Tensor, std::move(lhs), product());
        return lhs;
    }

    Expr product() {
        Expr lhs = concat();
        while (accept(Tok::Star)) lhs = binary(Expr::Kind::Mul, std::move(lhs), concat());
        return lhs;
    }

    Expr concat() {
        Expr lhs = unary();
        for (;;) {
            if (accept(Tok::Bar)) {
                lhs = binary(Expr::Kind::Concat, std::move(lhs), unary());
            } else if (decorated() && peek().type == Tok::Ident && !is_reserved(peek().text)) {
                const Token &t = take();
                Expr j = binary(Expr::Kind::Junction, std::move(lhs), unary());
                j.symbol = Symbol(t.text, t.order.value_or(0));
                lhs = std::move(j);
            } else {
                return lhs;
            }
        }
    }

    Expr unary() {
        if (peek().type == Tok::Minus) {
            const SourcePos begin = take().begin;
            Expr inner = unary();
            const SourceSpan span{begin, inner.span.end};
            std::vector<Expr> args;
            args.push_back(std::move(inner));
            return node(Expr::Kind::Neg, span, std::move(args));
        }
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!accept(Tok::Caret)) return base;
        const Token &t = peek();
        if (t.type != Tok::Int) throw ParseError(t.begin, "expected a nonnegative integer exponent after '^'");
        take();
        if (t.text.size() > 4) throw ParseError(t.begin, "exponent " + t.text + " is too large");
        const SourceSpan span{base.span.begin, t.end};
        std::vector<Expr> args;
        args.push_back(std::move(base));
        Expr e = node(Expr::Kind::Power, span, std::move(args));
        e.exponent = static_cast<unsigned>(std::stoul(t.text));
        return e;
    }

    Expr primary() {
        const Token &t = peek();
        switch (t.type) {
            case Tok::Int: return number();
            case Tok::Ident: return identifier();
            case Tok::Dot: take(); return node(Expr::Kind::Dot, {t.begin, t.end});
            case Tok::LBrack: return bracket();
            case Tok::LParen: {
                const Token &open = take();
                Expr inner = sum();
                const Token &end = close(Tok::RParen, open);
                inner.span = {open.begin, end.end};
                return inner;
            }
            case Tok::End: throw ParseError(t.begin, "unexpected end of input");
            case Tok::RBrack:
            case Tok::RParen: throw ParseError(t.begin, "unbalanced '" + t.text + "' with no matching opener");
            default: throw ParseError(t.begin, "unexpected " + describe(t));
        }
    }

    Expr number() {
        const Token &num = take();
        Rational q(num.text);
        SourcePos end = num.end;
        if (accept(Tok::Slash)) {
            const Token &den = peek();
            if (den.type != Tok::Int) throw ParseError(den.begin, "expected a denominator after '/'");
            take();
            Rational d(den.text);
            if (d == 0) throw ParseError(den.begin, "zero denominator");
            q /= d;
            end = den.end;
        }
        Expr e = node(Expr::Kind::Number, {num.begin, end});
        e.number = q;
        return e;
    }

    Expr identifier() {
        const Token &t = take();
        if (is_reserved(t.text) && t.order) throw ParseError(t.begin, "'" + t.text + "' is reserved and cannot be a symbol");
        if (t.text == "L") return node(Expr::Kind::Lambda, {t.begin, t.end});
        if (is_function_name(t.text)) {
            const Token &open = peek();
            if (open.type != Tok::LParen) throw ParseError(open.begin, "expected '(' after '" + t.text + "'");
            take();
            Expr arg = sum();
            const Token &end = close(Tok::RParen, open);
            const Expr::Kind kind = t.text == "d" ? Expr::Kind::D : t.text == "P" ? Expr::Kind::P : Expr::Kind::Eta;
            std::vector<Expr> args;
            args.push_back(std::move(arg));
            return node(kind, {t.begin, end.end}, std::move(args));
        }
        Expr e = node(Expr::Kind::Symbol, {t.begin, t.end});
        e.symbol = Symbol(t.text, t.order.value_or(0));
        return e;
    }

    Expr bracket() {
        const Token &open = take();
        if (series_mode()) {
            const Mode saved = mode_;
            mode_ = hurwitz_base(*mode_);
            std::vector<Expr> entries;
            entries.push_back(sum());
            while (accept(Tok::Comma)) entries.push_back(sum());
            mode_ = saved;
            const Token &end = close(Tok::RBrack, open);
            return node(Expr::Kind::Series, {open.begin, end.end}, std::move(entries));
        }
        if (peek().type == Tok::RBrack) throw ParseError(peek().begin, "empty brackets: grafting needs a forest");
        Expr inner = sum();
        if (peek().type == Tok::Comma) throw ParseError(peek().begin, "',' is only allowed in Hurwitz series literals");
        const Token &end = close(Tok::RBrack, open);
        std::vector<Expr> args;
        args.push_back(std::move(inner));
        return node(Expr::Kind::Graft, {open.begin, end.end}, std::move(args));
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    Mode mode_;
};

// ---------------------------------------------------------------- decorated literals

struct LiteralCount {
    std::size_t leaves = 0;
    std::size_t decorations = 0;
    bool has_bar = false;
};

// Leaf and decoration counts of a forest literal; nullopt if `e` is not one.
std::optional<LiteralCount> literal_count(const Expr &e) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Dot: return LiteralCount{1, 0, false};
        case K::Symbol: return LiteralCount{2, 1, false};
        case K::Graft: return literal_count(e.args[0]);
        case K::Concat:
        case K::Junction: {
            auto a = literal_count(e.args[0]);
            auto b = literal_count(e.args[1]);
            if (!a || !b) return std::nullopt;
            const std::size_t extra = e.kind == K::Junction ? 1 : 0;
            return LiteralCount{a->leaves + b->leaves, a->decorations + b->decorations + extra,
                                a->has_bar || b->has_bar || e.kind == K::Concat};
        }
        default: return std::nullopt;
    }
}

const Expr *first_bar(const Expr &e) {
    if (e.kind == Expr::Kind::Concat) return &e;
    for (const Expr &a : e.args)
        if (const Expr *b = first_bar(a)) return b;
    return nullptr;
}

// '|' never yields a decorated forest: every tree after the first needs a
// decoration in the angle before it.
void check_decorations(const Expr &e) {
    if (auto c = literal_count(e)) {
        if (c->has_bar)
            throw ParseError(e.span.begin, "decoration-count mismatch: forest literal has " + std::to_string(c->leaves) +
                                               " leaves and needs " + std::to_string(c->leaves - 1) +
                                               " decorations, found " + std::to_string(c->decorations) +
                                               " (separate trees with a decoration symbol, not '|')");
        return;
    }
    if (e.kind == Expr::Kind::Concat)
        throw ParseError(e.span.begin,
                         "decoration-count mismatch: '|' adds a tree without a decoration; separate trees with a "
                         "decoration symbol");
    for (const Expr &a : e.args) check_decorations(a);
}

// ---------------------------------------------------------------- evaluation

template <class T>
struct Ops {
    explicit Ops(AlgebraHandle<T> a) : alg(std::move(a)) {}

    AlgebraHandle<T> alg;
    std::function<T(const Symbol &)> symbol;
    std::function<T()> dot;
    std::function<T(const T &)> graft;
    std::function<T(const T &, const T &)> concat;
    std::function<T(const T &, const Symbol &, const T &)> junction;
    std::function<T(const T &, const T &)> tensor;
    std::function<T(const Expr &)> series;
    std::function<T(const Expr &)> eta;
};

[[noreturn]] void unavailable(const Expr &e, const std::string &what, const std::string &algebra,
                              const std::string &hint = "") {
    throw EvalError(e.span.begin, what + " is not available in " + algebra + (hint.empty() ? "" : "; " + hint));
}

template <class T>
T eval_node(const Ops<T> &ops, const Expr &e) {
    using K = Expr::Kind;
    const AlgebraHandle<T> &alg = ops.alg;
    auto arg = [&](std::size_t i) { return eval_node(ops, e.args[i]); };
    try {
        switch (e.kind) {
            case K::Number: return alg.scale(Scalar(e.number), alg.one());
            case K::Lambda: return alg.scale(Scalar::lambda(), alg.one());
            case K::Symbol:
                if (!ops.symbol) unavailable(e, "symbol '" + e.symbol.to_string() + "'", alg.name,
                                             ops.eta ? "write eta(...) or a series literal [...]" : "");
                return ops.symbol(e.symbol);
            case K::Dot:
                if (!ops.dot) unavailable(e, "'.'", alg.name);
                return ops.dot();
            case K::Graft:
                if (!ops.graft) unavailable(e, "grafting '[...]'", alg.name);
                return ops.graft(arg(0));
            case K::Series:
                if (!ops.series) unavailable(e, "a series literal", alg.name);
                return ops.series(e);
            case K::Neg: return alg.scale(Scalar(-1L), arg(0));
            case K::Add: return alg.add(arg(0), arg(1));
            case K::Sub: return alg.sub(arg(0), arg(1));
            case K::Mul: return alg.mul(arg(0), arg(1));
            case K::Tensor:
                if (!ops.tensor) unavailable(e, "'(x)'", alg.name);
                return ops.tensor(arg(0), arg(1));
            case K::Concat:
                if (!ops.concat) unavailable(e, "'|'", alg.name);
                return ops.concat(arg(0), arg(1));
            case K::Junction:
                if (!ops.junction) unavailable(e, "a decoration junction", alg.name);
                return ops.junction(arg(0), e.symbol, arg(1));
            case K::Power: return alg.power(arg(0), e.exponent);
            case K::D:
                if (!alg.has_d()) unavailable(e, "d(...)", alg.name);
                return alg.d(arg(0));
            case K::P:
                if (!alg.has_P()) unavailable(e, "P(...)", alg.name);
                return alg.P(arg(0));
            case K::Eta:
                if (!ops.eta) unavailable(e, "eta(...)", alg.name);
                return ops.eta(e.args[0]);
        }
    } catch (const std::invalid_argument &ex) {
        throw EvalError(e.span.begin, ex.what());
    }
    throw EvalError(e.span.begin, "unknown expression node");
}

template <FreeWord W>
Ops<LinComb<W>> free_ops(AlgebraHandle<LinComb<W>> alg) {
    Ops<LinComb<W>> ops(std::move(alg));
    ops.symbol = [](const Symbol &s) { return symbol_elem<W>(s); };
    return ops;
}

Ops<Scalar> scalar_ops() { return Ops<Scalar>(scalar_algebra()); }

template <class A>
Ops<HurwitzSeries<A>> hurwitz_ops(Ops<A> base, std::size_t order) {
    using S = HurwitzSeries<A>;
    Ops<S> ops(hurwitz_algebra(base.alg, order));
    ops.series = [base](const Expr &e) {
        std::vector<A> entries;
        for (const Expr &entry : e.args) entries.push_back(eval_node(base, entry));
        return S(std::move(entries));
    };
    if (base.alg.has_d())
        ops.eta = [base, order](const Expr &e) { return drb::eta(base.alg, eval_node(base, e), order); };
    return ops;
}

Ops<ShaElem> sha_ops() {
    Ops<ShaElem> ops(sha_algebra());
    ops.symbol = [](const Symbol &s) { return j_A(symbol_elem<CommMonomial>(s)); };
    ops.tensor = [](const ShaElem &a, const ShaElem &b) { return tensor_concat(a, b); };
    return ops;
}

Ops<ForestElem> forest_ops() {
    Ops<ForestElem> ops(forest_algebra());
    ops.dot = [] { return forest_unit(); };
    ops.graft = [](const ForestElem &u) { return graft(u); };
    ops.concat = [](const ForestElem &a, const ForestElem &b) { return concat(a, b); };
    return ops;
}

Ops<DecElem> decorated_ops() {
    Ops<DecElem> ops(decorated_algebra());
    ops.symbol = [](const Symbol &s) { return DecElem(j_X(s)); };
    ops.dot = [] { return dec_unit(); };
    ops.graft = [](const DecElem &u) { return P_X(u); };
    ops.junction = [](const DecElem &a, const Symbol &y, const DecElem &b) { return junction(a, y, b); };
    return ops;
}

// ---------------------------------------------------------------- output

nlohmann::json coeff_json(const Scalar &c) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Rational &q : c.coefficients()) coeffs.push_back(q.get_str());
    return {{"text", c.to_string()}, {"coefficients", coeffs}};
}

nlohmann::json tree_json(const Tree &t) {
    nlohmann::json children = nlohmann::json::array();
    for (const Tree &c : t.children()) children.push_back(tree_json(c));
    return children;
}

nlohmann::json forest_json(const Forest &f) {
    nlohmann::json trees = nlohmann::json::array();
    for (const Tree &t : f.trees()) trees.push_back(tree_json(t));
    return trees;
}

nlohmann::json symbols_json(const std::vector<Symbol> &symbols) {
    nlohmann::json out = nlohmann::json::array();
    for (const Symbol &s : symbols) out.push_back(s.to_string());
    return out;
}

nlohmann::json basis_json(const CommMonomial &m) { return {{"basis", m.to_string()}, {"factors", symbols_json(m.factors())}}; }
nlohmann::json basis_json(const NCWord &w) { return {{"basis", w.to_string()}, {"factors", symbols_json(w.factors())}}; }

nlohmann::json basis_json(const TensorWord &w) {
    nlohmann::json slots = nlohmann::json::array();
    for (const CommMonomial &m : w.slots()) slots.push_back(m.to_string());
    return {{"basis", w.to_string()}, {"slots", slots}};
}

nlohmann::json basis_json(const Forest &f) { return {{"basis", f.code()}, {"forest", forest_json(f)}}; }

nlohmann::json basis_json(const DecForest &d) {
    return {{"basis", d.to_string()}, {"shape", forest_json(d.shape())}, {"decorations", symbols_json(d.decorations())}};
}

template <class Key>
void terms_json(nlohmann::json &doc, const LinComb<Key> &u) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[k, c] : u) {
        nlohmann::json t = basis_json(k);
        t["coeff"] = coeff_json(c);
        terms.push_back(std::move(t));
    }
    doc["terms"] = std::move(terms);
}

template <class A>
void terms_json(nlohmann::json &doc, const HurwitzSeries<A> &f, const AlgebraHandle<A> &base) {
    nlohmann::json entries = nlohmann::json::array();
    for (const A &a : f.entries()) entries.push_back(base.show(a));
    doc["order"] = f.order();
    doc["entries"] = std::move(entries);
}

}  // namespace

ParseError::ParseError(SourcePos pos, const std::string &message)
    : std::runtime_error(position_text(pos) + ": " + message), pos_(pos), detail_(message) {}

EvalError::EvalError(SourcePos pos, const std::string &message)
    : std::runtime_error(position_text(pos) + ": " + message), pos_(pos) {}

std::string to_string(AlgebraKind kind) {
    for (const auto &[k, name] : kKindNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<AlgebraKind> parse_algebra_kind(std::string_view name) {
    for (const auto &[k, n] : kKindNames)
        if (name == n) return k;
    return std::nullopt;
}

const std::vector<std::string> &algebra_kind_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &kn : kKindNames) v.emplace_back(kn.name);
        return v;
    }();
    return names;
}

bool is_hurwitz(AlgebraKind kind) {
    return kind == AlgebraKind::Hurwitz || kind == AlgebraKind::HurwitzNC || kind == AlgebraKind::HurwitzScalar;
}

std::optional<AlgebraKind> hurwitz_base(AlgebraKind kind) {
    switch (kind) {
        case AlgebraKind::Hurwitz: return AlgebraKind::FreeDiffComm;
        case AlgebraKind::HurwitzNC: return AlgebraKind::FreeDiffNC;
        default: return std::nullopt;
    }
}

std::string to_sexpr(const Expr &e) {
    using K = Expr::Kind;
    auto call = [&](const std::string &head) {
        std::string out = "(" + head;
        for (const Expr &a : e.args) out += " " + to_sexpr(a);
        return out + ")";
    };
    switch (e.kind) {
        case K::Number: return e.number.get_str();
        case K::Lambda: return "L";
        case K::Symbol: return e.symbol.to_string();
        case K::Dot: return "dot";
        case K::Graft: return call("graft");
        case K::Series: return call("series");
        case K::Neg: return call("neg");
        case K::Add: return call("add");
        case K::Sub: return call("sub");
        case K::Mul: return call("mul");
        case K::Tensor: return call("tensor");
        case K::Concat: return call("concat");
        case K::Junction:
            return "(junction " + e.symbol.to_string() + " " + to_sexpr(e.args[0]) + " " + to_sexpr(e.args[1]) + ")";
        case K::Power: return "(pow " + to_sexpr(e.args[0]) + " " + std::to_string(e.exponent) + ")";
        case K::D: return call("d");
        case K::P: return call("P");
        case K::Eta: return call("eta");
    }
    return "?";
}

Expr parse(std::string_view input, AlgebraKind kind) {
    Expr e = Parser(Lexer(input).run(), kind).run();
    if (kind == AlgebraKind::Decorated) check_decorations(e);
    return e;
}

Value evaluate(const Expr &e, const Context &ctx) {
    switch (ctx.algebra) {
        case AlgebraKind::FreeDiffComm: return eval_node(free_ops<CommMonomial>(comm_diff_algebra()), e);
        case AlgebraKind::FreeDiffNC: return eval_node(free_ops<NCWord>(nc_diff_algebra()), e);
        case AlgebraKind::Sha: return eval_node(sha_ops(), e);
        case AlgebraKind::Forests: return eval_node(forest_ops(), e);
        case AlgebraKind::Decorated: return eval_node(decorated_ops(), e);
        case AlgebraKind::Hurwitz:
            return eval_node(hurwitz_ops(free_ops<CommMonomial>(comm_diff_algebra()), ctx.order), e);
        case AlgebraKind::HurwitzNC:
            return eval_node(hurwitz_ops(free_ops<NCWord>(nc_diff_algebra()), ctx.order), e);
        case AlgebraKind::HurwitzScalar: return eval_node(hurwitz_ops(scalar_ops(), ctx.order), e);
    }
    throw EvalError(e.span.begin, "unknown algebra");
}

Value specialize(const Value &v, const Rational &lambda0) {
    auto at = [&lambda0](const Scalar &c) { return Scalar(c.eval_at(lambda0)); };
    return std::visit(
        [&](const auto &x) -> Value {
            using V = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<V, HurwitzSeries<Scalar>>) {
                return HurwitzSeries<Scalar>(lift_D(at, x).entries());
            } else if constexpr (requires { x.order(); }) {
                return lift_D([&](const auto &a) { return a.map_coeffs(at); }, x);
            } else {
                return x.map_coeffs(at);
            }
        },
        v);
}

std::string show(const Value &v) {
    return std::visit(
        [](const auto &x) -> std::string {
            using V = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<V, HurwitzSeries<CommDiffElem>>) {
                return to_text(comm_diff_algebra(), x);
            } else if constexpr (std::is_same_v<V, HurwitzSeries<NCDiffElem>>) {
                return to_text(nc_diff_algebra(), x);
            } else if constexpr (std::is_same_v<V, HurwitzSeries<Scalar>>) {
                return to_text(scalar_algebra(), x);
            } else {
                return to_text(x);
            }
        },
        v);
}

std::string to_json(const Value &v, const Context &ctx, int indent) {
    nlohmann::json doc;
    doc["algebra"] = to_string(ctx.algebra);
    doc["lambda"] = ctx.lambda ? ctx.lambda->get_str() : "formal";
    doc["text"] = show(v);
    std::visit(
        [&](const auto &x) {
            using V = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<V, HurwitzSeries<CommDiffElem>>) {
                terms_json(doc, x, comm_diff_algebra());
            } else if constexpr (std::is_same_v<V, HurwitzSeries<NCDiffElem>>) {
                terms_json(doc, x, nc_diff_algebra());
            } else if constexpr (std::is_same_v<V, HurwitzSeries<Scalar>>) {
                terms_json(doc, x, scalar_algebra());
            } else {
                terms_json(doc, x);
            }
        },
        v);
    return doc.dump(indent);
}

EvalOutput eval_text(std::string_view input, const Context &ctx) {
    Value v = evaluate(parse(input, ctx.algebra), ctx);
    if (ctx.lambda) v = specialize(v, *ctx.lambda);
    std::string text = show(v);
    std::string json = to_json(v, ctx);
    return {std::move(v), std::move(text), std::move(json)};
}

}  // namespace drb
