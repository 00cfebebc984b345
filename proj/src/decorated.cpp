#include "drb/decorated.hpp"

#include <stdexcept>

namespace drb {

namespace {

void write_tree(const Tree &t, const std::vector<Symbol> &decs, std::size_t &next, std::string &out);

void write_siblings(const std::vector<Tree> &trees, const std::vector<Symbol> &decs, std::size_t &next,
                    std::string &out) {
    for (std::size_t i = 0; i < trees.size(); ++i) {
        if (i > 0) out += " " + decs[next++].to_string() + " ";
        write_tree(trees[i], decs, next, out);
    }
}

void write_tree(const Tree &t, const std::vector<Symbol> &decs, std::size_t &next, std::string &out) {
    if (t.is_dot()) {
        out += '.';
        return;
    }
    out += '[';
    write_siblings(t.children(), decs, next, out);
    out += ']';
}

std::vector<Symbol> concat_symbols(const std::vector<Symbol> &a, const std::vector<Symbol> &b) {
    std::vector<Symbol> r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// d̄ on one decorated tree: 0 on •, (F̄; y⃗) on (⌊F̄⌋; y⃗).
DecElem d_tree(const DecForest &t) {
    if (t.is_unit()) return {};
    return DecElem(DecForest(t.shape().trees().front().branches(), t.decorations()));
}

DecForest tail_of(const DecDecomposition &parts, std::size_t from) {
    DecDecomposition tail;
    tail.trees.assign(parts.trees.begin() + static_cast<std::ptrdiff_t>(from), parts.trees.end());
    tail.junctions.assign(parts.junctions.begin() + static_cast<std::ptrdiff_t>(from), parts.junctions.end());
    return assemble(tail);
}

}  // namespace

DecForest::DecForest(Forest shape, std::vector<Symbol> decorations)
    : shape_(std::move(shape)), decorations_(std::move(decorations)) {
    if (decorations_.size() + 1 != shape_.leaves())
        throw std::invalid_argument("decorated forest " + shape_.code() + " has " + std::to_string(shape_.leaves()) +
                                    " leaves and needs " + std::to_string(shape_.leaves() - 1) +
                                    " decorations, got " + std::to_string(decorations_.size()));
}

std::string DecForest::to_string() const {
    std::string out;
    std::size_t next = 0;
    write_siblings(shape_.trees(), decorations_, next, out);
    return out;
}

std::strong_ordering operator<=>(const DecForest &a, const DecForest &b) {
    if (auto c = a.shape_ <=> b.shape_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.decorations_.begin(), a.decorations_.end(),
                                                  b.decorations_.begin(), b.decorations_.end());
}

DecDecomposition std_decomposition(const DecForest &d) {
    DecDecomposition parts;
    const auto &trees = d.shape().trees();
    const auto &decs = d.decorations();
    std::size_t pos = 0;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        if (i > 0) parts.junctions.push_back(decs[pos++]);
        const std::size_t own = trees[i].leaves() - 1;
        std::vector<Symbol> slice(decs.begin() + static_cast<std::ptrdiff_t>(pos),
                                  decs.begin() + static_cast<std::ptrdiff_t>(pos + own));
        pos += own;
        parts.trees.emplace_back(Forest(trees[i]), std::move(slice));
    }
    return parts;
}

DecForest assemble(const DecDecomposition &parts) {
    if (parts.trees.empty() || parts.junctions.size() + 1 != parts.trees.size())
        throw std::invalid_argument("assemble: need b trees and b-1 junction symbols");
    DecForest out = parts.trees.front();
    for (std::size_t i = 0; i < parts.junctions.size(); ++i) out = junction(out, parts.junctions[i], parts.trees[i + 1]);
    return out;
}

DecForest junction(const DecForest &left, const Symbol &y, const DecForest &right) {
    std::vector<Symbol> decs = left.decorations();
    decs.push_back(y);
    decs.insert(decs.end(), right.decorations().begin(), right.decorations().end());
    return DecForest(concat(left.shape(), right.shape()), std::move(decs));
}

DecElem junction(const DecElem &left, const Symbol &y, const DecElem &right) {
    return bilinear(left, right, [&y](const DecForest &a, const DecForest &b) { return DecElem(junction(a, y, b)); });
}

DecElem dec_product(const DecForest &a, const DecForest &b) {
    const std::vector<Symbol> decs = concat_symbols(a.decorations(), b.decorations());
    DecElem out;
    for (const auto &[f, c] : rb_product(a.shape(), b.shape())) out.add_term(DecForest(f, decs), c);
    return out;
}

DecElem dec_product(const DecElem &u, const DecElem &v) {
    return bilinear(u, v, [](const DecForest &a, const DecForest &b) { return dec_product(a, b); });
}

DecElem dec_unit() { return DecElem(DecForest()); }

DecElem P_X(const DecElem &u) {
    DecElem out;
    for (const auto &[d, c] : u) out.add_term(DecForest(Forest(graft(d.shape())), d.decorations()), c);
    return out;
}

DecForest j_X(const Symbol &a) { return DecForest(Forest::two_dots(), {a}); }

// With D = D_1 y D_t:
// d̄(D) = d̄D_1 y D_t + D_1 y' D_t + D_1 y d̄D_t
//        + λ(d̄D_1 y' D_t + d̄D_1 y d̄D_t + D_1 y' d̄D_t) + λ² d̄D_1 y' d̄D_t
DecElem d_dec(const DecForest &d) {
    const DecDecomposition parts = std_decomposition(d);
    if (parts.trees.size() == 1) return d_tree(parts.trees.front());

    const DecElem d1(parts.trees.front());
    const DecElem dd1 = d_tree(parts.trees.front());
    const Symbol &y = parts.junctions.front();
    const Symbol dy = y.derived();
    const DecForest tail = tail_of(parts, 1);
    const DecElem dt(tail);
    const DecElem ddt = d_dec(tail);
    const Scalar lam = Scalar::lambda();

    DecElem out = junction(dd1, y, dt);
    out += junction(d1, dy, dt);
    out += junction(d1, y, ddt);
    out.add_scaled(junction(dd1, dy, dt), lam);
    out.add_scaled(junction(dd1, y, ddt), lam);
    out.add_scaled(junction(d1, dy, ddt), lam);
    out.add_scaled(junction(dd1, dy, ddt), lam * lam);
    return out;
}

DecElem d_dec(const DecElem &u) {
    return u.map_linear([](const DecForest &d) { return d_dec(d); });
}

namespace {

// A partial concatenation v_{I,1} ... v_{I,j} always ends in a decorated
// tree, so it is carried as a DecElem plus the count of derived slots.
void general_sum(const DecDecomposition &parts, const std::vector<DecElem> &dtrees, std::size_t tree,
                 const DecElem &prefix, unsigned chosen, DecElem &out) {
    if (prefix.is_zero()) return;
    if (tree == parts.trees.size()) {
        if (chosen > 0) out.add_scaled(prefix, lambda_pow(chosen - 1));
        return;
    }
    const Symbol &y = parts.junctions[tree - 1];
    const DecElem t(parts.trees[tree]);
    for (int dj = 0; dj < 2; ++dj) {
        const Symbol sym = dj ? y.derived() : y;
        general_sum(parts, dtrees, tree + 1, junction(prefix, sym, t), chosen + dj, out);
        if (!dtrees[tree].is_zero())
            general_sum(parts, dtrees, tree + 1, junction(prefix, sym, dtrees[tree]), chosen + dj + 1, out);
    }
}

}  // namespace

DecElem d_dec_general(const DecForest &d) {
    const DecDecomposition parts = std_decomposition(d);
    std::vector<DecElem> dtrees;
    dtrees.reserve(parts.trees.size());
    for (const DecForest &t : parts.trees) dtrees.push_back(d_tree(t));
    DecElem out;
    general_sum(parts, dtrees, 1, DecElem(parts.trees.front()), 0, out);
    if (!dtrees.front().is_zero()) general_sum(parts, dtrees, 1, dtrees.front(), 1, out);
    return out;
}

std::string to_text(const DecElem &u) {
    return to_text(
        u, [](const DecForest &d) { return d.to_string(); }, [](const DecForest &) { return false; });
}

DrbAlgebraHandle<DecElem> decorated_algebra() {
    DrbAlgebraHandle<DecElem> h;
    h.name = "decorated";
    h.add = [](const DecElem &a, const DecElem &b) { return a + b; };
    h.add_assign = [](DecElem &a, const DecElem &b) { a += b; };
    h.mul = [](const DecElem &a, const DecElem &b) { return dec_product(a, b); };
    h.scale = [](const Scalar &c, const DecElem &a) { return c * a; };
    h.zero = [] { return DecElem(); };
    h.one = [] { return dec_unit(); };
    h.equal = [](const DecElem &a, const DecElem &b) { return a == b; };
    h.show = [](const DecElem &a) { return to_text(a); };
    h.d = [](const DecElem &a) { return d_dec(a); };
    h.P = [](const DecElem &a) { return P_X(a); };
    return h;
}

}  // namespace drb
