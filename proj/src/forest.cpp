#include "drb/forest.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

namespace drb {

namespace {

std::strong_ordering compare_shapes(std::size_t va, std::size_t da, const std::string &ca, std::size_t vb,
                                    std::size_t db, const std::string &cb) {
    if (va != vb) return vb <=> va;
    if (da != db) return db <=> da;
    return ca.compare(cb) <=> 0;
}

std::string join_codes(const std::vector<Tree> &trees) {
    std::string out;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        if (i > 0) out += '|';
        out += trees[i].code();
    }
    return out;
}

using TreeComb = LinComb<Tree>;

struct PairHash {
    std::size_t operator()(const std::pair<std::string, std::string> &p) const {
        std::hash<std::string> h;
        return h(p.first) * 31U ^ h(p.second);
    }
};

TreeComb tree_product(const Tree &a, const Tree &b, int fuel);

ForestElem forest_product(const Forest &f, const Forest &g, int fuel) {
    const auto &ft = f.trees();
    const auto &gt = g.trees();
    ForestElem out;
    for (const auto &[t, c] : tree_product(ft.back(), gt.front(), fuel)) {
        std::vector<Tree> trees(ft.begin(), ft.end() - 1);
        trees.push_back(t);
        trees.insert(trees.end(), gt.begin() + 1, gt.end());
        out.add_term(Forest(std::move(trees)), c);
    }
    return out;
}

TreeComb graft_all(const ForestElem &u) {
    TreeComb out;
    for (const auto &[f, c] : u) out.add_term(Tree::graft(f), c);
    return out;
}

// For trees: • is the unit, and
// ⌊F̄⌋ ⋄ ⌊F̄'⌋ = ⌊F̄ ⋄ ⌊F̄'⌋⌋ + ⌊⌊F̄⌋ ⋄ F̄'⌋ + λ ⌊F̄ ⋄ F̄'⌋.
// Each recursive call lowers depth(a) + depth(b), which `fuel` tracks.
TreeComb tree_product(const Tree &a, const Tree &b, int fuel) {
    if (a.is_dot()) return TreeComb(b);
    if (b.is_dot()) return TreeComb(a);
    assert(fuel > 0 && "tree product recursion exceeded the depth bound");

    thread_local std::unordered_map<std::pair<std::string, std::string>, TreeComb, PairHash> memo;
    auto key = std::make_pair(a.code(), b.code());
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const Forest fa = a.branches();
    const Forest fb = b.branches();
    TreeComb out = graft_all(forest_product(fa, Forest(b), fuel - 1));
    out += graft_all(forest_product(Forest(a), fb, fuel - 1));
    out.add_scaled(graft_all(forest_product(fa, fb, fuel - 1)), Scalar::lambda());

    if (memo.size() > 200000) memo.clear();
    memo.emplace(std::move(key), out);
    return out;
}

}  // namespace

Tree::Tree() = default;

Tree::Tree(std::vector<Tree> children) : children_(std::move(children)) {
    vertices_ = 1;
    depth_ = 0;
    leaves_ = 0;
    for (const Tree &c : children_) {
        vertices_ += c.vertices_;
        depth_ = std::max(depth_, c.depth_ + 1);
        leaves_ += c.leaves_;
    }
    if (children_.empty()) {
        leaves_ = 1;
        code_ = ".";
    } else {
        code_ = "[" + join_codes(children_) + "]";
    }
}

Tree Tree::graft(const Forest &f) { return Tree(f.trees()); }

Forest Tree::branches() const {
    if (is_dot()) throw std::logic_error("the single vertex has no branches");
    return Forest(children_);
}

std::strong_ordering operator<=>(const Tree &a, const Tree &b) {
    return compare_shapes(a.vertices_, a.depth_, a.code_, b.vertices_, b.depth_, b.code_);
}

Forest::Forest() : trees_{Tree()} {}

Forest::Forest(const Tree &tree) : Forest(std::vector<Tree>{tree}) {}

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
    if (trees_.empty()) throw std::invalid_argument("a forest needs at least one tree");
    vertices_ = 0;
    depth_ = 0;
    leaves_ = 0;
    for (const Tree &t : trees_) {
        vertices_ += t.vertices();
        depth_ = std::max(depth_, t.depth());
        leaves_ += t.leaves();
    }
    code_ = join_codes(trees_);
}

Forest Forest::two_dots() { return Forest({Tree(), Tree()}); }

std::strong_ordering operator<=>(const Forest &a, const Forest &b) {
    return compare_shapes(a.vertices_, a.depth_, a.code_, b.vertices_, b.depth_, b.code_);
}

Tree graft(const Forest &f) { return Tree::graft(f); }

Forest concat(const Forest &f, const Forest &g) {
    std::vector<Tree> trees = f.trees();
    trees.insert(trees.end(), g.trees().begin(), g.trees().end());
    return Forest(std::move(trees));
}

ForestMetrics metrics(const Forest &f) { return {f.depth(), f.breadth(), f.leaves()}; }

ForestElem rb_product(const Forest &f, const Forest &g) {
    const int fuel = static_cast<int>(f.depth() + g.depth()) + 1;
    return forest_product(f, g, fuel);
}

ForestElem rb_product(const ForestElem &u, const ForestElem &v) {
    return bilinear(u, v, [](const Forest &a, const Forest &b) { return rb_product(a, b); });
}

ForestElem graft(const ForestElem &u) {
    ForestElem out;
    for (const auto &[f, c] : u) out.add_term(Forest(Tree::graft(f)), c);
    return out;
}

ForestElem concat(const ForestElem &u, const ForestElem &v) {
    return bilinear(u, v, [](const Forest &a, const Forest &b) { return ForestElem(concat(a, b)); });
}

ForestElem forest_unit() { return ForestElem(Forest::unit()); }

std::vector<Forest> std_decomposition(const Forest &f) {
    std::vector<Forest> v;
    v.reserve(2 * f.breadth() - 1);
    for (std::size_t i = 0; i < f.breadth(); ++i) {
        if (i > 0) v.push_back(Forest::two_dots());
        v.emplace_back(f.trees()[i]);
    }
    return v;
}

ForestElem d_factor(const Forest &v) {
    if (v.breadth() == 2) {
        if (!(v.trees()[0].is_dot() && v.trees()[1].is_dot()))
            throw std::invalid_argument("d_factor: only •⊔• is allowed as a two-tree factor");
        return forest_unit();
    }
    if (v.breadth() != 1) throw std::invalid_argument("d_factor: not a standard-decomposition factor");
    const Tree &t = v.trees()[0];
    if (t.is_dot()) return {};
    return ForestElem(t.branches());
}

namespace {

// Depth-first walk over subsets I, sharing the prefix product between
// subsets that agree on the first `i` slots. Slots with d(V) = 0 are never
// put in I.
void subset_sum(const std::vector<Forest> &slots, const std::vector<ForestElem> &derived, std::size_t i,
                const ForestElem &prefix, unsigned chosen, ForestElem &out) {
    if (prefix.is_zero()) return;
    if (i == slots.size()) {
        if (chosen > 0) out.add_scaled(prefix, lambda_pow(chosen - 1));
        return;
    }
    subset_sum(slots, derived, i + 1, rb_product(prefix, ForestElem(slots[i])), chosen, out);
    if (!derived[i].is_zero()) subset_sum(slots, derived, i + 1, rb_product(prefix, derived[i]), chosen + 1, out);
}

}  // namespace

ForestElem d_forest_closed_form(const Forest &f) {
    const std::vector<Forest> slots = std_decomposition(f);
    std::vector<ForestElem> derived;
    derived.reserve(slots.size());
    for (const Forest &v : slots) derived.push_back(d_factor(v));
    ForestElem out;
    subset_sum(slots, derived, 0, forest_unit(), 0, out);
    return out;
}

// d(V_i ⋄ S) = d(V_i) ⋄ S + V_i ⋄ d(S) + λ d(V_i) ⋄ d(S), S = V_{i+1} ⋄ ... ⋄ V_k,
// folded from the right.
ForestElem d_forest(const Forest &f) {
    const std::vector<Forest> slots = std_decomposition(f);
    ForestElem suffix(slots.back());
    ForestElem dsuffix = d_factor(slots.back());
    for (std::size_t i = slots.size() - 1; i-- > 0;) {
        const ForestElem v(slots[i]);
        const ForestElem dv = d_factor(slots[i]);
        ForestElem next = rb_product(v, dsuffix);
        if (!dv.is_zero()) {
            next += rb_product(dv, suffix);
            next.add_scaled(rb_product(dv, dsuffix), Scalar::lambda());
        }
        dsuffix = std::move(next);
        suffix = rb_product(v, suffix);
    }
    return dsuffix;
}

ForestElem d_forest(const ForestElem &u) {
    return u.map_linear([](const Forest &f) { return d_forest(f); });
}

std::string to_text(const ForestElem &u) {
    return to_text(
        u, [](const Forest &f) { return f.code(); }, [](const Forest &) { return false; });
}

DrbAlgebraHandle<ForestElem> forest_algebra() {
    DrbAlgebraHandle<ForestElem> h;
    h.name = "forests";
    h.add = [](const ForestElem &a, const ForestElem &b) { return a + b; };
    h.add_assign = [](ForestElem &a, const ForestElem &b) { a += b; };
    h.mul = [](const ForestElem &a, const ForestElem &b) { return rb_product(a, b); };
    h.scale = [](const Scalar &c, const ForestElem &a) { return c * a; };
    h.zero = [] { return ForestElem(); };
    h.one = [] { return forest_unit(); };
    h.equal = [](const ForestElem &a, const ForestElem &b) { return a == b; };
    h.show = [](const ForestElem &a) { return to_text(a); };
    h.d = [](const ForestElem &a) { return d_forest(a); };
    h.P = [](const ForestElem &a) { return graft(a); };
    return h;
}

}  // namespace drb
