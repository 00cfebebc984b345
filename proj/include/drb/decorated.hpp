#pragma once

// Angularly decorated planar forests (F; y⃗), y⃗ ∈ Δ(X)^{ℓ(F)-1}, spanning
// the free noncommutative Rota-Baxter algebra Ш^NC(Δ(X)) with grafting P_X,
// and the derivation d̄ extending d_X on the decorations.
//
// Text form: the decorations are written in the angles they occupy, i.e.
// between consecutive siblings, in left-to-right order. `. x_(0) [. y_(0) .]`
// is (•⊔⌊•⊔•⌋; (x, y)).

#include <compare>
#include <string>
#include <vector>

#include "drb/algebra.hpp"
#include "drb/forest.hpp"
#include "drb/freediff.hpp"
#include "drb/lincomb.hpp"

namespace drb {

class DecForest {
public:
    // (•; 1)
    DecForest() = default;
    // Throws std::invalid_argument unless decorations.size() == leaves(shape) - 1.
    DecForest(Forest shape, std::vector<Symbol> decorations);

    const Forest &shape() const { return shape_; }
    const std::vector<Symbol> &decorations() const { return decorations_; }
    bool is_unit() const { return shape_.is_unit(); }
    std::string to_string() const;

    friend bool operator==(const DecForest &, const DecForest &) = default;
    // Shape order of module forests, then decorations lexicographically.
    friend std::strong_ordering operator<=>(const DecForest &a, const DecForest &b);

private:
    Forest shape_;
    std::vector<Symbol> decorations_;
};

using DecElem = LinComb<DecForest>;

// D = D_1 y_1 D_2 ... y_{b-1} D_b: decorated trees and the junction symbols.
struct DecDecomposition {
    std::vector<DecForest> trees;
    std::vector<Symbol> junctions;
};

DecDecomposition std_decomposition(const DecForest &d);
DecForest assemble(const DecDecomposition &parts);

// D y E: concatenation of decorated forests with y in the new angle.
DecForest junction(const DecForest &left, const Symbol &y, const DecForest &right);
DecElem junction(const DecElem &left, const Symbol &y, const DecElem &right);

DecElem dec_product(const DecForest &a, const DecForest &b);
DecElem dec_product(const DecElem &u, const DecElem &v);
inline DecElem operator*(const DecElem &u, const DecElem &v) { return dec_product(u, v); }

DecElem dec_unit();
DecElem P_X(const DecElem &u);
// j_X(a) = (•⊔•; a)
DecForest j_X(const Symbol &a);

// Recursive definition on the breadth (seven-term formula).
DecElem d_dec(const DecForest &d);
DecElem d_dec(const DecElem &u);
// Closed form: Σ_{∅≠I⊆[2b-1]} λ^{|I|-1} v_{I,1} ... v_{I,2b-1}.
DecElem d_dec_general(const DecForest &d);

std::string to_text(const DecElem &u);

DrbAlgebraHandle<DecElem> decorated_algebra();

// Rota-Baxter morphism f̄ fixed by the symbol images: (•;1) -> 1,
// ⌊D̄⌋ -> P(f̄(D̄)), D_1 y_1 ... D_b -> f̄(D_1) f(y_1) ... f̄(D_b).
template <class T>
T extend_drb_hom(const SymbolImage<T> &f, const RBAlgebraHandle<T> &target, const DecForest &d) {
    const DecDecomposition parts = std_decomposition(d);
    auto tree_image = [&](const DecForest &t) {
        if (t.is_unit()) return target.one();
        const Tree &root = t.shape().trees().front();
        return target.P(extend_drb_hom(f, target, DecForest(root.branches(), t.decorations())));
    };
    T value = tree_image(parts.trees.front());
    for (std::size_t i = 0; i < parts.junctions.size(); ++i) {
        value = target.mul(value, f(parts.junctions[i]));
        value = target.mul(value, tree_image(parts.trees[i + 1]));
    }
    return value;
}

template <class T>
T extend_drb_hom(const SymbolImage<T> &f, const RBAlgebraHandle<T> &target, const DecElem &u) {
    T out = target.zero();
    for (const auto &[d, c] : u) out = target.add(out, target.scale(c, extend_drb_hom(f, target, d)));
    return out;
}

}  // namespace drb
