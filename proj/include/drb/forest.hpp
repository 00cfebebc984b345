#pragma once

// Planar rooted trees and forests, the weight-λ product ⋄ that makes kℱ a
// Rota-Baxter algebra with grafting ⌊·⌋ as operator, and the derivation d_ℱ
// built from the ⋄-standard decomposition.
//
// Text form: `.` is the single vertex, `[F]` grafts the forest F under a new
// root and `|` concatenates trees, e.g. `[.|[.]]|.`.

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "drb/algebra.hpp"
#include "drb/lincomb.hpp"

namespace drb {

class Forest;

class Tree {
public:
    // The single vertex •.
    Tree();

    static Tree dot() { return {}; }
    // ⌊T1 ⊔ ... ⊔ Tb⌋: a new root above the roots of the forest.
    static Tree graft(const Forest &f);

    bool is_dot() const { return children_.empty(); }
    const std::vector<Tree> &children() const { return children_; }
    // F̄ with T = ⌊F̄⌋; requires !is_dot().
    Forest branches() const;

    std::size_t vertices() const { return vertices_; }
    std::size_t depth() const { return depth_; }
    std::size_t leaves() const { return leaves_; }
    const std::string &code() const { return code_; }

    friend bool operator==(const Tree &a, const Tree &b) { return a.code_ == b.code_; }
    friend std::strong_ordering operator<=>(const Tree &a, const Tree &b);

private:
    explicit Tree(std::vector<Tree> children);

    std::vector<Tree> children_;
    std::size_t vertices_ = 1;
    std::size_t depth_ = 0;
    std::size_t leaves_ = 1;
    std::string code_ = ".";
};

struct ForestMetrics {
    std::size_t depth;
    std::size_t breadth;
    std::size_t leaves;
    friend bool operator==(const ForestMetrics &, const ForestMetrics &) = default;
};

class Forest {
public:
    // The unit forest •.
    Forest();
    explicit Forest(std::vector<Tree> trees);
    Forest(const Tree &tree);  // NOLINT(google-explicit-constructor)

    static Forest unit() { return {}; }
    // •⊔•, the even slots of the ⋄-standard decomposition.
    static Forest two_dots();

    const std::vector<Tree> &trees() const { return trees_; }
    std::size_t breadth() const { return trees_.size(); }
    std::size_t vertices() const { return vertices_; }
    std::size_t depth() const { return depth_; }
    std::size_t leaves() const { return leaves_; }
    bool is_unit() const { return trees_.size() == 1 && trees_[0].is_dot(); }
    const std::string &code() const { return code_; }

    friend bool operator==(const Forest &a, const Forest &b) { return a.code_ == b.code_; }
    // Basis order: more vertices first, then deeper first, then by text.
    friend std::strong_ordering operator<=>(const Forest &a, const Forest &b);

private:
    std::vector<Tree> trees_;
    std::size_t vertices_ = 1;
    std::size_t depth_ = 0;
    std::size_t leaves_ = 1;
    std::string code_ = ".";
};

using ForestElem = LinComb<Forest>;

Tree graft(const Forest &f);
Forest concat(const Forest &f, const Forest &g);
ForestMetrics metrics(const Forest &f);

// ⋄ on basis forests and its bilinear extension.
ForestElem rb_product(const Forest &f, const Forest &g);
ForestElem rb_product(const ForestElem &u, const ForestElem &v);
inline ForestElem operator*(const ForestElem &u, const ForestElem &v) { return rb_product(u, v); }

// ⌊·⌋ extended linearly: the Rota-Baxter operator on kℱ.
ForestElem graft(const ForestElem &u);
// Bilinear ⊔.
ForestElem concat(const ForestElem &u, const ForestElem &v);

ForestElem forest_unit();

// F = T1 ⋄ (•⊔•) ⋄ T2 ⋄ ... ⋄ (•⊔•) ⋄ Tb, returned as the 2b-1 factors.
std::vector<Forest> std_decomposition(const Forest &f);

// Value of d_ℱ on one factor of the standard decomposition:
// d(•) = 0, d(•⊔•) = • (the unit), d(⌊V̄⌋) = V̄.
ForestElem d_factor(const Forest &v);

// d_ℱ via the right fold d(V_1 ⋄ S) = d(V_1) ⋄ S + V_1 ⋄ d(S) + λ d(V_1) ⋄ d(S)
// over the standard decomposition.
ForestElem d_forest(const ForestElem &u);
ForestElem d_forest(const Forest &f);
// d_ℱ(F) = Σ_{∅≠I⊆[2b-1]} λ^{|I|-1} V_{I,1} ⋄ ... ⋄ V_{I,2b-1}.
ForestElem d_forest_closed_form(const Forest &f);

std::string to_text(const ForestElem &u);

DrbAlgebraHandle<ForestElem> forest_algebra();

}  // namespace drb
