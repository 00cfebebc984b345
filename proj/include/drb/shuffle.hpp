#pragma once

// The mixable shuffle algebra Ш(A) = ⊕ A^{⊗(k+1)} over A = k[Δ(X)]: the free
// commutative Rota-Baxter algebra on A, with P_A(x) = 1 ⊗ x and, when A
// carries the derivation d_X, the derivation d_A making it a differential
// Rota-Baxter algebra.

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "drb/algebra.hpp"
#include "drb/freediff.hpp"

namespace drb {

// a0 ⊗ a1 ⊗ ... ⊗ am with every slot a basis monomial of A.
class TensorWord {
public:
    explicit TensorWord(std::vector<CommMonomial> slots);

    const std::vector<CommMonomial> &slots() const { return slots_; }
    // Tensor degree m, one less than the number of slots.
    std::size_t degree() const { return slots_.size() - 1; }
    std::string to_string() const;

    friend bool operator==(const TensorWord &, const TensorWord &) = default;
    // Basis order: fewer slots first, then slotwise monomial order.
    friend std::strong_ordering operator<=>(const TensorWord &a, const TensorWord &b);

private:
    std::vector<CommMonomial> slots_;
};

using ShaElem = LinComb<TensorWord>;

ShaElem mix_shuffle(const TensorWord &a, const TensorWord &b);
ShaElem sha_product(const ShaElem &u, const ShaElem &v);
inline ShaElem operator*(const ShaElem &u, const ShaElem &v) { return sha_product(u, v); }

// The unit 1_A as a length-one word.
ShaElem sha_unit();
// j_A: A -> Ш(A), degree-zero embedding.
ShaElem j_A(const CommDiffElem &a);
ShaElem P_A(const ShaElem &u);
ShaElem d_A(const ShaElem &u);
// Bilinear tensor concatenation (u0⊗...⊗um, v0⊗...⊗vn) -> u0⊗...⊗um⊗v0⊗...⊗vn.
ShaElem tensor_concat(const ShaElem &u, const ShaElem &v);

std::string to_text(const ShaElem &u);

DrbAlgebraHandle<ShaElem> sha_algebra();

// Unique Rota-Baxter morphism Ш(A) -> (R, P) extending the algebra map
// A -> R fixed by the generator images: x0 ⊗ x+ -> φ(x0) P(φ~(x+)).
// Images of slot monomials and of word suffixes are shared across the terms of u.
template <class T>
T extend_rb_hom(const SymbolImage<T> &phi, const RBAlgebraHandle<T> &target, const ShaElem &u) {
    std::map<CommMonomial, T> slot_images;
    std::map<std::vector<CommMonomial>, T> suffix_images;
    auto slot_image = [&](const CommMonomial &m) -> const T & {
        auto it = slot_images.find(m);
        if (it == slot_images.end()) it = slot_images.emplace(m, evaluate_word(phi, target, m)).first;
        return it->second;
    };
    std::function<T(const std::vector<CommMonomial> &, std::size_t)> suffix_image =
        [&](const std::vector<CommMonomial> &slots, std::size_t from) -> T {
        std::vector<CommMonomial> key(slots.begin() + static_cast<std::ptrdiff_t>(from), slots.end());
        if (auto it = suffix_images.find(key); it != suffix_images.end()) return it->second;
        T value = from + 1 == slots.size()
                      ? slot_image(slots[from])
                      : target.mul(slot_image(slots[from]), target.P(suffix_image(slots, from + 1)));
        suffix_images.emplace(std::move(key), value);
        return value;
    };
    T out = target.zero();
    for (const auto &[word, coeff] : u) out = target.add(out, target.scale(coeff, suffix_image(word.slots(), 0)));
    return out;
}

}  // namespace drb
