#include "drb/shuffle.hpp"

#include <map>
#include <stdexcept>

namespace drb {

namespace {

using Tail = std::vector<CommMonomial>;

Tail suffix(const Tail &w, std::size_t from) { return Tail(w.begin() + static_cast<std::ptrdiff_t>(from), w.end()); }

Tail prepend(const CommMonomial &head, const Tail &rest) {
    Tail t;
    t.reserve(rest.size() + 1);
    t.push_back(head);
    t.insert(t.end(), rest.begin(), rest.end());
    return t;
}

// Quasi-shuffle of the tails a_1.. and b_1.. as tensors (leading slots are
// not merged; an exhausted side is the identity). Slots are interned to
// local ids and every lattice path is walked once; a path with k diagonal
// steps contributes λ^k to its word.
class TailShuffle {
public:
    TailShuffle(const Tail &a, const Tail &b) {
        for (const CommMonomial &m : a) a_.push_back(intern(m));
        for (const CommMonomial &m : b) b_.push_back(intern(m));
        merged_.resize(a.size() * b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                merged_[i * b.size() + j] = intern(CommMonomial::product(a[i], b[j]));
    }

    // Adds (head ⊗ w) with coefficient c λ^k for every path word w.
    void emit(ShaElem &out, const CommMonomial &head, const Scalar &c) {
        walk(0, 0, 0);
        for (const auto &[ids, by_merges] : counts_) {
            Tail slots;
            slots.reserve(ids.size() + 1);
            slots.push_back(head);
            for (int id : ids) slots.push_back(monomials_[static_cast<std::size_t>(id)]);
            Scalar coeff;
            for (std::size_t k = 0; k < by_merges.size(); ++k)
                if (by_merges[k] != 0) coeff += Scalar::monomial(Rational(by_merges[k]), k);
            out.add_term(TensorWord(std::move(slots)), c * coeff);
        }
    }

private:
    int intern(const CommMonomial &m) {
        auto [it, inserted] = ids_.try_emplace(m, static_cast<int>(monomials_.size()));
        if (inserted) monomials_.push_back(m);
        return it->second;
    }

    void walk(std::size_t i, std::size_t j, std::size_t merges) {
        if (i == a_.size() || j == b_.size()) {
            const std::size_t mark = path_.size();
            path_.insert(path_.end(), a_.begin() + static_cast<std::ptrdiff_t>(i), a_.end());
            path_.insert(path_.end(), b_.begin() + static_cast<std::ptrdiff_t>(j), b_.end());
            auto &slot = counts_[path_];
            if (slot.size() <= merges) slot.resize(merges + 1, 0);
            ++slot[merges];
            path_.resize(mark);
            return;
        }
        path_.push_back(a_[i]);
        walk(i + 1, j, merges);
        path_.back() = b_[j];
        walk(i, j + 1, merges);
        path_.back() = merged_[i * b_.size() + j];
        walk(i + 1, j + 1, merges + 1);
        path_.pop_back();
    }

    std::vector<int> a_, b_, merged_;
    std::map<CommMonomial, int> ids_;
    std::vector<CommMonomial> monomials_;
    std::vector<int> path_;
    std::map<std::vector<int>, std::vector<long>> counts_;
};

void add_word(ShaElem &out, const CommMonomial &head, const Tail &rest, const Scalar &c) {
    out.add_term(TensorWord(prepend(head, rest)), c);
}

}  // namespace

TensorWord::TensorWord(std::vector<CommMonomial> slots) : slots_(std::move(slots)) {
    if (slots_.empty()) throw std::invalid_argument("TensorWord needs at least one slot");
}

std::string TensorWord::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
        if (i > 0) out += " (x) ";
        out += slots_[i].to_string();
    }
    return out;
}

std::strong_ordering operator<=>(const TensorWord &a, const TensorWord &b) {
    if (a.slots_.size() != b.slots_.size()) return a.slots_.size() <=> b.slots_.size();
    return std::lexicographical_compare_three_way(a.slots_.begin(), a.slots_.end(), b.slots_.begin(),
                                                  b.slots_.end());
}

// (a0 ⊗ a+) ш (b0 ⊗ b+) = a0b0 ⊗ (a+ ш b+), where for nonempty tails
// a1.. ш b1.. = a1 ⊗ (a2.. ш b1..) + b1 ⊗ (a1.. ш b2..) + λ a1b1 ⊗ (a2.. ш b2..)
// and an empty tail is the identity.
namespace {

void mix_shuffle_into(ShaElem &out, const TensorWord &a, const TensorWord &b, const Scalar &c) {
    const Tail &as = a.slots();
    const Tail &bs = b.slots();
    TailShuffle sh(suffix(as, 1), suffix(bs, 1));
    sh.emit(out, CommMonomial::product(as[0], bs[0]), c);
}

}  // namespace

ShaElem mix_shuffle(const TensorWord &a, const TensorWord &b) {
    ShaElem out;
    mix_shuffle_into(out, a, b, Scalar(1L));
    return out;
}

ShaElem sha_product(const ShaElem &u, const ShaElem &v) {
    ShaElem out;
    for (const auto &[a, ca] : u)
        for (const auto &[b, cb] : v) mix_shuffle_into(out, a, b, ca * cb);
    return out;
}

ShaElem sha_unit() { return ShaElem(TensorWord({CommMonomial::unit()})); }

ShaElem j_A(const CommDiffElem &a) {
    ShaElem out;
    for (const auto &[m, c] : a) out.add_term(TensorWord({m}), c);
    return out;
}

ShaElem P_A(const ShaElem &u) {
    ShaElem out;
    for (const auto &[w, c] : u) out.add_term(TensorWord(prepend(CommMonomial::unit(), w.slots())), c);
    return out;
}

// d_A(x0 ⊗ ... ⊗ xn) = d0(x0) ⊗ x1 ⊗ ... + x0x1 ⊗ x2 ⊗ ... + λ d0(x0)x1 ⊗ x2 ⊗ ...
// and d_A(x0) = d0(x0), with d0 = d_X on A = k[Δ(X)].
ShaElem d_A(const ShaElem &u) {
    ShaElem out;
    std::map<CommMonomial, CommDiffElem> d_heads;
    for (const auto &[w, c] : u) {
        const Tail &s = w.slots();
        auto head = d_heads.find(s[0]);
        if (head == d_heads.end()) head = d_heads.emplace(s[0], d_word(s[0])).first;
        const CommDiffElem &dx0 = head->second;
        if (s.size() == 1) {
            out.add_scaled(j_A(dx0), c);
            continue;
        }
        const Tail rest1 = suffix(s, 1);
        const Tail rest2 = suffix(s, 2);
        for (const auto &[m, dc] : dx0) {
            const Scalar cdc = c * dc;
            add_word(out, m, rest1, cdc);
            add_word(out, CommMonomial::product(m, s[1]), rest2, cdc * Scalar::lambda());
        }
        add_word(out, CommMonomial::product(s[0], s[1]), rest2, c);
    }
    return out;
}

ShaElem tensor_concat(const ShaElem &u, const ShaElem &v) {
    return bilinear(u, v, [](const TensorWord &a, const TensorWord &b) {
        Tail t = a.slots();
        t.insert(t.end(), b.slots().begin(), b.slots().end());
        return ShaElem(TensorWord(std::move(t)));
    });
}

std::string to_text(const ShaElem &u) {
    return to_text(
        u, [](const TensorWord &w) { return w.to_string(); },
        [](const TensorWord &w) { return w.degree() == 0 && w.slots()[0].is_unit(); });
}

DrbAlgebraHandle<ShaElem> sha_algebra() {
    DrbAlgebraHandle<ShaElem> h;
    h.name = "sha";
    h.add = [](const ShaElem &a, const ShaElem &b) { return a + b; };
    h.add_assign = [](ShaElem &a, const ShaElem &b) { a += b; };
    h.mul = [](const ShaElem &a, const ShaElem &b) { return sha_product(a, b); };
    h.scale = [](const Scalar &c, const ShaElem &a) { return c * a; };
    h.zero = [] { return ShaElem(); };
    h.one = [] { return sha_unit(); };
    h.equal = [](const ShaElem &a, const ShaElem &b) { return a == b; };
    h.show = [](const ShaElem &a) { return to_text(a); };
    h.d = [](const ShaElem &a) { return d_A(a); };
    h.P = [](const ShaElem &a) { return P_A(a); };
    return h;
}

}  // namespace drb
