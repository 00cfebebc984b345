#include "drb/freediff.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <unordered_set>

namespace drb {

const std::string &Symbol::intern(const std::string &name) {
    static std::mutex mu;
    static std::unordered_set<std::string> pool;
    std::lock_guard lock(mu);
    return *pool.insert(name).first;
}

namespace {

std::string join_factors(const std::vector<Symbol> &factors) {
    if (factors.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) out += "*";
        out += factors[i].to_string();
    }
    return out;
}

std::strong_ordering compare_words(const std::vector<Symbol> &a, const std::vector<Symbol> &b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

template <class E>
AlgebraHandle<E> make_free_algebra(std::string name) {
    using W = typename E::key_type;
    AlgebraHandle<E> h;
    h.name = std::move(name);
    h.add = [](const E &a, const E &b) { return a + b; };
    h.add_assign = [](E &a, const E &b) { a += b; };
    h.mul = [](const E &a, const E &b) { return a * b; };
    h.scale = [](const Scalar &c, const E &a) { return c * a; };
    h.zero = [] { return E(); };
    h.one = [] { return unit_elem<W>(); };
    h.equal = [](const E &a, const E &b) { return a == b; };
    h.show = [](const E &a) { return to_text(a); };
    h.d = [](const E &a) { return d_X(a); };
    return h;
}

}  // namespace

namespace {

struct FactorsHash {
    std::size_t operator()(const std::vector<Symbol> &f) const {
        std::size_t h = f.size();
        for (const Symbol &s : f)
            h = h * 1000003u ^ (std::hash<const void *>{}(&s.base()) + s.order * 0x9e3779b9u);
        return h;
    }
};

}  // namespace

const std::vector<Symbol> *CommMonomial::intern(std::vector<Symbol> sorted) {
    static std::mutex mu;
    static std::unordered_set<std::vector<Symbol>, FactorsHash> pool;
    std::lock_guard lock(mu);
    return &*pool.insert(std::move(sorted)).first;
}

const std::vector<Symbol> &CommMonomial::empty_factors() {
    static const std::vector<Symbol> *empty = intern({});
    return *empty;
}

CommMonomial::CommMonomial(std::vector<Symbol> factors) {
    std::sort(factors.begin(), factors.end());
    factors_ = intern(std::move(factors));
}

CommMonomial CommMonomial::product(const CommMonomial &a, const CommMonomial &b) {
    if (a.is_unit()) return b;
    if (b.is_unit()) return a;
    std::vector<Symbol> f;
    f.reserve(a.degree() + b.degree());
    std::merge(a.factors_->begin(), a.factors_->end(), b.factors_->begin(), b.factors_->end(), std::back_inserter(f));
    CommMonomial r;
    r.factors_ = intern(std::move(f));
    return r;
}

CommMonomial CommMonomial::drop_first() const {
    if (is_unit()) return {};
    CommMonomial r;
    r.factors_ = intern(std::vector<Symbol>(factors_->begin() + 1, factors_->end()));
    return r;
}

std::string CommMonomial::to_string() const { return join_factors(*factors_); }

std::strong_ordering operator<=>(const CommMonomial &a, const CommMonomial &b) {
    if (a.factors_ == b.factors_) return std::strong_ordering::equal;
    return compare_words(*a.factors_, *b.factors_);
}

NCWord NCWord::product(const NCWord &a, const NCWord &b) {
    NCWord r = a;
    r.factors_.insert(r.factors_.end(), b.factors_.begin(), b.factors_.end());
    return r;
}

NCWord NCWord::drop_first() const {
    NCWord r;
    if (!factors_.empty()) r.factors_.assign(factors_.begin() + 1, factors_.end());
    return r;
}

std::string NCWord::to_string() const { return join_factors(factors_); }

std::strong_ordering operator<=>(const NCWord &a, const NCWord &b) { return compare_words(a.factors_, b.factors_); }

std::string to_text(const CommDiffElem &e) {
    return to_text(
        e, [](const CommMonomial &m) { return m.to_string(); }, [](const CommMonomial &m) { return m.is_unit(); });
}

std::string to_text(const NCDiffElem &e) {
    return to_text(
        e, [](const NCWord &w) { return w.to_string(); }, [](const NCWord &w) { return w.is_unit(); });
}

DiffAlgebraHandle<CommDiffElem> comm_diff_algebra() { return make_free_algebra<CommDiffElem>("freediff-comm"); }

DiffAlgebraHandle<NCDiffElem> nc_diff_algebra() { return make_free_algebra<NCDiffElem>("freediff-nc"); }

}  // namespace drb
