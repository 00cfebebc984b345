#include "drb/lincomb.hpp"

namespace drb {

std::string format_term(const Scalar &c, const std::string &basis, bool basis_is_unit) {
    // A bare scalar sum is safe unparenthesized: only its first sign can be folded.
    if (basis_is_unit) return c.to_string();
    if (c.is_one()) return basis;
    if (c.is_minus_one()) return "-" + basis;
    if (c.term_count() == 1) return c.to_string() + "*" + basis;
    return "(" + c.to_string() + ")*" + basis;
}

std::string join_terms(const std::vector<std::string> &terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string &t = terms[i];
        if (i == 0) {
            out = t;
        } else if (!t.empty() && t.front() == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

}  // namespace drb
