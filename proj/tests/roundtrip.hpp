#pragma once

// parse(show(v)) evaluated back to v, for random elements of one algebra.

#include <optional>
#include <string>

#include "drb/axioms.hpp"
#include "drb/expr.hpp"

namespace drb::testing {

inline Value random_value(AlgebraKind kind, Rng &rng) {
    GenOptions opt;
    GenOptions entry;
    entry.max_degree = 2;
    entry.max_terms = 2;
    switch (kind) {
        case AlgebraKind::FreeDiffComm: return random_comm_elem(rng, opt);
        case AlgebraKind::FreeDiffNC: return random_nc_elem(rng, opt);
        case AlgebraKind::Sha: return random_sha_elem(rng, opt);
        case AlgebraKind::Forests: return random_forest_elem(rng, opt);
        case AlgebraKind::Decorated: return random_dec_elem(rng, opt);
        case AlgebraKind::Hurwitz:
            return random_series<CommDiffElem>(rng, 3, [&](Rng &r) { return random_comm_elem(r, entry); });
        case AlgebraKind::HurwitzNC:
            return random_series<NCDiffElem>(rng, 3, [&](Rng &r) { return random_nc_elem(r, entry); });
        case AlgebraKind::HurwitzScalar:
            return random_series<Scalar>(rng, 3, [](Rng &r) { return random_scalar(r); });
    }
    return {};
}

// First failing text, or nothing when every sample round-trips.
inline std::optional<std::string> roundtrip_failure(AlgebraKind kind, std::size_t samples, std::uint64_t seed) {
    Context ctx;
    ctx.algebra = kind;
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng = sample_rng(seed, i);
        const Value v = random_value(kind, rng);
        const std::string text = show(v);
        try {
            const Value back = evaluate(parse(text, kind), ctx);
            if (back != v) return text + " evaluates to " + show(back);
            if (show(back) != text) return text + " prints as " + show(back);
        } catch (const std::exception &e) {
            return text + ": " + e.what();
        }
    }
    return std::nullopt;
}

}  // namespace drb::testing
