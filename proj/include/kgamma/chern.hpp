#pragma once

#include "kgamma/kmodel.hpp"

namespace kgamma {

/// c_j of a generator, as an element of the split ambient ring.  Values sit
/// in the j-th layer of the y-adic filtration: min_total_degree(value) >= j.
struct ChernAtom {
    KGenerator source;
    int degree = 0;
    TruncPoly value;
};

/// Coefficients c_0, c_1, ... of the total Chern series
/// prod_{a in orbit} (1 + z_a t)^m with z_a the line-bundle root of x^a,
/// truncated at t^cap.  Trailing entries may be missing when the rank is
/// below the cap.
inline std::vector<TruncPoly> chern_series(const KGenerator& gen, const RingSpec& spec,
                                           int cap) {
    if (gen.multiplier < 1)
        throw input_error("chern_series: generators must have positive multipliers");
    if (!gen.multiplier.fits_ulong_p())
        throw input_error("chern_series: multiplier out of range");
    const unsigned long m = gen.multiplier.get_ui();
    std::vector<TruncPoly> s{TruncPoly(spec, 1)};
    for (const auto& a : gen.orbit) {
        TruncPoly z = expand_line_bundle(spec, a);
        if (z.is_zero()) continue;  // trivial bundle factor
        for (unsigned long rep = 0; rep < m; ++rep) {
            if (static_cast<int>(s.size()) <= cap) s.push_back(TruncPoly(spec));
            for (size_t j = s.size(); j-- > 1;) {
                TruncPoly t = s[j - 1] * z;
                s[j] += t;
            }
        }
    }
    while (!s.empty() && s.back().is_zero() && static_cast<int>(s.size()) > 1) s.pop_back();
    return s;
}

/// Chern classes c_j for j = 1..min(rank, dim).  Entries whose polynomial
/// vanishes under truncation are kept, with value 0.
inline std::vector<ChernAtom> chern_classes(const KGenerator& gen, const RingSpec& spec) {
    int cap = spec.dim();
    if (gen.rank() < cap) cap = static_cast<int>(gen.rank().get_si());
    auto series = chern_series(gen, spec, cap);
    std::vector<ChernAtom> atoms;
    for (int j = 1; j <= cap; ++j) {
        TruncPoly v = j < static_cast<int>(series.size()) ? series[j] : TruncPoly(spec);
        if (!v.is_zero() && v.min_total_degree() < j)
            throw error("chern_classes: computed c_" + std::to_string(j) +
                        " violates the filtration degree bound");
        atoms.push_back(ChernAtom{gen, j, std::move(v)});
    }
    return atoms;
}

/// Whitney multiplicativity probe: the series of the combined orbit against
/// the polynomial product of the two separate series.
inline bool whitney_check(const KGenerator& g1, const KGenerator& g2, const RingSpec& spec) {
    const int cap = spec.dim();
    KGenerator combined;
    combined.multiplier = 1;
    // realize m copies of each orbit member so both inputs keep their own
    // multiplicity in the combined collection
    for (const auto* g : {&g1, &g2}) {
        if (!g->multiplier.fits_ulong_p())
            throw input_error("whitney_check: multiplier out of range");
        for (unsigned long rep = 0; rep < g->multiplier.get_ui(); ++rep)
            for (const auto& a : g->orbit) combined.orbit.push_back(a);
    }
    auto lhs = chern_series(combined, spec, cap);
    auto s1 = chern_series(g1, spec, cap);
    auto s2 = chern_series(g2, spec, cap);
    std::vector<TruncPoly> rhs(static_cast<size_t>(cap) + 1, TruncPoly(spec));
    for (size_t i = 0; i < s1.size(); ++i)
        for (size_t j = 0; j < s2.size(); ++j) {
            if (i + j > static_cast<size_t>(cap)) break;
            rhs[i + j] += s1[i] * s2[j];
        }
    for (size_t j = 0; j <= static_cast<size_t>(cap); ++j) {
        TruncPoly l = j < lhs.size() ? lhs[j] : TruncPoly(spec);
        if (l != rhs[j]) return false;
    }
    return true;
}

}  // namespace kgamma
