#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "kgamma/common.hpp"

namespace kgamma {

/// Coordinate model of the Grothendieck ring of a split product of
/// projective spaces: Z[y_1..y_n] / (y_1^{r_1}, ..., y_n^{r_n}).
struct RingSpec {
    std::vector<int> trunc;  // r_i >= 2 per variable

    RingSpec() = default;
    explicit RingSpec(std::vector<int> r) : trunc(std::move(r)) {
        if (trunc.empty()) throw input_error("RingSpec: need at least one variable");
        for (int ri : trunc)
            if (ri < 2) throw input_error("RingSpec: every truncation must be >= 2");
    }

    int vars() const { return static_cast<int>(trunc.size()); }

    // Dimension of the modeled variety: sum (r_i - 1).
    int dim() const {
        int d = 0;
        for (int ri : trunc) d += ri - 1;
        return d;
    }

    // Rank of the ambient free module: prod r_i.
    long ambient_rank() const {
        long p = 1;
        for (int ri : trunc) p *= ri;
        return p;
    }

    bool operator==(const RingSpec& o) const { return trunc == o.trunc; }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }
};

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

/// Global monomial order: ascending total degree, ties broken so that within
/// a degree y_1-heavy monomials come first ((1,0) before (0,1)).  All
/// coordinate vectors, reports and renderings use this order.
inline bool monomial_less(const Exponents& a, const Exponents& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;  // larger tuple first within a degree
}

struct MonomialLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        return monomial_less(a, b);
    }
};

constexpr int kInfiniteDegree = std::numeric_limits<int>::max();

/// Sparse element of Z[y]/(y_i^{r_i}).  Out-of-range monomials are never
/// stored; zero coefficients are dropped eagerly.
class TruncPoly {
public:
    using TermMap = std::map<Exponents, Int, MonomialLess>;

    TruncPoly() = default;
    explicit TruncPoly(RingSpec spec) : spec_(std::move(spec)) {}
    TruncPoly(RingSpec spec, const Int& constant) : spec_(std::move(spec)) {
        if (constant != 0) terms_[Exponents(spec_.trunc.size(), 0)] = constant;
    }

    static TruncPoly monomial(const RingSpec& spec, const Exponents& a, const Int& c = 1) {
        TruncPoly p(spec);
        p.add_term(a, c);
        return p;
    }

    const RingSpec& spec() const { return spec_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Adds c * y^a, discarding the term when some a_i >= r_i.
    void add_term(const Exponents& a, const Int& c) {
        if (c == 0) return;
        if (a.size() != spec_.trunc.size())
            throw input_error("TruncPoly: exponent arity mismatch");
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] < 0) throw input_error("TruncPoly: negative exponent");
            if (a[i] >= spec_.trunc[i]) return;  // identically zero
        }
        auto it = terms_.find(a);
        if (it == terms_.end()) {
            terms_.emplace(a, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Int coefficient_of(const Exponents& a) const {
        auto it = terms_.find(a);
        return it == terms_.end() ? Int(0) : it->second;
    }

    int min_total_degree() const {
        if (terms_.empty()) return kInfiniteDegree;
        return total_degree(terms_.begin()->first);  // map is degree-sorted
    }

    TruncPoly& operator+=(const TruncPoly& o) {
        check_same_spec(o);
        for (const auto& [a, c] : o.terms_) add_term(a, c);
        return *this;
    }
    TruncPoly& operator-=(const TruncPoly& o) {
        check_same_spec(o);
        for (const auto& [a, c] : o.terms_) add_term(a, -c);
        return *this;
    }
    TruncPoly& operator*=(const Int& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [a, v] : terms_) v *= c;
        return *this;
    }

    friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
    friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
    friend TruncPoly operator*(TruncPoly a, const Int& c) { return a *= c; }
    friend TruncPoly operator*(const Int& c, TruncPoly a) { return a *= c; }

    friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
        a.check_same_spec(b);
        TruncPoly r(a.spec_);
        const int dim = a.spec_.dim();
        Exponents prod(a.spec_.trunc.size());
        for (const auto& [am, ac] : a.terms_) {
            int da = total_degree(am);
            for (const auto& [bm, bc] : b.terms_) {
                if (da + total_degree(bm) > dim) break;  // degree-sorted map
                bool alive = true;
                for (size_t i = 0; i < prod.size(); ++i) {
                    prod[i] = am[i] + bm[i];
                    if (prod[i] >= a.spec_.trunc[i]) {
                        alive = false;
                        break;
                    }
                }
                if (alive) r.add_term(prod, ac * bc);
            }
        }
        return r;
    }

    bool operator==(const TruncPoly& o) const {
        return spec_ == o.spec_ && terms_ == o.terms_;
    }
    bool operator!=(const TruncPoly& o) const { return !(*this == o); }

private:
    void check_same_spec(const TruncPoly& o) const {
        if (spec_ != o.spec_) throw input_error("TruncPoly: mismatched ring specs");
    }

    RingSpec spec_;
    TermMap terms_;
};

inline TruncPoly pow(const TruncPoly& base, unsigned long e) {
    TruncPoly acc(base.spec(), 1);
    TruncPoly sq = base;
    while (e > 0) {
        if (e & 1) acc = acc * sq;
        e >>= 1;
        if (e) sq = sq * sq;
    }
    return acc;
}

/// The root z_a = prod (1 + y_i)^{a_i} - 1 of the line-bundle monomial x^a.
/// Exponents are not bounded by the truncations; reduction happens through
/// the quotient relations.
inline TruncPoly expand_line_bundle(const RingSpec& spec, const Exponents& a) {
    if (static_cast<int>(a.size()) != spec.vars())
        throw input_error("expand_line_bundle: exponent arity mismatch");
    TruncPoly r(spec, 1);
    Exponents unit(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0) throw input_error("expand_line_bundle: negative exponent");
        if (a[i] == 0) continue;
        unit[i] = 1;
        TruncPoly one_plus_y = TruncPoly(spec, 1);
        one_plus_y.add_term(unit, 1);
        unit[i] = 0;
        r = r * pow(one_plus_y, static_cast<unsigned long>(a[i]));
    }
    r -= TruncPoly(spec, 1);
    return r;
}

/// Enumeration of all monomials of a spec in the global order, with the
/// inverse index map.  This fixes the coordinates used by the lattice side.
struct MonomialBasis {
    RingSpec spec;
    std::vector<Exponents> order;
    std::map<Exponents, long, MonomialLess> index;

    explicit MonomialBasis(const RingSpec& s) : spec(s) {
        Exponents cur(s.trunc.size(), 0);
        enumerate(0, cur);
        std::sort(order.begin(), order.end(), monomial_less);
        for (long i = 0; i < static_cast<long>(order.size()); ++i) index[order[i]] = i;
    }

    long rank() const { return static_cast<long>(order.size()); }

    Vec coordinates(const TruncPoly& p) const {
        if (p.spec() != spec) throw input_error("MonomialBasis: spec mismatch");
        Vec v(order.size(), Int(0));
        for (const auto& [a, c] : p.terms()) v[index.at(a)] = c;
        return v;
    }

    TruncPoly polynomial(const Vec& v) const {
        if (v.size() != order.size()) throw input_error("MonomialBasis: bad vector length");
        TruncPoly p(spec);
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) p.add_term(order[i], v[i]);
        return p;
    }

private:
    void enumerate(size_t i, Exponents& cur) {
        if (i == cur.size()) {
            order.push_back(cur);
            return;
        }
        for (int e = 0; e < spec.trunc[i]; ++e) {
            cur[i] = e;
            enumerate(i + 1, cur);
        }
        cur[i] = 0;
    }
};

/// Canonical text rendering, terms in the global monomial order:
/// "2*y1*y2 + 6*y1*y2*y3", "y1 - 3*y2^2", "0".
inline std::string to_string(const TruncPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : p.terms()) {
        Int ca = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::string mono;
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "y" + std::to_string(i + 1);
            if (a[i] > 1) mono += "^" + std::to_string(a[i]);
        }
        if (mono.empty()) {
            os << ca.get_str();
        } else if (ca == 1) {
            os << mono;
        } else {
            os << ca.get_str() << "*" << mono;
        }
    }
    return os.str();
}

}  // namespace kgamma
