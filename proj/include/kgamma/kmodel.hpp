#pragma once

#include <array>
#include <map>
#include <optional>
#include <variant>

#include <json.hpp>

#include "kgamma/intlattice.hpp"
#include "kgamma/truncring.hpp"

namespace kgamma {

/// Schur-index data ind(A_1^{i_1} x ... x A_n^{i_n}) on the full exponent
/// box 0 <= i_j <= d_j - 1.  Validation is deliberately weak: the machinery
/// computes consequences of given index data and does not certify that a
/// matching tuple of algebras exists.
struct IndexFunction {
    std::vector<int> degrees;
    std::map<std::vector<int>, Int> table;
    std::vector<int> dropped_factors;  // 1-based original positions removed

    int factors() const { return static_cast<int>(degrees.size()); }
    bool empty_product() const { return degrees.empty(); }

    const Int& ind(const std::vector<int>& tuple) const {
        auto it = table.find(tuple);
        if (it == table.end())
            throw input_error("IndexFunction: missing index entry for tuple " +
                              tuple_key(tuple));
        return it->second;
    }

    static std::string tuple_key(const std::vector<int>& tuple) {
        std::string k;
        for (size_t i = 0; i < tuple.size(); ++i) {
            if (i) k += ",";
            k += std::to_string(tuple[i]);
        }
        return k;
    }

    void validate() const {
        Int prod_deg = 1;
        for (int d : degrees) {
            if (d < 1) throw input_error("IndexFunction: factor degree must be >= 1");
            prod_deg *= d;
        }
        std::vector<int> t(degrees.size(), 0);
        validate_rec(0, t, prod_deg);
    }

private:
    void validate_rec(size_t i, std::vector<int>& t, const Int& prod_deg) const {
        if (i == t.size()) {
            const Int& v = ind(t);
            bool zero_tuple = true;
            for (int x : t) zero_tuple &= (x == 0);
            if (zero_tuple && v != 1)
                throw input_error("IndexFunction: index at the zero tuple must be 1");
            if (v < 1) throw input_error("IndexFunction: indices must be positive");
            if (!divisible(prod_deg, v))
                throw input_error("IndexFunction: index " + v.get_str() +
                                  " does not divide the product of degrees");
            return;
        }
        for (int e = 0; e < degrees[i]; ++e) {
            t[i] = e;
            validate_rec(i + 1, t, prod_deg);
        }
        t[i] = 0;
    }
};

/// multiplier x (sum of line-bundle monomials over a Galois orbit).
struct KGenerator {
    Int multiplier = 1;
    std::vector<Exponents> orbit;

    Int rank() const { return multiplier * Int(static_cast<long>(orbit.size())); }

    // Common total degree of the orbit members (all displayed bases are
    // degree-homogeneous in x).
    int degree() const {
        if (orbit.empty()) throw input_error("KGenerator: empty orbit");
        int d = total_degree(orbit.front());
        for (const auto& a : orbit)
            if (total_degree(a) != d)
                throw input_error("KGenerator: mixed-degree orbit");
        return d;
    }

    bool is_unit() const {
        return multiplier == 1 && orbit.size() == 1 && total_degree(orbit.front()) == 0;
    }

    // m * sum_a x^a expanded in y-coordinates, constant term included.
    TruncPoly to_poly(const RingSpec& spec) const {
        if (multiplier < 1) throw input_error("KGenerator: multiplier must be positive");
        TruncPoly p(spec);
        for (const auto& a : orbit) {
            p += expand_line_bundle(spec, a);
            p += TruncPoly(spec, 1);
        }
        return p * multiplier;
    }

    std::string render() const {
        std::string s = multiplier == 1 ? "" : multiplier.get_str() + "*";
        if (orbit.size() > 1) s += "(";
        for (size_t k = 0; k < orbit.size(); ++k) {
            if (k) s += " + ";
            std::string mono;
            for (size_t i = 0; i < orbit[k].size(); ++i) {
                if (orbit[k][i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(i + 1);
                if (orbit[k][i] > 1) mono += "^" + std::to_string(orbit[k][i]);
            }
            s += mono.empty() ? "1" : mono;
        }
        if (orbit.size() > 1) s += ")";
        return s;
    }
};

inline Vec coordinates(const KGenerator& gen, const MonomialBasis& basis) {
    return basis.coordinates(gen.to_poly(basis.spec));
}

/// A finite generator list spanning a model of K(X) as a sublattice of the
/// split ambient Z^D.
struct KLatticeModel {
    RingSpec spec;
    std::vector<KGenerator> generators;
    IntegerLattice lattice;
};

inline KLatticeModel make_model(const RingSpec& spec, std::vector<KGenerator> gens) {
    bool has_unit = false;
    for (const auto& g : gens) has_unit |= g.is_unit();
    if (!has_unit)
        throw input_error("KLatticeModel: the trivial generator 1 must be present");
    MonomialBasis basis(spec);
    Matrix rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) rows.push_back(coordinates(g, basis));
    KLatticeModel m{spec, std::move(gens), IntegerLattice(basis.rank(), std::move(rows))};
    return m;
}

/// Drops split factors (degree 1 or single-factor index 1); the index table
/// restricts to the slice i_j = 0 of the dropped coordinates.
inline IndexFunction normalize_config(const IndexFunction& idx) {
    idx.validate();
    std::vector<int> keep;
    std::vector<int> dropped = idx.dropped_factors;
    for (int j = 0; j < idx.factors(); ++j) {
        bool split = idx.degrees[j] == 1;
        if (!split) {
            std::vector<int> unit(idx.degrees.size(), 0);
            unit[j] = 1;
            split = idx.ind(unit) == 1;
        }
        if (split)
            dropped.push_back(j + 1);
        else
            keep.push_back(j);
    }
    IndexFunction out;
    out.dropped_factors = std::move(dropped);
    for (int j : keep) out.degrees.push_back(idx.degrees[j]);
    for (const auto& [t, v] : idx.table) {
        bool slice = true;
        for (int j = 0; j < idx.factors(); ++j) {
            bool kept = std::find(keep.begin(), keep.end(), j) != keep.end();
            if (!kept && t[j] != 0) {
                slice = false;
                break;
            }
        }
        if (!slice) continue;
        std::vector<int> sub;
        for (int j : keep) sub.push_back(t[j]);
        out.table[sub] = v;
    }
    return out;
}

/// Quillen-style bases: K_E has all line-bundle monomials with multiplier 1,
/// K_X attaches the Schur index of the matching tensor power.
inline std::pair<KLatticeModel, KLatticeModel> quillen_generators(const IndexFunction& idx) {
    idx.validate();
    if (idx.empty_product())
        throw input_error("quillen_generators: empty product; torsion is trivially 0");
    for (int d : idx.degrees)
        if (d < 2)
            throw input_error("quillen_generators: degree-1 factors must be dropped first");
    RingSpec spec(idx.degrees);
    std::vector<KGenerator> ge, gx;
    std::vector<int> t(idx.degrees.size(), 0);
    // iterate the full exponent box
    while (true) {
        Exponents a(t.begin(), t.end());
        ge.push_back(KGenerator{Int(1), {a}});
        gx.push_back(KGenerator{idx.ind(t), {a}});
        size_t i = 0;
        while (i < t.size() && t[i] == idx.degrees[i] - 1) t[i++] = 0;
        if (i == t.size()) break;
        ++t[i];
    }
    return {make_model(spec, std::move(ge)), make_model(spec, std::move(gx))};
}

// ---------------------------------------------------------------------------
// Weil-restriction (quadric surface) cases.

enum class QuadricCase {
    TwoBiquadratic,    // disc fields L1, L2 generate a biquadratic extension
    TwoSameField,      // L1 = L2
    TwoTrivialDisc,    // one factor is a conic x P^1
    ThreeSameDisc,     // three quadrics, common discriminant
};

inline const char* to_string(QuadricCase c) {
    switch (c) {
        case QuadricCase::TwoBiquadratic: return "two_biquadratic";
        case QuadricCase::TwoSameField: return "two_same_field";
        case QuadricCase::TwoTrivialDisc: return "two_trivial_disc";
        case QuadricCase::ThreeSameDisc: return "three_same_disc";
    }
    return "?";
}

inline QuadricCase quadric_case_from(const std::string& s) {
    if (s == "two_biquadratic") return QuadricCase::TwoBiquadratic;
    if (s == "two_same_field") return QuadricCase::TwoSameField;
    if (s == "two_trivial_disc") return QuadricCase::TwoTrivialDisc;
    if (s == "three_same_disc") return QuadricCase::ThreeSameDisc;
    throw input_error("unknown quadric case tag: " + s);
}

/// Index data over the splitting field of the discriminant(s).  For two
/// quadrics only e[0], e[1], f[0] and d are used; for three quadrics, e and
/// f are indexed by the blocks 12/34/56 with f[b] the index of the tensor
/// product of the two quaternions away from block b, and g the index of the
/// triple product.
struct QuadricConfig {
    QuadricCase kind = QuadricCase::TwoBiquadratic;
    std::array<int, 3> e{1, 1, 1};
    std::array<int, 3> f{1, 1, 1};
    int g = 1;
    int d = 2;

    bool three() const { return kind == QuadricCase::ThreeSameDisc; }

    void validate() const {
        auto in = [](int v, std::initializer_list<int> allowed) {
            for (int a : allowed)
                if (v == a) return true;
            return false;
        };
        int ecount = three() ? 3 : 2;
        for (int i = 0; i < ecount; ++i)
            if (!in(e[i], {1, 2})) throw input_error("QuadricConfig: e must be 1 or 2");
        int fcount = three() ? 3 : 1;
        for (int i = 0; i < fcount; ++i)
            if (!in(f[i], {1, 2, 4})) throw input_error("QuadricConfig: f must be 1, 2 or 4");
        if (three() && !in(g, {1, 2, 4, 8}))
            throw input_error("QuadricConfig: g must be 1, 2, 4 or 8");
        if (!in(d, {2, 4, 8})) throw input_error("QuadricConfig: d must be 2, 4 or 8");
        if (!three() && d == 8)
            throw input_error("QuadricConfig: two-quadric splitting degree is 2 or 4");
    }
};

struct WeilModels {
    KLatticeModel k_el;  // full monomial model over the total splitting field
    KLatticeModel k_e;   // Galois-orbit sums
    KLatticeModel k_x;   // orbit sums with index multipliers
};

namespace detail {

inline Exponents bits(int vars, std::initializer_list<int> ones) {
    Exponents a(vars, 0);
    for (int i : ones) a[i] = 1;
    return a;
}

inline std::vector<KGenerator> full_monomial_generators(const RingSpec& spec) {
    MonomialBasis basis(spec);
    std::vector<KGenerator> gens;
    for (const auto& mono : basis.order) gens.push_back(KGenerator{Int(1), {mono}});
    return gens;
}

}  // namespace detail

inline WeilModels weil_generators(const QuadricConfig& cfg) {
    cfg.validate();
    using detail::bits;
    std::vector<std::pair<Int, KGenerator>> table;  // (K_X multiplier, K_E generator)
    int vars = 0;
    auto put = [&](long m, std::initializer_list<std::initializer_list<int>> orbit) {
        KGenerator g;
        g.multiplier = 1;
        for (auto ones : orbit) g.orbit.push_back(bits(vars, ones));
        table.emplace_back(Int(m), std::move(g));
    };

    switch (cfg.kind) {
        case QuadricCase::TwoBiquadratic:
        case QuadricCase::TwoSameField: {
            vars = 4;
            const long e1 = cfg.e[0], e2 = cfg.e[1], f = cfg.f[0];
            put(1, {{}});
            put(e1, {{0}, {1}});          // x1 + x2
            put(e2, {{2}, {3}});          // x3 + x4
            put(1, {{0, 1}});             // x12
            put(1, {{2, 3}});             // x34
            if (cfg.kind == QuadricCase::TwoBiquadratic) {
                put(f, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});  // (x1+x2)(x3+x4)
            } else {
                put(f, {{0, 2}, {1, 3}});  // x13 + x24
                put(f, {{0, 3}, {1, 2}});  // x14 + x23
            }
            put(e2, {{0, 1, 2}, {0, 1, 3}});  // x12(x3+x4)
            put(e1, {{0, 2, 3}, {1, 2, 3}});  // x34(x1+x2)
            put(1, {{0, 1, 2, 3}});           // x1234
            break;
        }
        case QuadricCase::TwoTrivialDisc: {
            vars = 3;
            const long e1 = cfg.e[0], e2 = cfg.e[1], f = cfg.f[0];
            put(1, {{}});
            put(e1, {{0}});          // x1
            put(e2, {{1}, {2}});     // x2 + x3
            put(1, {{1, 2}});        // x23
            put(f, {{0, 1}, {0, 2}});  // x1(x2+x3)
            put(e1, {{0, 1, 2}});    // x123
            break;
        }
        case QuadricCase::ThreeSameDisc: {
            vars = 6;
            const std::array<std::array<int, 2>, 3> block{{{0, 1}, {2, 3}, {4, 5}}};
            put(1, {{}});
            for (int b = 0; b < 3; ++b)
                put(cfg.e[b], {{block[b][0]}, {block[b][1]}});
            for (int b = 0; b < 3; ++b)
                put(1, {{block[b][0], block[b][1]}});
            for (int b1 = 0; b1 < 3; ++b1)
                for (int b2 = b1 + 1; b2 < 3; ++b2) {
                    int b3 = 3 - b1 - b2;
                    const auto [p, q] = std::pair(block[b1][0], block[b1][1]);
                    const auto [r, s] = std::pair(block[b2][0], block[b2][1]);
                    put(cfg.f[b3], {{p, r}, {q, s}});
                    put(cfg.f[b3], {{p, s}, {q, r}});
                }
            for (int bs = 0; bs < 3; ++bs)
                for (int bf = 0; bf < 3; ++bf) {
                    if (bs == bf) continue;
                    put(cfg.e[bs], {{block[bf][0], block[bf][1], block[bs][0]},
                                    {block[bf][0], block[bf][1], block[bs][1]}});
                }
            for (int c1 = 0; c1 < 2; ++c1)
                for (int c2 = 0; c2 < 2; ++c2)
                    put(cfg.g, {{block[0][0], block[1][c1], block[2][c2]},
                                {block[0][1], block[1][1 - c1], block[2][1 - c2]}});
            for (int b1 = 0; b1 < 3; ++b1)
                for (int b2 = b1 + 1; b2 < 3; ++b2)
                    put(1, {{block[b1][0], block[b1][1], block[b2][0], block[b2][1]}});
            for (int b = 0; b < 3; ++b) {
                int b1 = (b + 1) % 3, b2 = (b + 2) % 3;
                if (b1 > b2) std::swap(b1, b2);
                const auto [r, s] = std::pair(block[b1][0], block[b1][1]);
                const auto [t, u] = std::pair(block[b2][0], block[b2][1]);
                put(cfg.f[b], {{block[b][0], block[b][1], r, t},
                               {block[b][0], block[b][1], s, u}});
                put(cfg.f[b], {{block[b][0], block[b][1], r, u},
                               {block[b][0], block[b][1], s, t}});
            }
            for (int b1 = 0; b1 < 3; ++b1)
                for (int b2 = b1 + 1; b2 < 3; ++b2) {
                    int b3 = 3 - b1 - b2;
                    put(cfg.e[b3], {{block[b1][0], block[b1][1], block[b2][0], block[b2][1],
                                     block[b3][0]},
                                    {block[b1][0], block[b1][1], block[b2][0], block[b2][1],
                                     block[b3][1]}});
                }
            put(1, {{0, 1, 2, 3, 4, 5}});
            break;
        }
    }

    RingSpec spec(std::vector<int>(vars, 2));
    std::vector<KGenerator> ge, gx;
    for (const auto& [mult, gen] : table) {
        ge.push_back(gen);
        KGenerator withm = gen;
        withm.multiplier = mult;
        gx.push_back(std::move(withm));
    }
    WeilModels out{make_model(spec, detail::full_monomial_generators(spec)),
                   make_model(spec, std::move(ge)), make_model(spec, std::move(gx))};
    return out;
}

/// Splitting degrees d = [E:F] consistent with the field choices behind each
/// case, given only the available over-L index data.  Realizability over an
/// actual field is not certified.
inline std::vector<int> admissible_splitting_degrees(const QuadricConfig& cfg) {
    if (!cfg.three()) {
        // d = 4 exactly when the tensor product has index 4 over the base,
        // which requires f = 2 or 4; d = 2 needs base index <= 2, so f <= 2.
        std::vector<int> out;
        if (cfg.f[0] <= 2) out.push_back(2);
        if (cfg.f[0] >= 2) out.push_back(4);
        return out;
    }
    int f1 = 0;
    for (int b = 0; b < 3; ++b) f1 += cfg.f[b] == 1;
    if (f1 >= 2) return {2};
    std::vector<int> out;
    if (cfg.g <= 4) out.push_back(4);
    if (cfg.g >= 4) out.push_back(8);
    return out;
}

// ---------------------------------------------------------------------------
// JSON configuration schema.

using ModelConfig = std::variant<IndexFunction, QuadricConfig>;

inline nlohmann::json to_json(const IndexFunction& idx) {
    nlohmann::json j;
    j["kind"] = "split";
    j["degrees"] = idx.degrees;
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [key, v] : idx.table)
        t[IndexFunction::tuple_key(key)] = static_cast<long>(v.get_si());
    j["index_table"] = t;
    if (!idx.dropped_factors.empty()) j["dropped_factors"] = idx.dropped_factors;
    return j;
}

inline nlohmann::json to_json(const QuadricConfig& cfg) {
    nlohmann::json j;
    j["kind"] = "quadric";
    j["case"] = to_string(cfg.kind);
    if (cfg.three()) {
        j["e"] = {{"12", cfg.e[0]}, {"34", cfg.e[1]}, {"56", cfg.e[2]}};
        j["f"] = {{"12", cfg.f[0]}, {"34", cfg.f[1]}, {"56", cfg.f[2]}};
        j["g"] = cfg.g;
    } else {
        j["e"] = {{"1", cfg.e[0]}, {"2", cfg.e[1]}};
        j["f"] = {{"12", cfg.f[0]}};
    }
    j["d"] = cfg.d;
    return j;
}

inline ModelConfig parse_config(const nlohmann::json& j) {
    if (!j.contains("kind")) throw input_error("config: missing field \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "split") {
        IndexFunction idx;
        if (!j.contains("degrees")) throw input_error("config: missing field \"degrees\"");
        idx.degrees = j.at("degrees").get<std::vector<int>>();
        if (!j.contains("index_table"))
            throw input_error("config: missing field \"index_table\"");
        for (const auto& [key, value] : j.at("index_table").items()) {
            std::vector<int> tuple;
            std::string cur;
            for (char c : key + ",") {
                if (c == ',') {
                    if (cur.empty()) throw input_error("config: malformed tuple key " + key);
                    tuple.push_back(std::stoi(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            if (static_cast<int>(tuple.size()) != idx.factors())
                throw input_error("config: tuple key arity mismatch at " + key);
            idx.table[tuple] = Int(value.get<long>());
        }
        idx.validate();
        return idx;
    }
    if (kind == "quadric") {
        QuadricConfig cfg;
        cfg.kind = quadric_case_from(j.at("case").get<std::string>());
        const auto& e = j.at("e");
        if (cfg.three()) {
            cfg.e = {e.at("12").get<int>(), e.at("34").get<int>(), e.at("56").get<int>()};
            const auto& f = j.at("f");
            cfg.f = {f.at("12").get<int>(), f.at("34").get<int>(), f.at("56").get<int>()};
            cfg.g = j.at("g").get<int>();
        } else {
            cfg.e = {e.at("1").get<int>(), e.at("2").get<int>(), 1};
            const auto& f = j.at("f");
            cfg.f[0] = f.is_object() ? f.at("12").get<int>() : f.get<int>();
        }
        cfg.d = j.at("d").get<int>();
        cfg.validate();
        return cfg;
    }
    throw input_error("config: unknown kind \"" + kind + "\"");
}

}  // namespace kgamma
