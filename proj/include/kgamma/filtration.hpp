#pragma once

#include <functional>
#include <set>

#include "kgamma/chern.hpp"

namespace kgamma {

/// Descending chain of lattices Gamma^0 >= Gamma^1 >= ... built from Chern
/// atoms of the model generators.  `levels[d]` is Gamma^d; a partial build
/// stops at `depth` (useful when only low codimensions are needed).
struct Filtration {
    KLatticeModel model;
    std::vector<IntegerLattice> levels;

    int depth() const { return static_cast<int>(levels.size()) - 1; }
    bool full() const { return depth() >= model.spec.dim() + 1; }

    const IntegerLattice& level(int d) const {
        if (d < 0 || d > depth())
            throw input_error("Filtration: level " + std::to_string(d) + " not built");
        return levels[static_cast<size_t>(d)];
    }

    /// Gamma^{d/d+1} structure.
    ElementaryDivisors quotient(int d) const {
        return quotient_torsion(level(d + 1), level(d));
    }
};

/// Augmentation kernel: lattice vectors with zero constant coordinate.
inline IntegerLattice augmentation_kernel(const IntegerLattice& lattice) {
    const Matrix& b = lattice.basis();
    if (b.empty() || b[0][0] == 0)
        throw error("augmentation_kernel: lattice does not contain the unit");
    Matrix rows(b.begin() + 1, b.end());
    return IntegerLattice(lattice.ambient_rank(), std::move(rows));
}

/// Builds the gamma filtration from Chern classes of the generator list.
/// Level d is spanned by atoms of degree >= d together with the products
/// atom_j * basis(level d-j); level 1 is the augmentation kernel.  The
/// reduction of gamma products to Chern products of the fixed generators is
/// cross-checked downstream by the intersection characterization at d <= 2.
inline Filtration build_gamma(const KLatticeModel& model, int up_to = -1) {
    const RingSpec& spec = model.spec;
    const int dim = spec.dim();
    if (up_to < 0 || up_to > dim + 1) up_to = dim + 1;
    MonomialBasis basis(spec);

    std::vector<std::vector<TruncPoly>> atoms(static_cast<size_t>(dim) + 1);
    for (const auto& gen : model.generators) {
        for (auto& atom : chern_classes(gen, spec)) {
            if (atom.value.is_zero()) continue;
            if (!model.lattice.contains(basis.coordinates(atom.value)))
                throw error("build_gamma: Chern class of " + gen.render() +
                            " falls outside the model lattice");
            auto& bucket = atoms[static_cast<size_t>(atom.degree)];
            if (std::find(bucket.begin(), bucket.end(), atom.value) == bucket.end())
                bucket.push_back(std::move(atom.value));
        }
    }

    Filtration fil;
    fil.model = model;
    fil.levels.reserve(static_cast<size_t>(up_to) + 1);
    fil.levels.push_back(model.lattice);

    if (up_to >= 1) {
        EchelonBuilder b1(basis.rank());
        for (const auto& a : atoms[1]) b1.add(basis.coordinates(a));
        IntegerLattice l1 = b1.take();
        if (l1 != augmentation_kernel(model.lattice))
            throw error("build_gamma: degree-1 atoms do not span the augmentation kernel");
        fil.levels.push_back(std::move(l1));
    }

    std::vector<std::vector<TruncPoly>> level_polys(static_cast<size_t>(up_to) + 1);
    auto polys_of_level = [&](int d) -> const std::vector<TruncPoly>& {
        auto& cache = level_polys[static_cast<size_t>(d)];
        if (cache.empty())
            for (const auto& row : fil.levels[static_cast<size_t>(d)].basis())
                cache.push_back(basis.polynomial(row));
        return cache;
    };

    for (int d = 2; d <= up_to; ++d) {
        if (d > dim) {
            fil.levels.push_back(IntegerLattice(basis.rank()));
            continue;
        }
        EchelonBuilder builder(basis.rank());
        for (int j = d; j <= dim; ++j)
            for (const auto& a : atoms[static_cast<size_t>(j)])
                builder.add(basis.coordinates(a));
        for (int j = 1; j <= d - 1; ++j) {
            if (atoms[static_cast<size_t>(j)].empty()) continue;
            for (const auto& bp : polys_of_level(d - j)) {
                if (bp.min_total_degree() + j > dim) continue;
                for (const auto& a : atoms[static_cast<size_t>(j)]) {
                    TruncPoly prod = a * bp;
                    if (!prod.is_zero()) builder.add(basis.coordinates(prod));
                }
            }
        }
        IntegerLattice lvl = builder.take();
        for (const auto& row : lvl.basis())
            if (!fil.levels.back().contains(row))
                throw error("build_gamma: nesting violated at level " + std::to_string(d));
        fil.levels.push_back(std::move(lvl));
    }
    return fil;
}

// ---------------------------------------------------------------------------
// Torsion report.

struct CodimTorsion {
    int d = 0;
    ElementaryDivisors quotient;
};

struct TorsionReport {
    std::vector<CodimTorsion> per_codim;  // d = 1..dim
    Int index = 1;                        // [K(X_E) : K(X)]
    std::vector<Int> alpha;               // restriction-quotient orders, d = 1..dim
    std::vector<mpq_class> beta;          // alpha_d / codim-d index factor
    std::string alphalem = "skipped: not evaluated";
    std::optional<std::string> note;

    Int torsion_total() const {
        Int t = 1;
        for (const auto& c : per_codim) t *= c.quotient.torsion_order();
        return t;
    }

    const ElementaryDivisors& at_codim(int d) const {
        for (const auto& c : per_codim)
            if (c.d == d) return c.quotient;
        throw input_error("TorsionReport: no entry for codimension " + std::to_string(d));
    }
};

/// Per-degree index factors |K^d(X_E)/K^d(X)| read off parallel generator
/// lists (same orbits, multipliers possibly differing).
inline std::optional<std::vector<Int>> codim_index_factors(const KLatticeModel& kx,
                                                           const KLatticeModel& ke) {
    if (kx.generators.size() != ke.generators.size()) return std::nullopt;
    std::vector<Int> factors(static_cast<size_t>(kx.spec.dim()) + 1, Int(1));
    for (size_t i = 0; i < kx.generators.size(); ++i) {
        const auto& gx = kx.generators[i];
        const auto& ge = ke.generators[i];
        if (gx.orbit != ge.orbit) return std::nullopt;
        if (!divisible(gx.multiplier, ge.multiplier)) return std::nullopt;
        factors[static_cast<size_t>(gx.degree())] *= gx.multiplier / ge.multiplier;
    }
    return factors;
}

/// Quotient torsion per codimension plus the restriction-side bookkeeping
/// of the snake-lemma identity
///   |sum of torsion| * [K(X_E):K(X)] = prod_d |Gamma^{d/d+1}(X_E)/Im(res)|.
/// The identity needs torsion-free splitting-side quotients; that is
/// checked, not assumed.
inline TorsionReport torsion_report(const Filtration& fx, const Filtration& fE) {
    if (!fx.full() || !fE.full())
        throw input_error("torsion_report: both filtrations must be fully built");
    if (fx.model.spec != fE.model.spec)
        throw input_error("torsion_report: ambient ring mismatch");
    const int dim = fx.model.spec.dim();
    for (const auto& row : fx.model.lattice.basis())
        if (!fE.model.lattice.contains(row))
            throw not_a_sublattice("torsion_report: K(X) is not inside K(X_E)");

    TorsionReport rep;
    auto idx = lattice_index(fx.levels[0], fE.levels[0]);
    if (!idx) throw input_error("torsion_report: model lattices differ in rank");
    rep.index = *idx;

    for (int d = 1; d <= dim; ++d)
        rep.per_codim.push_back(CodimTorsion{d, fx.quotient(d)});

    std::string skip;
    for (int d = 0; d <= dim && skip.empty(); ++d) {
        if (!fE.quotient(d).torsion_free())
            skip = "skipped: splitting-side quotient at codimension " + std::to_string(d) +
                   " has torsion";
    }

    bool alpha_ok = true;
    for (int d = 1; d <= dim; ++d) {
        for (const auto& row : fx.level(d).basis())
            if (!fE.level(d).contains(row))
                throw error("torsion_report: Gamma^d(X) not inside Gamma^d(X_E)");
        IntegerLattice image = lattice_sum(fx.level(d), fE.level(d + 1));
        auto a = lattice_index(image, fE.level(d));
        if (!a) {
            alpha_ok = false;
            rep.alpha.push_back(0);
        } else {
            rep.alpha.push_back(*a);
        }
    }

    auto factors = codim_index_factors(fx.model, fE.model);
    if (factors) {
        for (int d = 1; d <= dim; ++d) {
            mpq_class b(rep.alpha[static_cast<size_t>(d - 1)],
                        (*factors)[static_cast<size_t>(d)]);
            b.canonicalize();
            rep.beta.push_back(b);
        }
    }

    if (!skip.empty()) {
        rep.alphalem = skip;
    } else if (!alpha_ok) {
        rep.alphalem = "skipped: restriction cokernel is infinite";
    } else {
        Int lhs = rep.torsion_total() * rep.index;
        Int rhs = 1;
        for (const auto& a : rep.alpha) rhs *= a;
        rep.alphalem = (lhs == rhs)
                           ? "verified"
                           : "failed: " + lhs.get_str() + " != " + rhs.get_str();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Intersection characterization at low codimension.

/// T^d(X) = Gamma^d(X) = Gamma^d(split) cap K(X) for d = 1, 2.  `split` must
/// be the filtration of the full split model; equality against the built
/// levels is a theorem, so a mismatch throws with witnesses.  Returns the
/// d = 2 intersection.
inline IntegerLattice gamma2_by_intersection(const KLatticeModel& model_x,
                                             const Filtration& split,
                                             const Filtration& fx) {
    IntegerLattice result;
    for (int d = 1; d <= 2; ++d) {
        IntegerLattice meet = lattice_intersect(split.level(d), model_x.lattice);
        if (meet != fx.level(d)) {
            MonomialBasis basis(model_x.spec);
            std::string witness;
            for (const auto& row : meet.basis())
                if (!fx.level(d).contains(row)) {
                    witness = to_string(basis.polynomial(row)) + " in intersection only";
                    break;
                }
            if (witness.empty())
                for (const auto& row : fx.level(d).basis())
                    if (!meet.contains(row)) {
                        witness = to_string(basis.polynomial(row)) + " in gamma level only";
                        break;
                    }
            throw error("gamma2_by_intersection: mismatch at d = " + std::to_string(d) +
                        " (" + witness + ")");
        }
        if (d == 2) result = meet;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Declarative membership claims (the lemma tables).

enum class ClaimKind {
    InGamma,      // x in Gamma^d(X)
    InImageRes,   // x in Im(res^{d/d+1}): x in Gamma^d(X) + Gamma^{d+1}(X_E)
    InGammaQuot,  // class claim: x in Gamma^d(X) modulo the splitting-side
                  // level d+1 (same lattice check as InImageRes; kept separate
                  // because the source statements read differently)
};

struct MembershipClaim {
    std::string id;
    std::string ref;  // name of the governing statement, for reports
    ClaimKind kind = ClaimKind::InGamma;
    int d = 0;
    TruncPoly element;
    bool assumed_witness = false;  // proof uses a geometric witness; a failed
                                   // lattice check is then inconclusive
};

enum class ClaimStatus { Holds, Fails, Assumed };

struct ClaimResult {
    MembershipClaim claim;
    ClaimStatus status = ClaimStatus::Fails;
    std::string detail;
};

inline std::vector<ClaimResult> membership_suite(const Filtration& fx, const Filtration& fE,
                                                 const std::vector<MembershipClaim>& claims) {
    MonomialBasis basis(fx.model.spec);
    std::vector<ClaimResult> out;
    for (const auto& c : claims) {
        Vec v = basis.coordinates(c.element);
        bool ok = false;
        switch (c.kind) {
            case ClaimKind::InGamma:
                ok = fx.level(c.d).contains(v);
                break;
            case ClaimKind::InImageRes:
            case ClaimKind::InGammaQuot:
                ok = lattice_sum(fx.level(c.d), fE.level(c.d + 1)).contains(v);
                break;
        }
        ClaimResult r;
        r.claim = c;
        if (ok)
            r.status = ClaimStatus::Holds;
        else
            r.status = c.assumed_witness ? ClaimStatus::Assumed : ClaimStatus::Fails;
        if (!ok && c.assumed_witness)
            r.detail = "not decided by the lattice computation (assumed witness)";
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace kgamma
