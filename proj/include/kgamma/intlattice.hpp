#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <utility>

#include "kgamma/common.hpp"

namespace kgamma {

namespace detail {

inline void sub_scaled(Vec& target, const Vec& src, const Int& q) {
    if (q == 0) return;
    for (size_t i = 0; i < target.size(); ++i)
        if (src[i] != 0) target[i] -= q * src[i];
}

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// Row-style Hermite normal form by gcd-driven pivoting: the smallest
/// absolute entry in a column is chosen as pivot and remainders are taken
/// round-to-nearest, which keeps intermediate entries moderate.  Pivots end
/// up strictly positive with entries above each pivot reduced into
/// [0, pivot); zero rows are removed.  When `transform` is given, the same
/// row operations are mirrored onto it (it should start as an identity of
/// matching height), so rows of the transform matching dropped zero rows
/// span the left kernel.
inline Matrix hnf_rows(Matrix rows, Matrix* transform = nullptr) {
    if (rows.empty()) return rows;
    const size_t D = rows[0].size();
    size_t top = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < D && top < rows.size(); ++col) {
        while (true) {
            size_t best = rows.size();
            for (size_t i = top; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() ||
                    cmp(abs(rows[i][col]), abs(rows[best][col])) < 0)
                    best = i;
            }
            if (best == rows.size()) break;  // no pivot in this column
            if (best != top) {
                std::swap(rows[top], rows[best]);
                if (transform) std::swap((*transform)[top], (*transform)[best]);
            }
            bool residue = false;
            for (size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Int q = rdiv(rows[i][col], rows[top][col]);
                sub_scaled(rows[i], rows[top], q);
                if (transform) sub_scaled((*transform)[i], (*transform)[top], q);
                if (rows[i][col] != 0) residue = true;
            }
            if (!residue) break;
        }
        if (rows[top][col] == 0) continue;
        if (rows[top][col] < 0) {
            for (auto& x : rows[top]) x = -x;
            if (transform)
                for (auto& x : (*transform)[top]) x = -x;
        }
        pivot_col.push_back(col);
        ++top;
    }
    // Reduce entries above each pivot into [0, pivot).
    for (size_t j = 1; j < top; ++j) {
        const size_t c = pivot_col[j];
        for (size_t k = 0; k < j; ++k) {
            Int q = fdiv(rows[k][c], rows[j][c]);
            sub_scaled(rows[k], rows[j], q);
            if (transform) sub_scaled((*transform)[k], (*transform)[j], q);
        }
    }
    rows.resize(top);
    return rows;
}

inline std::vector<size_t> pivot_columns(const Matrix& hnf) {
    std::vector<size_t> pc;
    size_t col = 0;
    for (const auto& row : hnf) {
        while (col < row.size() && row[col] == 0) ++col;
        pc.push_back(col);
    }
    return pc;
}

}  // namespace detail

/// Structure of a finitely generated abelian group: the nontrivial cyclic
/// torsion factors (each >= 2, each dividing the next) plus a free rank.
struct ElementaryDivisors {
    std::vector<Int> torsion;
    long free_rank = 0;

    bool torsion_free() const { return torsion.empty(); }
    Int torsion_order() const {
        Int p = 1;
        for (const auto& d : torsion) p *= d;
        return p;
    }
    bool elementary_of_exponent(const Int& p) const {
        for (const auto& d : torsion)
            if (d != p) return false;
        return true;
    }

    bool operator==(const ElementaryDivisors& o) const {
        return torsion == o.torsion && free_rank == o.free_rank;
    }
    bool operator!=(const ElementaryDivisors& o) const { return !(*this == o); }

    // "(Z/2)^5", "Z^3", "(Z/3)^8 + Z", "0"
    std::string render() const {
        std::ostringstream os;
        std::vector<std::pair<Int, int>> grouped;
        for (const auto& d : torsion) {
            if (!grouped.empty() && grouped.back().first == d)
                ++grouped.back().second;
            else
                grouped.emplace_back(d, 1);
        }
        bool first = true;
        for (const auto& [d, k] : grouped) {
            if (!first) os << " + ";
            os << "(Z/" << d.get_str() << ")";
            if (k > 1) os << "^" << k;
            first = false;
        }
        if (free_rank > 0) {
            if (!first) os << " + ";
            os << "Z";
            if (free_rank > 1) os << "^" << free_rank;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }
};

/// Smith normal form of an integer matrix.  `diagonal` lists the nonzero
/// invariant factors d_1 | d_2 | ... ; unimodular witnesses U, V with
/// U*M*V = diag are retained only when requested.
struct SmithNormalForm {
    std::vector<Int> diagonal;
    long rank = 0;
    std::optional<Matrix> left;   // U
    std::optional<Matrix> right;  // V

    std::vector<Int> nontrivial() const {
        std::vector<Int> t;
        for (const auto& d : diagonal)
            if (d > 1) t.push_back(d);
        return t;
    }
};

inline SmithNormalForm snf(Matrix a, bool with_transforms = false) {
    SmithNormalForm out;
    const size_t m = a.size();
    const size_t n = m ? a[0].size() : 0;
    Matrix u, v;
    if (with_transforms) {
        u.assign(m, Vec(m, Int(0)));
        for (size_t i = 0; i < m; ++i) u[i][i] = 1;
        v.assign(n, Vec(n, Int(0)));
        for (size_t i = 0; i < n; ++i) v[i][i] = 1;
    }
    auto row_sub = [&](size_t dst, size_t src, const Int& q) {
        detail::sub_scaled(a[dst], a[src], q);
        if (with_transforms) detail::sub_scaled(u[dst], u[src], q);
    };
    auto col_sub = [&](size_t dst, size_t src, const Int& q) {
        if (q == 0) return;
        for (size_t i = 0; i < m; ++i) a[i][dst] -= q * a[i][src];
        if (with_transforms)
            for (size_t i = 0; i < n; ++i) v[i][dst] -= q * v[i][src];
    };
    auto col_swap = [&](size_t x, size_t y) {
        if (x == y) return;
        for (size_t i = 0; i < m; ++i) std::swap(a[i][x], a[i][y]);
        if (with_transforms)
            for (size_t i = 0; i < n; ++i) std::swap(v[i][x], v[i][y]);
    };
    auto row_swap = [&](size_t x, size_t y) {
        if (x == y) return;
        std::swap(a[x], a[y]);
        if (with_transforms) std::swap(u[x], u[y]);
    };

    size_t t = 0;
    while (true) {
        size_t bi = m, bj = n;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (a[i][j] == 0) continue;
                if (bi == m || cmp(abs(a[i][j]), abs(a[bi][bj])) < 0) {
                    bi = i;
                    bj = j;
                }
            }
        if (bi == m) break;
        row_swap(t, bi);
        col_swap(t, bj);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                Int q = rdiv(a[i][t], a[t][t]);
                row_sub(i, t, q);
                if (a[i][t] != 0) {
                    row_swap(t, i);  // strictly smaller pivot
                    dirty = true;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                Int q = rdiv(a[t][j], a[t][t]);
                col_sub(j, t, q);
                if (a[t][j] != 0) {
                    col_swap(t, j);
                    dirty = true;
                }
            }
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            if (with_transforms)
                for (auto& x : u[t]) x = -x;
        }
        ++t;
    }
    // Enforce the divisibility chain d_i | d_{i+1}.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < t; ++i) {
            if (divisible(a[i + 1][i + 1], a[i][i])) continue;
            changed = true;
            // col_i += col_{i+1}, then re-clear the 2x2 block; the pivot
            // strictly shrinks to the gcd.
            col_sub(i, i + 1, Int(-1));
            while (a[i + 1][i] != 0 || a[i][i + 1] != 0) {
                if (a[i + 1][i] != 0) {
                    Int q = rdiv(a[i + 1][i], a[i][i]);
                    row_sub(i + 1, i, q);
                    if (a[i + 1][i] != 0) row_swap(i, i + 1);
                } else {
                    Int q = rdiv(a[i][i + 1], a[i][i]);
                    col_sub(i + 1, i, q);
                    if (a[i][i + 1] != 0) col_swap(i, i + 1);
                }
            }
            for (size_t k = i; k <= i + 1; ++k) {
                if (a[k][k] < 0) {
                    for (auto& x : a[k]) x = -x;
                    if (with_transforms)
                        for (auto& x : u[k]) x = -x;
                }
            }
        }
    }
    out.rank = static_cast<long>(t);
    for (size_t i = 0; i < t; ++i) out.diagonal.push_back(a[i][i]);
    if (with_transforms) {
        out.left = std::move(u);
        out.right = std::move(v);
    }
    return out;
}

/// A sublattice of Z^D given by spanning vectors.  The canonical HNF basis
/// is memoized; concurrent first access may race benignly (both threads
/// compute the same value).
class IntegerLattice {
public:
    IntegerLattice() = default;
    explicit IntegerLattice(long ambient_rank, Matrix generators = {})
        : data_(std::make_shared<Data>()) {
        data_->ambient = ambient_rank;
        for (auto& g : generators) {
            if (static_cast<long>(g.size()) != ambient_rank)
                throw input_error("IntegerLattice: generator length mismatch");
            if (!detail::is_zero_vec(g)) data_->gens.push_back(std::move(g));
        }
    }

    long ambient_rank() const { return data_ ? data_->ambient : 0; }
    const Matrix& generators() const {
        static const Matrix empty;
        return data_ ? data_->gens : empty;
    }

    const Matrix& basis() const {
        if (!data_) {
            static const Matrix empty;
            return empty;
        }
        std::lock_guard<std::mutex> lock(data_->mutex);
        if (!data_->canonical) data_->canonical = detail::hnf_rows(data_->gens);
        return *data_->canonical;
    }

    long rank() const { return static_cast<long>(basis().size()); }
    bool is_zero() const { return rank() == 0; }

    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        return detail::is_zero_vec(r);
    }

    /// Canonical residue of v modulo the lattice (reduction against the HNF
    /// basis); zero exactly for members.
    Vec reduce(Vec v) const {
        if (static_cast<long>(v.size()) != ambient_rank())
            throw input_error("IntegerLattice: vector length mismatch");
        const Matrix& b = basis();
        const auto pc = detail::pivot_columns(b);
        for (size_t i = 0; i < b.size(); ++i) {
            const Int& p = b[i][pc[i]];
            if (v[pc[i]] == 0) continue;
            Int q = fdiv(v[pc[i]], p);
            detail::sub_scaled(v, b[i], q);
        }
        return v;
    }

    /// Integer coordinates of v in the HNF basis, if v belongs to the span.
    std::optional<Vec> coordinates_in_basis(Vec v) const {
        const Matrix& b = basis();
        const auto pc = detail::pivot_columns(b);
        Vec coords(b.size(), Int(0));
        for (size_t i = 0; i < b.size(); ++i) {
            if (v[pc[i]] == 0) continue;
            if (!divisible(v[pc[i]], b[i][pc[i]])) return std::nullopt;
            Int q = v[pc[i]] / b[i][pc[i]];
            coords[i] = q;
            detail::sub_scaled(v, b[i], q);
        }
        if (!detail::is_zero_vec(v)) return std::nullopt;
        return coords;
    }

    bool operator==(const IntegerLattice& o) const {
        return ambient_rank() == o.ambient_rank() && basis() == o.basis();
    }
    bool operator!=(const IntegerLattice& o) const { return !(*this == o); }

private:
    struct Data {
        long ambient = 0;
        Matrix gens;
        mutable std::mutex mutex;
        mutable std::optional<Matrix> canonical;
    };
    std::shared_ptr<Data> data_;
};

inline IntegerLattice hnf(const IntegerLattice& l) {
    return IntegerLattice(l.ambient_rank(), l.basis());
}

inline IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b) {
    if (a.ambient_rank() != b.ambient_rank())
        throw input_error("lattice_sum: ambient rank mismatch");
    Matrix gens = a.basis();
    for (const auto& row : b.basis()) gens.push_back(row);
    return IntegerLattice(a.ambient_rank(), std::move(gens));
}

/// Exact intersection via the left kernel of the stacked bases: a kernel
/// vector (u, v) with u*A + v*B = 0 yields the intersection element u*A.
inline IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b) {
    if (a.ambient_rank() != b.ambient_rank())
        throw input_error("lattice_intersect: ambient rank mismatch");
    const Matrix& ba = a.basis();
    const Matrix& bb = b.basis();
    if (ba.empty() || bb.empty()) return IntegerLattice(a.ambient_rank());
    Matrix stack = ba;
    for (const auto& row : bb) stack.push_back(row);
    const size_t m = stack.size();
    Matrix transform(m, Vec(m, Int(0)));
    for (size_t i = 0; i < m; ++i) transform[i][i] = 1;
    Matrix h = detail::hnf_rows(stack, &transform);
    Matrix gens;
    for (size_t i = h.size(); i < m; ++i) {  // kernel rows
        Vec x(a.ambient_rank(), Int(0));
        for (size_t j = 0; j < ba.size(); ++j)
            detail::sub_scaled(x, ba[j], -transform[i][j]);
        gens.push_back(std::move(x));
    }
    return IntegerLattice(a.ambient_rank(), std::move(gens));
}

/// Coordinates of every basis vector of `sub` in a basis of `super`;
/// throws not_a_sublattice when containment fails.
inline Matrix relative_coordinates(const IntegerLattice& sub, const IntegerLattice& super) {
    if (sub.ambient_rank() != super.ambient_rank())
        throw input_error("relative_coordinates: ambient rank mismatch");
    Matrix m;
    for (const auto& g : sub.basis()) {
        auto c = super.coordinates_in_basis(g);
        if (!c) throw not_a_sublattice("generator of sub is outside super");
        m.push_back(std::move(*c));
    }
    return m;
}

/// Torsion divisors and free rank of super/sub.
inline ElementaryDivisors quotient_torsion(const IntegerLattice& sub,
                                           const IntegerLattice& super) {
    Matrix rel = relative_coordinates(sub, super);
    ElementaryDivisors out;
    if (rel.empty()) {
        out.free_rank = super.rank();
        return out;
    }
    SmithNormalForm s = snf(std::move(rel));
    out.torsion = s.nontrivial();
    out.free_rank = super.rank() - s.rank;
    return out;
}

/// |super/sub| as an exact integer; nullopt encodes an infinite quotient.
inline std::optional<Int> lattice_index(const IntegerLattice& sub,
                                        const IntegerLattice& super) {
    ElementaryDivisors q = quotient_torsion(sub, super);
    if (q.free_rank > 0) return std::nullopt;
    return q.torsion_order();
}

/// Incrementally built HNF span: candidates are reduced against the current
/// basis and batched, so levels with thousands of spanning products stay
/// cheap.
class EchelonBuilder {
public:
    explicit EchelonBuilder(long ambient) : ambient_(ambient) {}

    void add(Vec v) {
        if (static_cast<long>(v.size()) != ambient_)
            throw input_error("EchelonBuilder: vector length mismatch");
        reduce_against_basis(v);
        if (detail::is_zero_vec(v)) return;
        pending_.push_back(std::move(v));
        if (pending_.size() >= 48) flush();
    }

    IntegerLattice take() {
        flush();
        return IntegerLattice(ambient_, basis_);
    }

private:
    void reduce_against_basis(Vec& v) const {
        for (size_t i = 0; i < basis_.size(); ++i) {
            if (v[pivots_[i]] == 0) continue;
            Int q = fdiv(v[pivots_[i]], basis_[i][pivots_[i]]);
            detail::sub_scaled(v, basis_[i], q);
        }
    }
    void flush() {
        if (pending_.empty()) return;
        Matrix all = std::move(basis_);
        for (auto& v : pending_) all.push_back(std::move(v));
        pending_.clear();
        basis_ = detail::hnf_rows(std::move(all));
        pivots_ = detail::pivot_columns(basis_);
    }

    long ambient_;
    Matrix basis_;
    std::vector<size_t> pivots_;
    Matrix pending_;
};

}  // namespace kgamma
