#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kgamma/chern.hpp"
#include "support/oracles.hpp"

using namespace kgamma;

namespace {

TruncPoly mono(const RingSpec& s, Exponents a, long c = 1) {
    return TruncPoly::monomial(s, a, Int(c));
}

TruncPoly chern(const KGenerator& g, const RingSpec& s, int j) {
    auto series = chern_series(g, s, s.dim());
    return j < static_cast<int>(series.size()) ? series[j] : TruncPoly(s);
}

KGenerator line(long m, Exponents a) { return KGenerator{Int(m), {std::move(a)}}; }

}  // namespace

TEST_CASE("first Chern classes") {
    RingSpec s({2, 2});
    SUBCASE("c1(2x1) = 2y1") {
        CHECK(to_string(chern(line(2, {1, 0}), s, 1)) == "2*y1");
    }
    SUBCASE("c1 equals the generator minus its rank") {
        MonomialBasis basis(s);
        KGenerator g{Int(3), {{1, 0}, {0, 1}}};
        TruncPoly c1 = chern(g, s, 1);
        TruncPoly diff = g.to_poly(s) - TruncPoly(s, g.rank());
        CHECK(c1 == diff);
    }
}

TEST_CASE("gamma_2(3x - 3) = 3y^2 at r=3") {
    RingSpec s({3});
    CHECK(to_string(chern(line(3, {1}), s, 2)) == "3*y1^2");
}

TEST_CASE("c2(2(x1+x2)) = 4 y1 y2") {
    RingSpec s({2, 2, 2, 2});
    KGenerator g{Int(2), {{1, 0, 0, 0}, {0, 1, 0, 0}}};
    CHECK(chern(g, s, 2) == mono(s, {1, 1, 0, 0}, 4));
    CHECK(chern(g, s, 3).is_zero());
    CHECK(chern(g, s, 4).is_zero());
}

TEST_CASE("powers of c1(x12)") {
    RingSpec s({2, 2, 2, 2});
    TruncPoly c1 = chern(line(1, {1, 1, 0, 0}), s, 1);
    CHECK(c1 * c1 == mono(s, {1, 1, 0, 0}, 2));
    CHECK((c1 * c1 * c1).is_zero());
}

TEST_CASE("Chern table of z = (x1+x2)(x3+x4)") {
    RingSpec s({2, 2, 2, 2});
    KGenerator z{Int(1), {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}}};

    TruncPoly zp = (mono(s, {1, 0, 0, 0}) + mono(s, {0, 1, 0, 0})) *
                   (mono(s, {0, 0, 1, 0}) + mono(s, {0, 0, 0, 1}));
    TruncPoly u = mono(s, {1, 1, 1, 0}) + mono(s, {1, 1, 0, 1});
    TruncPoly v = mono(s, {1, 0, 1, 1}) + mono(s, {0, 1, 1, 1});
    TruncPoly y12 = mono(s, {1, 1, 0, 0});
    TruncPoly y34 = mono(s, {0, 0, 1, 1});
    TruncPoly y1234 = mono(s, {1, 1, 1, 1});
    TruncPoly sum_y = mono(s, {1, 0, 0, 0}) + mono(s, {0, 1, 0, 0}) +
                      mono(s, {0, 0, 1, 0}) + mono(s, {0, 0, 0, 1});

    CHECK(chern(z, s, 1) == sum_y * 2 + zp);
    CHECK(chern(z, s, 2) == y1234 * 2 + zp * 3 + (u + v + y12 + y34) * 4);
    CHECK(chern(z, s, 3) == (u + v + y1234 * 3) * 4);
    CHECK(chern(z, s, 4) == y1234 * 2);

    SUBCASE("doubling: c2(2z) = 8y1234 + 14z' + 16(u+v+y12+y34)") {
        KGenerator z2 = z;
        z2.multiplier = 2;
        CHECK(chern(z2, s, 2) == y1234 * 8 + zp * 14 + (u + v + y12 + y34) * 16);
        CHECK(chern(z2, s, 2) == chern(z, s, 1) * chern(z, s, 1) + chern(z, s, 2) * 2);
    }
}

TEST_CASE("Chern table of 2w, w = x12(x3+x4)") {
    RingSpec s({2, 2, 2, 2});
    KGenerator w2{Int(2), {{1, 1, 1, 0}, {1, 1, 0, 1}}};

    TruncPoly u = mono(s, {1, 1, 1, 0}) + mono(s, {1, 1, 0, 1});
    TruncPoly v = mono(s, {1, 0, 1, 1}) + mono(s, {0, 1, 1, 1});
    TruncPoly y1234 = mono(s, {1, 1, 1, 1});

    TruncPoly c2 = mono(s, {1, 1, 1, 1}, 8) + u * 9 + v * 4 + mono(s, {1, 1, 0, 0}, 6) +
                   mono(s, {1, 0, 1, 0}, 3) + mono(s, {0, 1, 1, 0}, 3) +
                   mono(s, {1, 0, 0, 1}, 3) + mono(s, {0, 1, 0, 1}, 3) +
                   mono(s, {0, 0, 1, 1}, 2);
    CHECK(chern(w2, s, 2) == c2 * 2);
    CHECK(chern(w2, s, 3) == (y1234 * 10 + u * 3 + v * 2) * 4);
    CHECK(chern(w2, s, 4) == y1234 * 8);
}

TEST_CASE("coefficient tables for the Severi-Brauer third Chern classes") {
    RingSpec s({3, 3, 3});
    // c3 of 3x^a for the eight exponent patterns, in order
    std::vector<Exponents> pattern = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}, {2, 2, 1},
                                      {2, 1, 2}, {1, 2, 2}, {2, 2, 2}, {1, 1, 1}};
    std::vector<long> beta_prime_expected = {66, 30, 30, 132, 132, 60, 264, 15};
    std::vector<long> beta_expected = {12, 12, 12, 24, 24, 24, 48, 6};
    std::vector<Int> b1, b2, b3, beta;
    for (size_t k = 0; k < pattern.size(); ++k) {
        TruncPoly c3 = chern(line(3, pattern[k]), s, 3);
        b1.push_back(c3.coefficient_of({2, 1, 1}));
        b2.push_back(c3.coefficient_of({1, 2, 1}));
        b3.push_back(c3.coefficient_of({1, 1, 2}));
        beta.push_back(c3.coefficient_of({1, 1, 1}));
        CHECK(b1.back() == beta_prime_expected[k]);
        CHECK(beta.back() == beta_expected[k]);
    }
    // pairwise differences divisible by 9, the workhorse of the
    // independence arguments for the order-3 classes
    for (size_t k = 0; k < pattern.size(); ++k) {
        CHECK(divisible(b1[k] - b2[k], Int(9)));
        CHECK(divisible(b1[k] - b3[k], Int(9)));
        CHECK(divisible(b2[k] - b3[k], Int(9)));
        CHECK(divisible(beta[k] - b1[k], Int(9)));
        CHECK(divisible(beta[k] - b2[k], Int(9)));
        CHECK(divisible(beta[k] - b3[k], Int(9)));
    }
}

TEST_CASE("binomial law: c_j(m*L) = C(m,j) z^j") {
    RingSpec s({7, 3});
    for (int m = 1; m <= 8; ++m) {
        for (const Exponents& a : {Exponents{1, 0}, Exponents{1, 1}, Exponents{2, 1}}) {
            TruncPoly z = expand_line_bundle(s, a);
            KGenerator g = line(m, a);
            for (int j = 1; j <= std::min(m, 6); ++j) {
                CHECK(chern(g, s, j) == pow(z, j) * binomial(m, j));
            }
        }
    }
}

TEST_CASE("atoms respect rank and filtration degree") {
    RingSpec s({3, 3});
    KGenerator g{Int(3), {{1, 0}}};
    auto atoms = chern_classes(g, s);
    CHECK(atoms.size() == 3);  // rank 3 < dim 4
    for (const auto& atom : atoms) {
        if (!atom.value.is_zero()) CHECK(atom.value.min_total_degree() >= atom.degree);
    }

    // random generators: min degree of c_j is at least j
    RingSpec s4({2, 2, 2, 2});
    for (int it = 0; it < 30; ++it) {
        KGenerator g2;
        g2.multiplier = oracle::rand_int(1, 4);
        int orbit_size = oracle::rand_int(1, 3);
        for (int k = 0; k < orbit_size; ++k) {
            Exponents a(4);
            for (auto& x : a) x = oracle::rand_int(0, 1);
            g2.orbit.push_back(a);
        }
        for (const auto& atom : chern_classes(g2, s4)) {
            if (!atom.value.is_zero()) CHECK(atom.value.min_total_degree() >= atom.degree);
        }
    }
}

TEST_CASE("whitney multiplicativity") {
    RingSpec s({2, 2});
    SUBCASE("c(x1 + x2) = (1+y1 t)(1+y2 t)") {
        CHECK(whitney_check(line(1, {1, 0}), line(1, {0, 1}), s));
    }
    SUBCASE("doubled line bundles: c2 of the union is 4 y1 y2") {
        KGenerator g1 = line(2, {1, 0}), g2 = line(2, {0, 1});
        CHECK(whitney_check(g1, g2, s));
        KGenerator combined{Int(2), {{1, 0}, {0, 1}}};
        CHECK(chern(combined, s, 2) == mono(s, {1, 1}, 4));
    }
    SUBCASE("random orbit pairs at D <= 27") {
        RingSpec s3({3, 3, 3});
        for (int it = 0; it < 40; ++it) {
            auto rnd = [&] {
                KGenerator g;
                g.multiplier = oracle::rand_int(1, 4);
                int k = oracle::rand_int(1, 3);
                for (int i = 0; i < k; ++i) {
                    Exponents a(3);
                    for (auto& x : a) x = oracle::rand_int(0, 2);
                    g.orbit.push_back(a);
                }
                return g;
            };
            CHECK(whitney_check(rnd(), rnd(), s3));
        }
    }
}

TEST_CASE("negative multipliers are rejected") {
    RingSpec s({2, 2});
    KGenerator g{Int(-2), {{1, 0}}};
    CHECK_THROWS_AS(chern_series(g, s, 2), input_error);
}
