#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kgamma/truncring.hpp"
#include "support/oracles.hpp"

using namespace kgamma;

namespace {

TruncPoly line_root(const RingSpec& spec, const Exponents& a) {
    return expand_line_bundle(spec, a);
}

}  // namespace

TEST_CASE("ring spec invariants") {
    RingSpec s({2, 2});
    CHECK(s.vars() == 2);
    CHECK(s.dim() == 2);
    CHECK(s.ambient_rank() == 4);

    RingSpec sb({3, 3, 3});
    CHECK(sb.dim() == 6);
    CHECK(sb.ambient_rank() == 27);

    CHECK_THROWS_AS(RingSpec({2, 1}), input_error);
    CHECK_THROWS_AS(RingSpec(std::vector<int>{}), input_error);
}

TEST_CASE("monomial order is degree-lex with y1 first") {
    MonomialBasis basis(RingSpec({2, 2}));
    REQUIRE(basis.rank() == 4);
    CHECK(basis.order[0] == Exponents{0, 0});
    CHECK(basis.order[1] == Exponents{1, 0});
    CHECK(basis.order[2] == Exponents{0, 1});
    CHECK(basis.order[3] == Exponents{1, 1});
}

TEST_CASE("multiplication with truncation") {
    RingSpec s({2, 2});
    TruncPoly x1 = TruncPoly(s, 1) + TruncPoly::monomial(s, {1, 0});
    TruncPoly x2 = TruncPoly(s, 1) + TruncPoly::monomial(s, {0, 1});

    SUBCASE("(1+y1)(1+y2) - 1 = y1 + y2 + y1y2") {
        TruncPoly p = x1 * x2 - TruncPoly(s, 1);
        CHECK(to_string(p) == "y1 + y2 + y1*y2");
    }
    SUBCASE("y1 * y1 = 0") {
        TruncPoly y1 = TruncPoly::monomial(s, {1, 0});
        CHECK((y1 * y1).is_zero());
    }
    SUBCASE("z^2 = 2 y1 y2 for z = y1 + y2 + y1y2") {
        TruncPoly z = line_root(s, {1, 1});
        CHECK(to_string(z * z) == "2*y1*y2");
    }
    SUBCASE("mismatched specs throw") {
        TruncPoly other(RingSpec({3, 3}), 1);
        CHECK_THROWS_AS((void)(x1 * other), input_error);
    }
}

TEST_CASE("expand_line_bundle examples") {
    SUBCASE("a=(1,1), r=(2,2)") {
        CHECK(to_string(line_root(RingSpec({2, 2}), {1, 1})) == "y1 + y2 + y1*y2");
    }
    SUBCASE("a=(2), r=(3): (1+y)^2 - 1 = 2y + y^2") {
        CHECK(to_string(line_root(RingSpec({3}), {2})) == "2*y1 + y1^2");
    }
    SUBCASE("a=(1,1,1,1), r=(2,2,2,2): 15 square-free terms") {
        RingSpec s({2, 2, 2, 2});
        TruncPoly z = line_root(s, {1, 1, 1, 1});
        CHECK(z.terms().size() == 15);
        CHECK(dense_equal(oracle::dense_line_bundle(s, {1, 1, 1, 1}), z));
    }
    SUBCASE("a=0 gives 0") {
        CHECK(line_root(RingSpec({2, 2}), {0, 0}).is_zero());
    }
    SUBCASE("exponents above the truncation reduce through the quotient") {
        // (1+y)^3 - 1 = 3y + 3y^2 at r=3
        CHECK(to_string(line_root(RingSpec({3}), {3})) == "3*y1 + 3*y1^2");
    }
}

TEST_CASE("coefficient_of") {
    RingSpec s({2, 2});
    TruncPoly p = TruncPoly::monomial(s, {1, 1}, 2) + TruncPoly::monomial(s, {1, 0}, 6);
    CHECK(p.coefficient_of({1, 1}) == 2);
    CHECK(p.coefficient_of({1, 0}) == 6);
    CHECK(p.coefficient_of({0, 1}) == 0);
}

TEST_CASE("min_total_degree") {
    RingSpec s({2, 2});
    CHECK(TruncPoly(s).min_total_degree() == kInfiniteDegree);
    TruncPoly p = TruncPoly::monomial(s, {1, 0}) + TruncPoly::monomial(s, {1, 1});
    CHECK(p.min_total_degree() == 1);
}

TEST_CASE("ring axioms on random triples") {
    for (const auto& spec : {RingSpec({3, 3}), RingSpec({2, 2, 2}), RingSpec({4, 2})}) {
        TruncPoly one(spec, 1);
        for (int it = 0; it < 60; ++it) {
            TruncPoly a = oracle::random_poly(spec, 6, 9);
            TruncPoly b = oracle::random_poly(spec, 6, 9);
            TruncPoly c = oracle::random_poly(spec, 6, 9);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(one * a == a);
        }
    }
}

TEST_CASE("line bundles are multiplicative: (1+z_a)(1+z_b) = 1+z_{a+b}") {
    RingSpec s({3, 2, 4});
    for (int it = 0; it < 40; ++it) {
        Exponents a(3), b(3), ab(3);
        for (int i = 0; i < 3; ++i) {
            a[i] = oracle::rand_int(0, 4);
            b[i] = oracle::rand_int(0, 4);
            ab[i] = a[i] + b[i];
        }
        TruncPoly za = line_root(s, a), zb = line_root(s, b);
        CHECK(za + zb + za * zb == line_root(s, ab));
    }
}

TEST_CASE("degree bound on products") {
    RingSpec s({3, 3});
    for (int it = 0; it < 60; ++it) {
        TruncPoly a = oracle::random_poly(s, 5, 9);
        TruncPoly b = oracle::random_poly(s, 5, 9);
        TruncPoly p = a * b;
        if (!p.is_zero()) {
            CHECK(p.min_total_degree() >= a.min_total_degree() + b.min_total_degree());
        }
        if (a.min_total_degree() != kInfiniteDegree &&
            b.min_total_degree() != kInfiniteDegree &&
            a.min_total_degree() + b.min_total_degree() > s.dim()) {
            CHECK(p.is_zero());
        }
    }
}

TEST_CASE("multiplication agrees with the dense oracle") {
    for (const auto& spec :
         {RingSpec({3, 3, 3, 3}), RingSpec({2, 2, 2, 2}), RingSpec({5, 5}), RingSpec({9})}) {
        REQUIRE(spec.ambient_rank() <= 81);
        for (int it = 0; it < 25; ++it) {
            TruncPoly a = oracle::random_poly(spec, 8, 20);
            TruncPoly b = oracle::random_poly(spec, 8, 20);
            CHECK(dense_equal(oracle::dense_mul(oracle::dense_from(a), oracle::dense_from(b)),
                              a * b));
        }
    }
}

TEST_CASE("canonical rendering") {
    RingSpec s({2, 2, 2});
    TruncPoly p = TruncPoly::monomial(s, {1, 1, 0}, 2) + TruncPoly::monomial(s, {1, 1, 1}, 6);
    CHECK(to_string(p) == "2*y1*y2 + 6*y1*y2*y3");
    CHECK(to_string(TruncPoly(s)) == "0");
    CHECK(to_string(TruncPoly(s, 7)) == "7");

    RingSpec q({2, 3});
    TruncPoly r = TruncPoly::monomial(q, {1, 0}) - TruncPoly::monomial(q, {0, 2}, 3);
    CHECK(to_string(r) == "y1 - 3*y2^2");
    TruncPoly neg = TruncPoly::monomial(q, {0, 1}, -1);
    CHECK(to_string(neg) == "-y2");
}

TEST_CASE("monomial basis coordinates round trip") {
    RingSpec s({2, 3});
    MonomialBasis basis(s);
    for (int it = 0; it < 30; ++it) {
        TruncPoly p = oracle::random_poly(s, 6, 50);
        CHECK(basis.polynomial(basis.coordinates(p)) == p);
    }
}
