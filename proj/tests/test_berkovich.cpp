#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berklab/tree.hpp"
#include "test_util.hpp"

using namespace berklab;
using namespace berklab::testutil;

namespace {

const FieldPtr Q3 = Field::padic(3);

Coeff q3(long num, long den = 1) { return Coeff::from_mpq(Q3, mpq_class(num, den)); }
TypeIIPoint disk(long a, long mn, long md = 1) {
    return TypeIIPoint(q3(a), mpq_class(mn, md));
}

} // namespace

TEST_CASE("gauss seminorm: frozen cases") {
    Poly z = Poly::variable(Q3);
    CHECK(gauss_seminorm(z, TypeIIPoint::gauss(Q3)) == Val(mpq_class(0)));
    CHECK(gauss_seminorm(z, disk(0, 1)) == Val(mpq_class(1)));
    Poly p(Q3, {q3(1), q3(0), q3(3)}); // 3z^2 + 1
    CHECK(gauss_seminorm(p, TypeIIPoint::gauss(Q3)) == Val(mpq_class(0)));
    CHECK(gauss_seminorm(Poly(Q3), disk(0, 1)).is_infinity());
}

TEST_CASE("gauss seminorm is multiplicative and matches min valuation at Gauss") {
    std::mt19937 rng(101);
    const FieldPtr F2T = Field::laurent(2);
    for (const FieldPtr& f : {Q3, F2T}) {
        for (int it = 0; it < 250; ++it) {
            Poly a = random_poly(rng, f, 5), b = random_poly(rng, f, 5);
            TypeIIPoint S(random_coeff(rng, f), mpq_class(static_cast<long>(rng() % 7) - 3,
                                                          static_cast<long>(rng() % 2) + 1));
            CHECK(gauss_seminorm(a * b, S) == gauss_seminorm(a, S) + gauss_seminorm(b, S));
            Val at_gauss = gauss_seminorm(a, TypeIIPoint::gauss(f));
            Val minval = Val::infinity();
            for (int i = 0; i <= a.degree(); ++i)
                minval = min(minval, a.coeff(static_cast<std::size_t>(i)).valuation());
            CHECK(at_gauss == minval);
        }
    }
}

TEST_CASE("join: frozen cases") {
    CHECK(join(disk(0, 2), disk(1, 2)) == TypeIIPoint::gauss(Q3));
    CHECK(join(disk(0, 2), disk(3, 2)) == disk(0, 1));
    CHECK(join(disk(2, 5), TypeIIPoint::gauss(Q3)) == TypeIIPoint::gauss(Q3));
    TypeIIPoint s = disk(7, 3);
    CHECK(join(s, s) == s);
}

TEST_CASE("join is commutative and associative on random triples") {
    std::mt19937 rng(2024);
    for (int it = 0; it < 300; ++it) {
        TypeIIPoint a(random_coeff(rng, Q3), mpq_class(static_cast<long>(rng() % 9) - 3));
        TypeIIPoint b(random_coeff(rng, Q3), mpq_class(static_cast<long>(rng() % 9) - 3));
        TypeIIPoint c(random_coeff(rng, Q3), mpq_class(static_cast<long>(rng() % 9) - 3));
        CHECK(join(a, b) == join(b, a));
        CHECK(join(join(a, b), c) == join(a, join(b, c)));
        CHECK(a.leq(join(a, b)));
    }
}

TEST_CASE("chordal metric") {
    CHECK(chordal(ProjPoint::affine(q3(1)), ProjPoint::affine(q3(0))) == Val(mpq_class(0)));
    CHECK(chordal(ProjPoint::affine(q3(3)), ProjPoint::affine(q3(0))) == Val(mpq_class(1)));
    CHECK(chordal(ProjPoint::affine(q3(5)), ProjPoint::affine(q3(5))).is_infinity());
    CHECK_THROWS_AS(ProjPoint(q3(0), q3(0)), InvalidProjectivePoint);

    std::mt19937 rng(31);
    for (int it = 0; it < 300; ++it) {
        ProjPoint a(random_coeff(rng, Q3), random_coeff(rng, Q3, false));
        ProjPoint b(random_coeff(rng, Q3), random_coeff(rng, Q3, false));
        Val d = chordal(a, b);
        CHECK(d >= Val(mpq_class(0))); // [z,w] <= 1
        CHECK(d == chordal(b, a));
        // scaling either lift leaves the value unchanged
        Coeff s = random_coeff(rng, Q3, false);
        CHECK(chordal(ProjPoint(a.z0() * s, a.z1() * s), b) == d);
    }
}

TEST_CASE("hyperbolic distance") {
    CHECK(hyperbolic_distance(TypeIIPoint::gauss(Q3), disk(0, 2)) == mpq_class(2));
    CHECK(hyperbolic_distance(disk(0, 1), disk(3, 2)) == mpq_class(1));
    CHECK(hyperbolic_distance(disk(5, 4), disk(5, 4)) == mpq_class(0));

    // path additivity d(S,S'') = d(S,S') + d(S',S'') for S' on [S,S'']
    std::mt19937 rng(55);
    for (int it = 0; it < 200; ++it) {
        long a = static_cast<long>(rng() % 81);
        mpq_class m1(static_cast<long>(rng() % 5));
        mpq_class m2 = m1 + mpq_class(static_cast<long>(rng() % 7), 2);
        mpq_class m3 = m2 + mpq_class(static_cast<long>(rng() % 7), 2);
        TypeIIPoint s1(q3(a), m1), s2(q3(a), m2), s3(q3(a), m3);
        CHECK(hyperbolic_distance(s1, s3) ==
              hyperbolic_distance(s1, s2) + hyperbolic_distance(s2, s3));
    }
}

TEST_CASE("inverted chart conversion") {
    // D(0; 1)@inv contains w=0, so it is the z-disk of radius 3^{+1}
    TypeIIPoint s = TypeIIPoint::from_inverted(q3(0), mpq_class(1));
    CHECK(s == disk(0, -1));
    // D(3; 1)@inv excludes w=0: z-disk around 1/3
    TypeIIPoint s2 = TypeIIPoint::from_inverted(q3(3), mpq_class(1));
    CHECK(s2 == TypeIIPoint(q3(1, 3), mpq_class(-1)));
    // round-trip through text, including the @inv suffix
    CHECK(TypeIIPoint::parse(Q3, "D(3; 1)@inv") == s2);
    CHECK(TypeIIPoint::parse(Q3, s.str()) == s);
    CHECK(TypeIIPoint::parse(Q3, "D(1/3; -1/2)").exponent() == mpq_class(-1, 2));
}

TEST_CASE("point equality agrees with seminorm evaluation") {
    std::mt19937 rng(606);
    Poly z = Poly::variable(Q3);
    for (int it = 0; it < 200; ++it) {
        // same disk written with a different center
        long m = static_cast<long>(rng() % 4);
        long step = 1;
        for (long i = 0; i < m; ++i) step *= 3;
        long a = static_cast<long>(rng() % 81) - 40;
        TypeIIPoint s1(q3(a), mpq_class(m));
        TypeIIPoint s2(q3(a + step * (static_cast<long>(rng() % 5))), mpq_class(m));
        CHECK(s1 == s2);
        Poly z_shift(Q3, {-s2.center(), q3(1)});
        CHECK(gauss_seminorm(z, s1) == gauss_seminorm(z, s2));
        CHECK(gauss_seminorm(z_shift, s1) == gauss_seminorm(z_shift, s2));
        // different radius: the shifted coordinate separates the points
        TypeIIPoint s3(s2.center(), mpq_class(m + 1));
        CHECK(s1 != s3);
        CHECK(gauss_seminorm(z_shift, s1) != gauss_seminorm(z_shift, s3));
    }
}

TEST_CASE("directions at a point") {
    TypeIIPoint g = TypeIIPoint::gauss(Q3);
    Direction up1(g, disk(0, -2)), up2(g, TypeIIPoint(q3(1, 3), mpq_class(5)));
    CHECK(up1 == up2); // both leave through the infinity branch
    Direction d0(g, disk(0, 1)), d3(g, disk(3, 2)), d1(g, disk(1, 1));
    CHECK(d0 == d3); // 3 = 0 mod the maximal ideal
    CHECK(!(d0 == d1));
    Direction c0(g, ProjPoint::affine(q3(0)));
    CHECK(c0 == d0);
    CHECK(Direction(g, ProjPoint::infinity(Q3)) == up1);
}

TEST_CASE("standard tree structure") {
    FiniteTree t = FiniteTree::standard_tree(Q3, 2);
    CHECK(t.size() == 13); // 1 + 3 + 9
    CHECK(t.vertex(t.root()) == TypeIIPoint::gauss(Q3));
    FiniteTree ti = FiniteTree::standard_tree(Q3, 1, true);
    CHECK(ti.size() == 5);
    CHECK(ti.vertex(ti.root()) == disk(0, -1));
    std::size_t g = ti.find(TypeIIPoint::gauss(Q3));
    REQUIRE(g != FiniteTree::npos);
    CHECK(ti.parent(g) == ti.root());
    CHECK(ti.edge_length(g) == mpq_class(1));
    CHECK(ti.children(g).size() == 3);
}

TEST_CASE("join closure adds wedge vertices") {
    FiniteTree t = FiniteTree::from_points({disk(0, 2), disk(3, 2)});
    CHECK(t.size() == 3); // the join D(0;1) is added
    CHECK(t.vertex(t.root()) == disk(0, 1));
}

TEST_CASE("retraction: frozen cases") {
    FiniteTree t = FiniteTree::from_points({TypeIIPoint::gauss(Q3), disk(0, 1)});
    CHECK(t.retract(disk(0, 1)) == disk(0, 1));                    // already a vertex
    CHECK(t.retract(ProjPoint::affine(q3(0))) == disk(0, 1));      // deepest disk wins
    CHECK(t.retract(ProjPoint::affine(q3(1))) == TypeIIPoint::gauss(Q3));
    CHECK(t.retract(ProjPoint::infinity(Q3)) == TypeIIPoint::gauss(Q3));
    // a point hanging off mid-edge retracts to an edge-interior point
    FiniteTree t2 = FiniteTree::from_points({TypeIIPoint::gauss(Q3), disk(0, 2)});
    CHECK(t2.retract(disk(3, 2)) == disk(0, 1));
    // from above the root
    CHECK(t2.retract(disk(0, -4)) == TypeIIPoint::gauss(Q3));
}

TEST_CASE("retraction commutes with tree refinement") {
    std::mt19937 rng(808);
    for (int it = 0; it < 100; ++it) {
        FiniteTree coarse = FiniteTree::standard_tree(Q3, 1);
        FiniteTree fine = FiniteTree::standard_tree(Q3, 2); // refines coarse
        TypeIIPoint s(q3(static_cast<long>(rng() % 200) - 100,
                         static_cast<long>(rng() % 3) + 1),
                      mpq_class(static_cast<long>(rng() % 13) - 4, 2));
        CHECK(coarse.retract(fine.retract(s)) == coarse.retract(s));
    }
}
