#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berklab/measures.hpp"
#include "test_util.hpp"

using namespace berklab;
using namespace berklab::testutil;

namespace {

const FieldPtr Q3 = Field::padic(3);
const FieldPtr F2T = Field::laurent(2, "t");

Coeff q3(long num, long den = 1) { return Coeff::from_mpq(Q3, mpq_class(num, den)); }
TypeIIPoint disk(long a, long m) { return TypeIIPoint(q3(a), mpq_class(m)); }

RationalMap zsq() {
    return RationalMap(Form(Q3, {q3(0), q3(0), q3(1)}), Form(Q3, {q3(1), q3(0), q3(0)}));
}
RationalMap zsq_third() {
    return RationalMap::from_fraction(Poly(Q3, {q3(1, 3), q3(0), q3(1)}),
                                      Poly::constant(Q3, q3(1)));
}
RationalMap frobplus() {
    return RationalMap::from_fraction(
        Poly(F2T, {Coeff::zero(F2T), Coeff::one(F2T), Coeff::one(F2T)}),
        Poly::constant(F2T, Coeff::one(F2T)));
}
RationalMap identity_map(const FieldPtr& f) {
    return RationalMap(Form(f, {Coeff::zero(f), Coeff::one(f)}),
                       Form(f, {Coeff::one(f), Coeff::zero(f)}));
}

} // namespace

TEST_CASE("divisor of f^n = g") {
    RationalMap f = zsq(), g = identity_map(Q3);
    DivisorPoly d1 = divisor_poly(f, g, 1);
    CHECK(d1.total_degree == 3); // 2 + 1
    CHECK(d1.infinity_multiplicity == 1);
    CHECK(d1.z_sec == Poly(Q3, {q3(0), q3(-1), q3(1)})); // z^2 - z

    CHECK(divisor_poly(f, g, 2).total_degree == 5); // 4 + 1

    CHECK_THROWS_AS(divisor_poly(f, zsq(), 1), IdenticallyEqual);
}

TEST_CASE("divisor retraction: frozen cases") {
    RationalMap f = zsq(), g = identity_map(Q3);
    FiniteTree tree = FiniteTree::from_points({TypeIIPoint::gauss(Q3), disk(0, 1), disk(1, 1)});
    TreeMeasure m = retract_divisor(divisor_poly(f, g, 1), tree);
    CHECK(m.total() == 3);
    CHECK(m.mass_at(disk(0, 1)) == 1);  // the root z = 0
    CHECK(m.mass_at(disk(1, 1)) == 1);  // the root z = 1
    CHECK(m.mass_at(TypeIIPoint::gauss(Q3)) == 1); // the solution at infinity

    // every root of z^2 + 1/3 = z lies at valuation -1/2, outside the unit
    // tree: all mass lands on the tree root
    TreeMeasure m2 = retract_divisor(divisor_poly(zsq_third(), g, 1),
                                     FiniteTree::standard_tree(Q3, 2));
    CHECK(m2.mass_at(TypeIIPoint::gauss(Q3)) == 3);
    CHECK(m2.atoms().size() == 1);
}

TEST_CASE("divisor retraction: refinement consistency") {
    std::mt19937 rng(12021);
    RationalMap g = identity_map(Q3);
    FiniteTree fine = FiniteTree::standard_tree(Q3, 2);
    FiniteTree coarse = FiniteTree::standard_tree(Q3, 1);
    for (RationalMap f : {zsq(), zsq_third(),
                          RationalMap::from_fraction(Poly(Q3, {q3(3), q3(1), q3(3)}),
                                                     Poly::parse(Q3, {"1", "1"}))}) {
        for (unsigned n = 1; n <= 3; ++n) {
            DivisorPoly d = divisor_poly(f, g, n);
            TreeMeasure direct = retract_divisor(d, coarse);
            TreeMeasure refined = retract_divisor(d, fine);
            TreeMeasure pushed(coarse, refined.total());
            for (const auto& a : refined.atoms())
                pushed.add_mass(coarse.retract(a.point), a.mass);
            pushed.validate();
            CHECK(pushed.same_support_and_masses(direct));
        }
    }
}

TEST_CASE("pullback measures") {
    RationalMap f = zsq();
    FiniteTree tree = FiniteTree::standard_tree(Q3, 1);

    // preimages of 1 under z^4: the four fourth roots of unity; 1 and -1 are
    // rational residues, the other two reduce outside F_3
    TreeMeasure m = mu_pullback(f, ProjPoint::affine(q3(1)), 2, tree);
    CHECK(m.total() == 1);
    CHECK(m.mass_at(disk(1, 1)) == mpq_class(1, 4));
    CHECK(m.mass_at(disk(2, 1)) == mpq_class(1, 4));
    CHECK(m.mass_at(TypeIIPoint::gauss(Q3)) == mpq_class(1, 2));
    CHECK(m.mass_at(disk(0, 1)) == 0);

    // n = 0 is the retracted Dirac mass
    TreeMeasure m0 = mu_pullback(f, ProjPoint::affine(q3(1)), 0, tree);
    CHECK(m0.mass_at(disk(1, 1)) == 1);
    CHECK(m0.atoms().size() == 1);

    CHECK_THROWS_AS(mu_pullback(f, ProjPoint::affine(q3(0)), 3, tree), ExceptionalBasePoint);
    CHECK_THROWS_AS(mu_pullback(f, ProjPoint::infinity(Q3), 3, tree), ExceptionalBasePoint);

    // masses nonnegative, total exactly one
    for (unsigned n = 1; n <= 6; ++n) {
        TreeMeasure mn = mu_pullback(zsq_third(), ProjPoint::affine(q3(1)), n, tree);
        CHECK(mn.total() == 1);
        for (const auto& a : mn.atoms()) CHECK(a.mass >= 0);
    }
}

TEST_CASE("classical preimage counting matches the degree") {
    std::mt19937 rng(640);
    RationalMap g = identity_map(Q3);
    for (RationalMap f : {zsq(), zsq_third(),
                          RationalMap::from_fraction(Poly(Q3, {q3(1), q3(1), q3(9)}),
                                                     Poly::parse(Q3, {"3", "1"}))}) {
        for (int it = 0; it < 25; ++it) {
            // the fiber divisor of one more pullback has total d^{n+1}:
            // every classical point has d preimages with multiplicity
            Coeff a = random_coeff(rng, Q3);
            Form w = f.lift0().scaled(Coeff::one(Q3)) - f.lift1().scaled(a);
            Poly sec = w.z_section();
            unsigned long finite =
                sec.degree() < 1 ? 0 : count_roots_in_disk(sec, q3(0), std::nullopt);
            unsigned long at_inf = static_cast<unsigned long>(f.degree() - sec.degree());
            CHECK(finite + at_inf == static_cast<unsigned long>(f.degree()));
        }
    }
    // iterated pullbacks keep total mass 1 after normalization
    FiniteTree tree = FiniteTree::standard_tree(Q3, 1);
    for (unsigned n = 0; n <= 4; ++n) {
        TreeMeasure m = mu_pullback(zsq(), ProjPoint::affine(q3(1)), n + 1, tree);
        m.validate();
        CHECK(m.total() == 1);
    }
}

TEST_CASE("good reduction: pullbacks and green measure converge to the Gauss mass") {
    RationalMap f = zsq();
    FiniteTree tree = FiniteTree::standard_tree(Q3, 1);
    TreeMeasure gauss = TreeMeasure::dirac(tree, TypeIIPoint::gauss(Q3));
    mpq_class prev;
    for (unsigned n = 1; n <= 5; ++n) {
        // the 2^n-th roots of unity reduce injectively, so only 1 and -1
        // land in rational residue disks: tv = 2 / 2^n, halving with n
        TreeMeasure m = mu_pullback(f, ProjPoint::affine(q3(1)), n, tree);
        mpq_class tv = tv_distance(m, gauss);
        mpz_class dn;
        mpz_ui_pow_ui(dn.get_mpz_t(), 2, n);
        CHECK(tv == mpq_class(2) / mpq_class(dn));
        if (n > 1) CHECK(tv < prev);
        prev = tv;
    }
    CHECK(tv_distance(mu_green(f, tree, mpq_class(1, 100)), gauss) == 0);
}

TEST_CASE("green-function measure") {
    FiniteTree tree = FiniteTree::standard_tree(Q3, 2);
    // good reduction: the equilibrium measure is the Dirac mass at Gauss
    TreeMeasure m = mu_green(zsq(), tree, mpq_class(1, 100));
    CHECK(m.total() == 1);
    CHECK(m.mass_at(TypeIIPoint::gauss(Q3)) == 1);
    CHECK(m.atoms().size() == 1);

    // single-vertex tree: everything retracts to the vertex
    FiniteTree point_tree = FiniteTree::from_points({TypeIIPoint::gauss(Q3)});
    TreeMeasure mp = mu_green(zsq_third(), point_tree, mpq_class(1, 100));
    CHECK(mp.mass_at(TypeIIPoint::gauss(Q3)) == 1);

    // cross-oracle: Green-measure vs deep pullback
    TreeMeasure mg = mu_green(zsq_third(), tree, mpq_class(1, 20));
    TreeMeasure mpb = mu_pullback(zsq_third(), ProjPoint::affine(q3(1)), 10, tree);
    CHECK(tv_distance(mg, mpb) == 0);
    CHECK(mg.mass_at(TypeIIPoint::gauss(Q3)) == 1);
}

TEST_CASE("total variation distance") {
    FiniteTree tree = FiniteTree::standard_tree(Q3, 1);
    TreeMeasure d0 = TreeMeasure::dirac(tree, disk(0, 1));
    TreeMeasure d1 = TreeMeasure::dirac(tree, disk(1, 1));
    CHECK(tv_distance(d0, d0) == 0);
    CHECK(tv_distance(d0, d1) == 1);
    CHECK(tv_distance(d0, d1) == tv_distance(d1, d0));

    TreeMeasure mixed(tree, mpq_class(1));
    mixed.add_mass(disk(0, 1), mpq_class(1, 3));
    mixed.add_mass(disk(1, 1), mpq_class(2, 3));
    CHECK(tv_distance(d0, mixed) == mpq_class(2, 3));

    FiniteTree other = FiniteTree::standard_tree(Q3, 2);
    CHECK_THROWS_AS(tv_distance(d0, TreeMeasure::dirac(other, disk(0, 1))), TreeMismatch);
}

TEST_CASE("moving-target distance table: contracting case") {
    RationalMap f = zsq_third(), g = identity_map(Q3);
    FiniteTree tree = FiniteTree::standard_tree(Q3, 2);
    EquidistOptions opts;
    opts.n_from = 1;
    opts.n_to = 6;
    opts.pullback_n = 8;
    EquidistReport rep = equidist_experiment(f, g, tree, opts);
    CHECK(rep.makes_claim); // no conjugation with good reduction found
    CHECK_FALSE(rep.hypothesis.found);
    REQUIRE(rep.rows.size() == 6);
    for (const auto& r : rep.rows) {
        // both the divisor retraction and the reference concentrate at Gauss
        CHECK(r.tv == 0);
    }
    CHECK(rep.rows[0].degree == 3);
    CHECK(rep.rows[5].degree == 65);
}

TEST_CASE("moving-target distance table: good-reduction contrast") {
    RationalMap f = frobplus(), g = identity_map(F2T);
    FiniteTree tree = FiniteTree::standard_tree(F2T, 2);
    EquidistOptions opts;
    opts.n_from = 1;
    opts.n_to = 8;
    opts.mu_ref = MuRefKind::CanonicalPoint;
    opts.pgr_denom = 1;
    opts.threads = 2;
    EquidistReport rep = equidist_experiment(f, g, tree, opts);
    CHECK(rep.hypothesis.found); // good reduction at the Gauss point itself
    CHECK_FALSE(rep.makes_claim);
    REQUIRE(rep.rows.size() == 8);
    // the additive structure of z + z^2 in characteristic 2 makes the mass
    // at z = 0 pulse with the binomial parity of the iterate
    std::vector<mpq_class> expected = {
        mpq_class(2, 3),   mpq_class(4, 5),   mpq_class(2, 9),  mpq_class(16, 17),
        mpq_class(2, 33),  mpq_class(4, 65),  mpq_class(2, 129), mpq_class(256, 257)};
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(rep.rows[i].tv == expected[i]);
    }

    // empty range yields an empty table
    EquidistOptions none = opts;
    none.n_from = 3;
    none.n_to = 2;
    CHECK(equidist_experiment(f, g, tree, none).rows.empty());
}

TEST_CASE("reference measure falls back when the base point is not certified") {
    RationalMap f = zsq(), g = identity_map(Q3);
    FiniteTree tree = FiniteTree::standard_tree(Q3, 1);
    EquidistOptions opts;
    opts.n_to = 2;
    opts.pullback_base = "0"; // totally invariant under z^2: witness fails
    EquidistReport rep = equidist_experiment(f, g, tree, opts);
    CHECK(rep.mu_ref_description.find("not witness-certified") != std::string::npos);
    CHECK(rep.rows.size() == 2);

    // in characteristic p the fallback is refused; the squaring map is the
    // Frobenius there, whose backward orbit of 1 is just {1}
    RationalMap fc = RationalMap::from_fraction(
        Poly(F2T, {Coeff::zero(F2T), Coeff::zero(F2T), Coeff::one(F2T)}),
        Poly::constant(F2T, Coeff::one(F2T)));
    RationalMap gc = identity_map(F2T);
    CHECK_FALSE(non_exceptional_witness(fc, ProjPoint::affine(Coeff::one(F2T))));
    EquidistOptions bad;
    bad.n_to = 2;
    bad.pgr_denom = 1;
    bad.pullback_base = "1";
    FiniteTree tc = FiniteTree::standard_tree(F2T, 1);
    CHECK_THROWS_AS(equidist_experiment(fc, gc, tc, bad), ExceptionalBasePoint);
}
