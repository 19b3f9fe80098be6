#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "berklab/dynamics.hpp"
#include "test_util.hpp"

using namespace berklab;
using namespace berklab::testutil;

namespace {

const FieldPtr Q3 = Field::padic(3);
const FieldPtr F2T = Field::laurent(2, "t");

Coeff q3(long num, long den = 1) { return Coeff::from_mpq(Q3, mpq_class(num, den)); }

RationalMap make_map(const FieldPtr& f, const std::vector<std::string>& num,
                     const std::vector<std::string>& den) {
    return RationalMap::from_fraction(Poly::parse(f, num), Poly::parse(f, den));
}

RationalMap zsq() { return make_map(Q3, {"0", "0", "1"}, {"1"}); }            // z^2
RationalMap zsq_third() { return make_map(Q3, {"1/3", "0", "1"}, {"1"}); }    // z^2 + 1/3
RationalMap frobplus() { return make_map(F2T, {"0", "1", "1"}, {"1"}); }      // z + z^2

bool proportional(const Form& a, const Form& b) {
    if (a.degree() != b.degree()) return false;
    // cross-multiply all slot pairs
    for (std::size_t i = 0; i <= static_cast<std::size_t>(a.degree()); ++i)
        for (std::size_t j = 0; j <= static_cast<std::size_t>(a.degree()); ++j)
            if (!(a.coeff(i) * b.coeff(j) - a.coeff(j) * b.coeff(i)).is_zero()) return false;
    return true;
}

bool same_projective_map(const RationalMap& a, const RationalMap& b) {
    Form w = a.lift0() * b.lift1() - a.lift1() * b.lift0();
    return w.is_zero();
}

RationalMap random_small_map(std::mt19937& rng, const FieldPtr& f, int deg) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Coeff> c0, c1;
        for (int i = 0; i <= deg; ++i) {
            c0.push_back(random_coeff(rng, f));
            c1.push_back(random_coeff(rng, f));
        }
        Form f0(f, c0), f1(f, c1);
        if (f0.is_zero() || f1.is_zero()) continue;
        if (resultant_form(f0, f1).is_zero()) continue;
        return RationalMap(f0, f1);
    }
    throw std::logic_error("random_small_map: no nondegenerate sample");
}

} // namespace

TEST_CASE("normalization fixes the lift scalar") {
    // (z^2 + (1/3) w^2, w^2) scales by 3 to (3z^2 + w^2, 3w^2)
    Poly num(Q3, {q3(1, 3), q3(0), q3(1)});
    RationalMap f = RationalMap::from_fraction(num, Poly::constant(Q3, q3(1)));
    CHECK(f.lift0() == Form(Q3, {q3(1), q3(0), q3(3)}));
    CHECK(f.lift1() == Form(Q3, {q3(3), q3(0), q3(0)}));
    CHECK(f.lift_shift() == mpq_class(-1));
    CHECK(f.lift0().min_coeff_valuation() == Val(mpq_class(0)));

    RationalMap g = zsq();
    CHECK(g.lift_shift() == mpq_class(0)); // already normalized

    // scaling both forms changes nothing but the recorded scalar
    Form s0 = f.lift0().scaled(q3(9)), s1 = f.lift1().scaled(q3(9));
    RationalMap fs(s0, s1);
    CHECK(fs.lift0() == f.lift0());
    CHECK(fs.lift_shift() == mpq_class(2));
}

TEST_CASE("compose and iterate") {
    RationalMap f = zsq();
    RationalMap f3 = iterate(f, 3);
    CHECK(f3.degree() == 8);
    CHECK(f3.lift0() == Form::homogenize(Poly::parse(Q3, {"0", "0", "0", "0", "0", "0",
                                                          "0", "0", "1"}),
                                         8));
    CHECK(same_projective_map(iterate(f, 1), f));
    CHECK(iterate(zsq_third(), 4).degree() == 16);
    // identity at n = 0
    CHECK(iterate(f, 0).degree() == 1);
    CHECK(same_projective_map(compose(iterate(f, 0), f), f));

    std::mt19937 rng(4001);
    for (int it = 0; it < 12; ++it) {
        RationalMap h = random_small_map(rng, it % 2 ? Q3 : F2T, 2);
        RationalMap a = iterate(h, 3);
        RationalMap b = compose(iterate(h, 1), iterate(h, 2));
        CHECK(same_projective_map(a, b));
        CHECK(proportional(a.lift0(), b.lift0()));
    }
}

TEST_CASE("iterate accumulates the composition scalar") {
    // reference = the as-given lift (z^2 + (1/3) w^2, w^2): its square is
    // (z^4 + (2/3) z^2 w^2 + (4/9) w^4, w^4) = 3^{-2} * stored pair
    RationalMap f = zsq_third();
    RationalMap f2 = iterate(f, 2);
    CHECK(f.lift_shift() == mpq_class(-1));
    CHECK(f2.lift_shift() == mpq_class(-2));
    CHECK(f2.lift0() == Form(Q3, {q3(4), q3(0), q3(6), q3(0), q3(9)}));
    CHECK(f2.lift1() == Form(Q3, {q3(9), q3(0), q3(0), q3(0), q3(0)}));

    // with the reference reset to the normalized pair (3z^2+w^2, 3w^2), the
    // square's raw composition has min valuation 1
    RationalMap g = f.with_reference_reset();
    CHECK(g.lift_shift() == mpq_class(0));
    CHECK(iterate(g, 2).lift_shift() == mpq_class(1));
}

TEST_CASE("reduction modulo the maximal ideal") {
    ReductionReport r1 = reduce(zsq());
    CHECK(r1.reduced_degree == 2);
    CHECK(r1.cancelled_degree == 0);

    ReductionReport r2 = reduce(frobplus()); // z + z^p over F_p(t), p = 2
    CHECK(r2.reduced_degree == 2);
    CHECK(r2.map_degree == 2);

    ReductionReport r3 = reduce(zsq_third()); // (3z^2+w^2, 3w^2) -> (w^2, 0)
    CHECK(r3.reduced_degree == 0);
    CHECK(r3.cancelled_degree == 2);
}

TEST_CASE("good reduction: frozen cases and the triple agreement") {
    CHECK(good_reduction(zsq()));
    CHECK_FALSE(good_reduction(zsq_third()));
    CHECK(good_reduction(make_map(Q3, {"0", "1", "1"}, {"1"}))); // z + z^2
    CHECK(good_reduction(frobplus()));

    std::mt19937 rng(5150);
    for (const FieldPtr& f : {Q3, F2T}) {
        for (int it = 0; it < 150; ++it) {
            RationalMap h = random_small_map(rng, f, 1 + static_cast<int>(rng() % 2));
            // good_reduction itself asserts deg- and resultant-criteria agree
            bool ok = good_reduction(h);
            ReductionReport r = reduce(h);
            CHECK(ok == (r.reduced_degree == h.degree()));
        }
    }
}

TEST_CASE("conjugation") {
    RationalMap f = zsq();
    CHECK(same_projective_map(conjugate(f, Mobius::identity(Q3)), f));

    // f(z) = z^2/3 becomes z^2 after conjugating by h(z) = z/3
    RationalMap g(Form(Q3, {q3(0), q3(0), q3(1)}), Form(Q3, {q3(3), q3(0), q3(0)}));
    Mobius h(q3(1), q3(0), q3(0), q3(3));
    CHECK(good_reduction(conjugate(g, h)));
    CHECK_FALSE(good_reduction(g));

    std::mt19937 rng(616);
    for (int it = 0; it < 40; ++it) {
        RationalMap m = random_small_map(rng, Q3, 2);
        Coeff a = random_coeff(rng, Q3), b = random_coeff(rng, Q3);
        Coeff c = random_coeff(rng, Q3), d = random_coeff(rng, Q3);
        if ((a * d - b * c).is_zero()) continue;
        Mobius mob(a, b, c, d);
        CHECK(same_projective_map(conjugate(conjugate(m, mob), mob.inverse()), m));
    }

    // unit Mobius matrices preserve the reduced degree
    std::vector<Mobius> units = {Mobius(q3(1), q3(2), q3(1), q3(1)),
                                 Mobius(q3(2), q3(0), q3(0), q3(1)),
                                 Mobius(q3(1), q3(4), q3(0), q3(1))};
    for (const auto& u : units) {
        CHECK(u.det().valuation() == Val(mpq_class(0)));
        for (RationalMap m : {zsq(), zsq_third(), make_map(Q3, {"0", "1", "1"}, {"1"})}) {
            CHECK(reduce(conjugate(m, u)).reduced_degree == reduce(m).reduced_degree);
        }
    }
    CHECK_THROWS_AS(Mobius(q3(1), q3(2), q3(2), q3(4)), SingularMatrix);
}

TEST_CASE("images of type-II points") {
    RationalMap f = zsq();
    TypeIIPoint gauss = TypeIIPoint::gauss(Q3);
    CHECK(map_typeII(f, gauss) == gauss);
    CHECK(map_typeII(f, TypeIIPoint(q3(0), mpq_class(1))) ==
          TypeIIPoint(q3(0), mpq_class(2)));

    // 1/z swaps the disk D(0, 3^-1) with the disk of radius 3
    RationalMap inv = make_map(Q3, {"1"}, {"0", "1"});
    CHECK(map_typeII(inv, TypeIIPoint(q3(0), mpq_class(1))) ==
          TypeIIPoint(q3(0), mpq_class(-1)));

    // a disk containing both a zero and a pole cannot be mapped whole
    RationalMap mixed = make_map(Q3, {"-1", "0", "1"}, {"0", "1"}); // (z^2-1)/z
    CHECK_THROWS_AS(map_typeII(mixed, TypeIIPoint(q3(0), mpq_class(-1))),
                    DiskContainsZeroAndPole);
}

TEST_CASE("type-II images are seminorm-compatible") {
    std::mt19937 rng(2718);
    for (const FieldPtr& f : {Q3, F2T}) {
        int hits = 0;
        for (int it = 0; it < 200 && hits < 60; ++it) {
            RationalMap h = random_small_map(rng, f, 2);
            TypeIIPoint S(random_coeff(rng, f), mpq_class(static_cast<long>(rng() % 5) - 1));
            TypeIIPoint image = S;
            try {
                image = map_typeII(h, S);
            } catch (const DiskContainsZeroAndPole&) {
                continue;
            }
            ++hits;
            Poly p0 = h.lift0().z_section(), p1 = h.lift1().z_section();
            Poly phi = random_poly(rng, f, 3);
            if (phi.degree() < 1) continue;
            // [phi]_{f(S)} = [num(phi o f)]_S - deg(phi) * [den f]_S
            Poly num(f, {Coeff::zero(f)});
            for (int i = 0; i <= phi.degree(); ++i) {
                Poly term = Poly::constant(f, phi.coeff(static_cast<std::size_t>(i)));
                for (int k = 0; k < i; ++k) term = term * p0;
                for (int k = i; k < phi.degree(); ++k) term = term * p1;
                num = num + term;
            }
            Val lhs = gauss_seminorm(phi, image);
            Val rhs = gauss_seminorm(num, S) - gauss_seminorm(p1, S) * phi.degree();
            CHECK(lhs == rhs);
        }
        CHECK(hits > 10);
    }
}

TEST_CASE("good reduction is stable under composition (direct check)") {
    std::mt19937 rng(90210);
    auto random_integral_map = [&](int deg) -> std::optional<RationalMap> {
        std::vector<Coeff> c0, c1;
        for (int i = 0; i <= deg; ++i) {
            c0.push_back(q3(static_cast<long>(rng() % 9)));
            c1.push_back(q3(static_cast<long>(rng() % 9)));
        }
        Form f0(Q3, c0), f1(Q3, c1);
        if (f0.is_zero() || f1.is_zero() || resultant_form(f0, f1).is_zero())
            return std::nullopt;
        return RationalMap(f0, f1);
    };
    int pairs = 0;
    for (int it = 0; it < 600 && pairs < 25; ++it) {
        auto a = random_integral_map(2), b = random_integral_map(2);
        if (!a || !b || !good_reduction(*a) || !good_reduction(*b)) continue;
        ++pairs;
        CHECK(good_reduction(compose(*a, *b)));
    }
    CHECK(pairs > 5);
}

TEST_CASE("exceptional point witness") {
    RationalMap f = zsq();
    CHECK(non_exceptional_witness(f, ProjPoint::affine(q3(1))));
    CHECK_FALSE(non_exceptional_witness(f, ProjPoint::affine(q3(0))));
    CHECK_FALSE(non_exceptional_witness(f, ProjPoint::infinity(Q3)));
    CHECK(non_exceptional_witness(zsq_third(), ProjPoint::affine(q3(1))));
    CHECK(non_exceptional_witness(frobplus(), ProjPoint::affine(Coeff::one(F2T))));
}

TEST_CASE("iterate cache is safe under concurrent mixed access") {
    RationalMap f = zsq_third();
    std::vector<RationalMap> copies{f, f, f, f}; // share one cache
    std::vector<std::thread> pool;
    std::vector<Form> results(8, f.lift0());
    for (unsigned t = 0; t < 8; ++t) {
        pool.emplace_back([&, t]() {
            unsigned n = 2 + t % 4;
            results[t] = iterate(copies[t % copies.size()], n).lift0();
        });
    }
    for (auto& th : pool) th.join();
    for (unsigned t = 0; t < 8; ++t) {
        Form expect = iterate(f, 2 + t % 4).lift0();
        CHECK(results[t] == expect);
    }
}

TEST_CASE("conjugation search") {
    PgrResult r1 = pgr_search(zsq(), 3, 2);
    CHECK(r1.found);
    CHECK(*r1.point == TypeIIPoint::gauss(r1.search_field));
    CHECK(r1.conjugator->is_identity_like());

    // f(z) = z^2/3 has good reduction on the disk of radius 3^{-1}
    RationalMap g(Form(Q3, {q3(0), q3(0), q3(1)}), Form(Q3, {q3(3), q3(0), q3(0)}));
    PgrResult r2 = pgr_search(g, 3, 2);
    CHECK(r2.found);
    CHECK(*r2.point == TypeIIPoint(Coeff::zero(r2.search_field), mpq_class(1)));
    CHECK(good_reduction(conjugate(g.embedded(r2.search_field), *r2.conjugator)));

    PgrResult r3 = pgr_search(zsq_third(), 3, 2);
    CHECK_FALSE(r3.found);
    CHECK(r3.best_objective == mpq_class(1)); // least resultant valuation seen
    CHECK(r3.stats.visited > 10);

    PgrResult r4 = pgr_search(frobplus(), 2, 1);
    CHECK(r4.found);
    CHECK(r4.conjugator->is_identity_like());
}
