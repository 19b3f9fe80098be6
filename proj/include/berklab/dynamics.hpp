#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "berklab/berkovich.hpp"

namespace berklab {

// A projective transformation, acting on points by z -> (az+b)/(cz+d) and
// on lifts by the corresponding linear substitution.
class Mobius {
public:
    Mobius(Coeff a, Coeff b, Coeff c, Coeff d);
    static Mobius identity(const FieldPtr& f);
    // z -> (z - a) / s, the change of coordinates moving D(a, |s|) to the
    // unit disk.
    static Mobius disk_to_unit(const Coeff& a, const Coeff& s);

    const Coeff& a() const { return a_; }
    const Coeff& b() const { return b_; }
    const Coeff& c() const { return c_; }
    const Coeff& d() const { return d_; }
    Coeff det() const { return a_ * d_ - b_ * c_; }
    Mobius inverse() const; // adjugate (projectively the inverse)

    ProjPoint apply(const ProjPoint& z) const;
    bool is_identity_like() const; // proportional to the identity matrix

    std::string str() const;

private:
    Coeff a_, b_, c_, d_;
};

// Reduction of a normalized lift modulo the maximal ideal. The residue
// field is F_p for both supported field kinds.
struct ReductionReport {
    FpPoly num, den;      // z-sections of the reduced pair after cancellation
    int map_degree;       // d of the original map
    int reduced_degree;   // degree of the induced map on P^1 over F_p
    int cancelled_degree; // degree of the cancelled common form factor
    std::string var;      // printing variable
};

// A rational map of degree >= 1 given by a coprime homogeneous lift pair.
// The stored pair is normalized (minimum coefficient valuation 0); the
// original "reference" lift is lambda * stored with v(lambda) = lift_shift,
// so potentials of the as-given lift remain computable after normalization.
class RationalMap {
public:
    RationalMap(const Form& f0, const Form& f1);
    static RationalMap from_fraction(const Poly& num, const Poly& den);

    const FieldPtr& field() const { return f0_.field(); }
    int degree() const { return f0_.degree(); }
    const Form& lift0() const { return f0_; }
    const Form& lift1() const { return f1_; }
    const mpq_class& lift_shift() const { return shift_; }

    // Same map with the reference lift reset to the stored normalized pair.
    RationalMap with_reference_reset() const;
    RationalMap embedded(const FieldPtr& target) const;

    ProjPoint eval(const ProjPoint& z) const;

    std::string str() const;

private:
    friend RationalMap compose(const RationalMap&, const RationalMap&);
    friend RationalMap iterate(const RationalMap&, unsigned n);
    RationalMap(Form f0, Form f1, mpq_class shift);

    Form f0_, f1_;
    mpq_class shift_;

    struct IterateCache {
        std::mutex mu;
        std::map<unsigned, RationalMap> memo;
    };
    std::shared_ptr<IterateCache> cache_;
};

// Exact homogeneous substitution f(g(.)); degrees multiply and the scalar
// pulled out by re-normalization is accumulated into the lift shift, so the
// result's reference lift is the true composition of the reference lifts.
RationalMap compose(const RationalMap& f, const RationalMap& g);

// n-fold composition (n = 0 gives the identity map). Results are memoized
// behind an internal lock shared by copies of the map; the cache only
// short-circuits recomputation and never changes results.
RationalMap iterate(const RationalMap& f, unsigned n);

ReductionReport reduce(const RationalMap& f);

// True iff the reduced degree equals deg f. Cross-checked internally
// against the valuation of the resultant of the normalized lift; the two
// characterizations must agree.
bool good_reduction(const RationalMap& f);

RationalMap conjugate(const RationalMap& f, const Mobius& h);

// Image of a type-II point. The disk must avoid the zeros of the
// denominator lift, or else the zeros of the numerator (then the image is
// computed through 1/f); otherwise DiskContainsZeroAndPole is thrown and
// the caller decides how to subdivide.
TypeIIPoint map_typeII(const RationalMap& f, const TypeIIPoint& S);

// Certifies a is not an exceptional point by counting >= 2 distinct
// solutions of f^2(z) = a. A false return is inconclusive evidence (the
// backward orbit may still be infinite); callers must treat it as "not
// certified" rather than "exceptional".
bool non_exceptional_witness(const RationalMap& f, const ProjPoint& a);

struct PgrStats {
    unsigned long visited = 0;
    unsigned long pruned = 0;
    bool budget_exhausted = false;
};

// Outcome of the bounded conjugation search. `found` is certified by
// good_reduction of the conjugated map; a negative outcome is only
// evidence up to the explored depth and radius denominator.
struct PgrResult {
    bool found = false;
    std::optional<TypeIIPoint> point; // over the search field
    std::optional<Mobius> conjugator;
    unsigned depth = 0;
    unsigned denom = 1;
    mpq_class best_objective; // least resultant valuation encountered
    PgrStats stats;
    FieldPtr search_field;
};

// Bounded search for a conjugation with good reduction: walks the tree of
// disks D(a, p^{-m}) with m in (1/denom)Z, |m| <= depth, and digit centers,
// minimizing the resultant valuation of the conjugated normalized lift.
// Descent prunes children whose objective strictly increases, which is
// justified by the convexity of the objective along tree paths.
PgrResult pgr_search(const RationalMap& f, unsigned depth, unsigned denom,
                     unsigned long node_budget = 2000000);

} // namespace berklab
