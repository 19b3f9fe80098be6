#pragma once

#include <functional>

#include "berklab/dynamics.hpp"
#include "berklab/measure.hpp"

namespace berklab {

// Exact rational value of a potential function at a type-II point,
// in log_p units.
using PotentialValue = mpq_class;

// The escape-rate potential of the reference lift H at S:
//   log ||H(Z)|| - deg(H) * log ||Z||
// evaluated through Gauss seminorms of the chart sections, plus the tracked
// lift-scalar correction. Chart-independent.
PotentialValue t_h(const RationalMap& H, const TypeIIPoint& S);

// Same value computed from the 1/z-chart sections of a point described in
// the inverted chart (used to exercise chart independence).
PotentialValue t_h_inverted_chart(const RationalMap& H, const Coeff& a_w,
                                  const mpq_class& m_w);

struct GreenApprox {
    PotentialValue value;  // T_{F^n}(S) / d^n, exact
    unsigned n_used;
    mpq_class error_bound; // |true value - value| <= error_bound
};

// Truncated dynamical Green function of the reference lift: the first
// iterate whose certified tail bound M / (d^n (d-1)) is <= eps, where
// M = v(Res of the normalized lift) bounds |T_F| on the whole line.
GreenApprox green(const RationalMap& f, const TypeIIPoint& S, const mpq_class& eps,
                  unsigned n_cap = 48);

// Independent evaluation route for the same truncation: the telescoped sum
// sum_{k<n} T_F(f^k(S)) / d^{k+1} along the orbit of S, when the orbit
// disks keep zeros and poles separated. Must agree with the direct route
// exactly wherever both apply.
std::optional<PotentialValue> green_telescoped(const RationalMap& f, const TypeIIPoint& S,
                                               unsigned n);

// Continuous extension of the chordal pairing of f^n against g, evaluated
// through the wedge of the lifts:
//   lambda(F0 G1 - F1 G0) - max(lambda F0, lambda F1) - max(lambda G0, lambda G1)
// at S; always <= 0, invariant under scaling either lift. Throws
// IdenticallyEqual when the wedge vanishes identically (f^n = g). Note this
// is not the naive evaluation [f^n(S), g(S)], which is a different function.
PotentialValue chordal_can(const RationalMap& fn, const RationalMap& g,
                           const TypeIIPoint& S);

// Discrete Laplacian of a function on a finite subtree: per-edge slopes are
// extracted by probe-point consistency (functions are piecewise affine in
// the hyperbolic coordinate with rational breakpoints); inconsistent probes
// subdivide, exact line intersection pins interior breakpoints. Masses sit
// at vertices and at genuine interior kinks; the sign is fixed so that
// the extension of log max{1,|.|} has Laplacian (+1 at Gauss, -1 toward
// infinity) on the standard test tree.
TreeMeasure tree_laplacian(const std::function<PotentialValue(const TypeIIPoint&)>& values,
                           const FiniteTree& tree, unsigned max_depth = 24);

// log max{1, |.|} extended to type-II points; the standard Laplacian
// test function.
PotentialValue log_plus_abs(const TypeIIPoint& S);

struct AprioriEntry {
    unsigned n;
    bool identically_equal; // f^n = g at this n; s_n undefined
    mpq_class s_n;          // max over samples of chordal_can / (d^n + deg g)
};

// Normalized chordal pairing maxima along iterates over a fixed sample set;
// each s_n <= 0, and s_n -> 0 certifies the pairing's normalized decay on
// the sampled family.
std::vector<AprioriEntry> apriori_sequence(const RationalMap& f, const RationalMap& g,
                                           const std::vector<TypeIIPoint>& samples,
                                           unsigned n_max);

} // namespace berklab
