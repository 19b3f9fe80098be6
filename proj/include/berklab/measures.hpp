#pragma once

#include "berklab/potential.hpp"

namespace berklab {

// The root divisor of f^n = g realized by the wedge of the lifts, with
// per-chart sections for root counting. Total root count over both charts
// (the direct chart owning valuation-0 roots, plus the multiplicity at
// infinity) is d^n + deg g.
struct DivisorPoly {
    Form wedge;
    Poly z_sec; // wedge(z, 1)
    Poly w_sec; // wedge(1, w)
    unsigned long total_degree;
    unsigned long infinity_multiplicity; // total - deg z_sec
};

DivisorPoly divisor_poly(const RationalMap& f, const RationalMap& g, unsigned n);

// Pushforward of the root divisor onto a finite subtree: per-vertex root
// counts combined by inclusion-exclusion down the tree; roots outside every
// vertex disk (including the point at infinity) land on the tree root.
// Total mass = total_degree.
TreeMeasure retract_divisor(const DivisorPoly& P, const FiniteTree& tree);

// Retraction of the n-th pullback of the point a, normalized to a
// probability measure. Requires a non-exceptionality witness for a.
TreeMeasure mu_pullback(const RationalMap& f, const ProjPoint& a, unsigned n,
                        const FiniteTree& tree);

// Equilibrium-measure approximation through the truncated Green function:
// the tree Laplacian of the Green values plus the retracted canonical point.
// eps is the certified truncation tolerance.
TreeMeasure mu_green(const RationalMap& f, const FiniteTree& tree, const mpq_class& eps);

enum class MuRefKind { Pullback, Green, CanonicalPoint };

struct EquidistRow {
    unsigned n;
    unsigned long degree; // d^n + deg g
    mpq_class tv;
};

struct EquidistReport {
    std::vector<EquidistRow> rows;
    PgrResult hypothesis; // conjugation-search verdict attached to the run
    bool makes_claim;     // false when the search found good reduction
    std::string mu_ref_description;
};

struct EquidistOptions {
    unsigned n_from = 1;
    unsigned n_to = 10;
    MuRefKind mu_ref = MuRefKind::Pullback;
    std::string pullback_base = "1"; // coefficient string for the base point
    unsigned pullback_n = 10;
    mpq_class green_eps = mpq_class(1, 100);
    unsigned pgr_depth = 3;
    unsigned pgr_denom = 2;
    unsigned threads = 1;
};

// Distance table between normalized root divisors of f^n = g and a
// reference measure, with the conjugation-search verdict attached. The rows
// are computed cell-parallel and assembled in order.
EquidistReport equidist_experiment(const RationalMap& f, const RationalMap& g,
                                   const FiniteTree& tree, const EquidistOptions& opts);

} // namespace berklab
