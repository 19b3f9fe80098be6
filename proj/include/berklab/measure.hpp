#pragma once

#include "berklab/tree.hpp"

namespace berklab {

// A rational-valued signed mass assignment on points of a finite subtree
// (vertices or edge-interior points), with a declared total that the stored
// atoms must match exactly.
class TreeMeasure {
public:
    struct Atom {
        TypeIIPoint point;
        mpq_class mass;
    };

    TreeMeasure(FiniteTree tree, mpq_class declared_total)
        : tree_(std::move(tree)), total_(std::move(declared_total)) {}

    static TreeMeasure dirac(const FiniteTree& tree, const TypeIIPoint& at);

    const FiniteTree& tree() const { return tree_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const mpq_class& total() const { return total_; }

    void add_mass(const TypeIIPoint& at, const mpq_class& mass);
    mpq_class mass_at(const TypeIIPoint& at) const;

    TreeMeasure scaled(const mpq_class& k) const;

    // exact conservation check: stored atoms sum to the declared total
    void validate() const;

    bool same_support_and_masses(const TreeMeasure& o) const;

    std::string str() const;

private:
    FiniteTree tree_;
    std::vector<Atom> atoms_;
    mpq_class total_;
};

// Half the total variation between two probability measures on one tree.
mpq_class tv_distance(const TreeMeasure& mu, const TreeMeasure& nu);

} // namespace berklab
