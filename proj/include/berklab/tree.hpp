#pragma once

#include <functional>
#include <vector>

#include "berklab/berkovich.hpp"

namespace berklab {

// A finite subtree of the Berkovich line: type-II vertices closed under
// pairwise join, edges between containment-comparable vertices with nothing
// strictly between, rooted at the unique vertex closest to infinity.
// Edge lengths are the hyperbolic exponent differences.
class FiniteTree {
public:
    // Join-closes the given points and builds the edge structure.
    static FiniteTree from_points(std::vector<TypeIIPoint> points);

    // The subtree of the unit disk spanned by all residue-digit centers down
    // to `depth` (the Gauss point plus p^j disks of radius p^{-j}, j <= depth);
    // optionally one extra vertex D(0; -1) on the infinity side.
    static FiniteTree standard_tree(const FieldPtr& f, int depth, bool infinity_side = false);

    std::size_t size() const { return verts_.size(); }
    const TypeIIPoint& vertex(std::size_t i) const { return verts_[i]; }
    const std::vector<TypeIIPoint>& vertices() const { return verts_; }
    std::size_t root() const { return root_; }
    // parent index, or npos for the root
    std::size_t parent(std::size_t i) const { return parent_[i]; }
    const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
    mpq_class edge_length(std::size_t child) const;

    // index of an equal vertex, or npos
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find(const TypeIIPoint& S) const;

    // Nearest-point projection onto the subtree spanned by the vertices.
    // The result is a vertex or a point interior to an edge.
    TypeIIPoint retract(const TypeIIPoint& S) const;
    TypeIIPoint retract(const ProjPoint& z) const;

    bool same_tree(const FiniteTree& o) const;

    const FieldPtr& field() const { return verts_.at(0).field(); }

private:
    FiniteTree() = default;
    void build_edges();

    std::vector<TypeIIPoint> verts_;
    std::vector<std::size_t> parent_;
    std::vector<std::vector<std::size_t>> children_;
    std::size_t root_ = npos;
};

} // namespace berklab
