#include "berklab/tree.hpp"

#include <algorithm>

namespace berklab {

FiniteTree FiniteTree::from_points(std::vector<TypeIIPoint> points) {
    if (points.empty()) throw Error("EmptyTree", "FiniteTree: no points");
    FiniteTree t;
    auto add_unique = [&](const TypeIIPoint& s) {
        for (const auto& v : t.verts_)
            if (v == s) return false;
        t.verts_.push_back(s);
        return true;
    };
    for (const auto& s : points) add_unique(s);
    // join-closure (finite: every join moves toward the common root)
    bool changed = true;
    while (changed) {
        changed = false;
        std::size_t n = t.verts_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (add_unique(join(t.verts_[i], t.verts_[j]))) changed = true;
    }
    t.build_edges();
    return t;
}

void FiniteTree::build_edges() {
    std::size_t n = verts_.size();
    parent_.assign(n, npos);
    children_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        // parent: strict container with the largest exponent
        std::size_t best = npos;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (verts_[i].leq(verts_[j]) && !(verts_[i] == verts_[j])) {
                if (best == npos || verts_[j].exponent() > verts_[best].exponent()) best = j;
            }
        }
        parent_[i] = best;
    }
    root_ = npos;
    for (std::size_t i = 0; i < n; ++i) {
        if (parent_[i] == npos) {
            if (root_ != npos)
                throw Error("DisconnectedTree", "FiniteTree: join closure failed");
            root_ = i;
        } else {
            children_[parent_[i]].push_back(i);
        }
    }
}

FiniteTree FiniteTree::standard_tree(const FieldPtr& f, int depth, bool infinity_side) {
    std::vector<TypeIIPoint> pts;
    if (infinity_side) pts.emplace_back(Coeff::zero(f), mpq_class(-1));
    Coeff pi = Coeff::uniformizer_power(f, mpq_class(1));
    std::vector<Coeff> centers = {Coeff::zero(f)};
    pts.emplace_back(Coeff::zero(f), mpq_class(0));
    Coeff level_scale = Coeff::one(f);
    for (int j = 1; j <= depth; ++j) {
        std::vector<Coeff> next;
        for (const auto& c : centers)
            for (unsigned r = 0; r < f->p(); ++r)
                next.push_back(c + Coeff::from_int(f, static_cast<long>(r)) * level_scale);
        level_scale = level_scale * pi;
        centers = std::move(next);
        for (const auto& c : centers) pts.emplace_back(c, mpq_class(j));
    }
    return from_points(std::move(pts));
}

mpq_class FiniteTree::edge_length(std::size_t child) const {
    std::size_t p = parent_[child];
    if (p == npos) throw Error("NoEdge", "edge_length: vertex is the root");
    return verts_[child].exponent() - verts_[p].exponent();
}

std::size_t FiniteTree::find(const TypeIIPoint& S) const {
    for (std::size_t i = 0; i < verts_.size(); ++i)
        if (verts_[i] == S) return i;
    return npos;
}

TypeIIPoint FiniteTree::retract(const TypeIIPoint& S) const {
    // deepest wedge of S with a vertex; it lies on the tree iff it is still
    // inside the root's disk, otherwise the path enters at the root
    const TypeIIPoint& r = verts_[root_];
    TypeIIPoint best = join(S, r);
    for (const auto& v : verts_) {
        TypeIIPoint j = join(S, v);
        if (j.exponent() > best.exponent()) best = j;
    }
    if (best.leq(r)) return best;
    return r;
}

TypeIIPoint FiniteTree::retract(const ProjPoint& z) const {
    if (z.is_infinity()) return verts_[root_];
    Coeff a = z.z0() / z.z1();
    const TypeIIPoint& r = verts_[root_];
    TypeIIPoint best = r;
    bool have = false;
    for (const auto& v : verts_) {
        // join of the classical point a with the vertex disk
        Val sep = (a - v.center()).valuation();
        mpq_class m = v.exponent();
        if (!sep.is_infinity() && sep.finite() < m) m = sep.finite();
        TypeIIPoint j(v.center(), m);
        if (!have || j.exponent() > best.exponent()) {
            best = j;
            have = true;
        }
    }
    if (best.leq(r)) return best;
    return r;
}

bool FiniteTree::same_tree(const FiniteTree& o) const {
    if (verts_.size() != o.verts_.size()) return false;
    for (const auto& v : verts_)
        if (o.find(v) == npos) return false;
    return true;
}

} // namespace berklab
