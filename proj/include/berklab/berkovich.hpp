#pragma once

#include <optional>
#include <string>
#include <variant>

#include "berklab/poly.hpp"

namespace berklab {

// A classical point of P^1 as a projective coordinate pair (not both zero).
class ProjPoint {
public:
    ProjPoint(Coeff z0, Coeff z1);
    static ProjPoint affine(const Coeff& a);
    static ProjPoint infinity(const FieldPtr& f);

    const Coeff& z0() const { return z0_; } // "numerator" coordinate
    const Coeff& z1() const { return z1_; }
    bool is_infinity() const { return z1_.is_zero(); }
    const FieldPtr& field() const { return z0_.field(); }

    // Projective equality.
    bool operator==(const ProjPoint& o) const;

    std::string str() const;

private:
    Coeff z0_, z1_;
};

// A type-II point of the Berkovich line, canonically stored in the direct
// chart as the closed disk D(a, p^{-m}) (every type-II point is a disk in
// the z-coordinate; the inverted chart is an input/output convenience).
class TypeIIPoint {
public:
    TypeIIPoint(Coeff center, mpq_class radius_exponent);
    static TypeIIPoint gauss(const FieldPtr& f);
    // A point described in the 1/z chart as the disk D(a_w, p^{-m_w});
    // converted to the canonical direct-chart representation.
    static TypeIIPoint from_inverted(const Coeff& a_w, const mpq_class& m_w);

    const Coeff& center() const { return a_; }
    const mpq_class& exponent() const { return m_; }
    const FieldPtr& field() const { return a_.field(); }
    bool is_gauss() const;

    bool operator==(const TypeIIPoint& o) const;
    bool operator!=(const TypeIIPoint& o) const { return !(*this == o); }

    // Containment of the underlying disks: *this inside o.
    bool leq(const TypeIIPoint& o) const;

    // Textual form "D(a; m)"; parse also accepts the "@inv" chart suffix.
    std::string str() const;
    static TypeIIPoint parse(const FieldPtr& f, const std::string& text);

private:
    Coeff a_;
    mpq_class m_;
};

// Gauss seminorm exponent: returns v with [phi]_S = p^{-v}, computed as
// min_i (v(c_i) + i*m) for phi(a + x) = sum c_i x^i. Multiplicative over
// products (additive on exponents). +infinity for the zero polynomial.
Val gauss_seminorm(const Poly& phi, const TypeIIPoint& S);

// The wedge point S /\_infinity S' where the paths to infinity merge.
TypeIIPoint join(const TypeIIPoint& S, const TypeIIPoint& Sp);

// Chordal distance exponent: returns v >= 0 with [z,w] = p^{-v};
// +infinity iff the points coincide.
Val chordal(const ProjPoint& z, const ProjPoint& w);

// Path length between two type-II points in log_p units.
mpq_class hyperbolic_distance(const TypeIIPoint& S, const TypeIIPoint& Sp);

// A direction (tangent vector) at a type-II point, represented by any point
// of the component it opens onto: the branch toward infinity, or one
// residue sub-disk branch.
class Direction {
public:
    Direction(const TypeIIPoint& base, const TypeIIPoint& rep);
    Direction(const TypeIIPoint& base, const ProjPoint& rep);

    const TypeIIPoint& base() const { return base_; }
    bool toward_infinity() const { return up_; }

    bool operator==(const Direction& o) const;

private:
    void classify(const Coeff& rep_center, const Val& rep_depth);

    TypeIIPoint base_;
    bool up_ = false;            // branch toward infinity
    std::optional<Coeff> down_;  // a center of the residue sub-disk branch
};

} // namespace berklab
