#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berklab/coeff.hpp"

namespace berklab {

// Dense univariate polynomial over Coeff, trimmed so the leading
// coefficient of a nonzero polynomial is nonzero.
class Poly {
public:
    explicit Poly(FieldPtr f) : f_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<Coeff> coeffs);
    static Poly constant(const FieldPtr& f, const Coeff& c);
    static Poly variable(const FieldPtr& f); // the monomial z
    // coefficients given as base-field strings, ascending degree
    static Poly parse(const FieldPtr& f, const std::vector<std::string>& coeffs);

    const FieldPtr& field() const { return f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff::zero(f_); }
    const Coeff& leading() const;
    const std::vector<Coeff>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const Coeff& k) const;
    Poly shifted_up(int k) const; // multiply by z^k
    Poly monic() const;
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    static Poly gcd(Poly a, Poly b); // monic, gcd(0,0) = 0

    Poly derivative() const;
    Coeff eval(const Coeff& a) const;
    // Taylor shift: returns P(a + x).
    Poly shift(const Coeff& a) const;
    // Order of vanishing at 0; throws on the zero polynomial.
    int ord_at_zero() const;

    std::string str(const std::string& var = "z") const;

private:
    void trim();

    FieldPtr f_;
    std::vector<Coeff> c_;
};

// Homogeneous bivariate form of fixed degree d: exactly d+1 coefficient
// slots, c[i] the coefficient of z^i w^{d-i}. Leading slots may be zero.
class Form {
public:
    Form(FieldPtr f, std::vector<Coeff> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
        if (c_.empty()) throw ZeroPolynomial("Form: needs at least one slot");
    }
    static Form homogenize(const Poly& p, int d);

    const FieldPtr& field() const { return f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Coeff& coeff(std::size_t i) const { return c_[i]; }
    const std::vector<Coeff>& coeffs() const { return c_; }
    bool is_zero() const;

    Poly z_section() const; // F(z, 1)
    Poly w_section() const; // F(1, w)

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator*(const Form& o) const; // degrees add
    bool operator==(const Form& o) const { return c_ == o.c_; }

    Form scaled(const Coeff& k) const;
    // Substitution F(G0, G1) for forms G0, G1 of one common degree.
    Form compose(const Form& g0, const Form& g1) const;
    // Substitution under a linear change of variables (z,w) -> (az+bw, cz+dw).
    Form linear_substitute(const Coeff& a, const Coeff& b, const Coeff& c,
                           const Coeff& d) const;

    // Minimum valuation over all coefficients (+infinity for the zero form).
    Val min_coeff_valuation() const;

    std::string str() const;

private:
    FieldPtr f_;
    std::vector<Coeff> c_;
};

// One segment of a Newton polygon: `slope` is the geometric slope of the
// lower convex hull of {(i, v(c_i))}; a segment of slope s carries `length`
// roots of valuation -s (that sign convention is used across the project).
struct NewtonSegment {
    mpq_class slope;
    unsigned long length;
    bool operator==(const NewtonSegment& o) const {
        return slope == o.slope && length == o.length;
    }
};

// Lower convex hull of the points (i, v(c_i)) over nonzero coefficients,
// as segments with strictly increasing slopes. The sum of lengths equals
// deg P minus the order of vanishing at 0. Throws ZeroPolynomial on 0.
std::vector<NewtonSegment> newton_polygon(const Poly& P);

// Number of roots z of P (in an algebraic closure, with multiplicity) with
// v(z - a) >= m; m = std::nullopt means the whole line (count = deg P).
// Roots equal to a (v = +infinity) are always included.
unsigned long count_roots_in_disk(const Poly& P, const Coeff& a,
                                  const std::optional<mpq_class>& m);

// Number of distinct roots of P in an algebraic closure (the degree of the
// squarefree part, with purely inseparable collapse accounted for in
// characteristic p).
unsigned long distinct_root_count(const Poly& P);

// Sylvester resultant. Convention: the matrix stacks deg(Q) rows of P's
// coefficients (descending) over deg(P) rows of Q's; resultant(z, z-1) = -1.
Coeff resultant(const Poly& P, const Poly& Q);

// Homogeneous resultant of two forms of one common degree d (the 2d x 2d
// Sylvester determinant on the full slot vectors, so vanishing leading
// slots are handled correctly).
Coeff resultant_form(const Form& F0, const Form& F1);

} // namespace berklab
