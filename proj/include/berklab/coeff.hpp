#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "berklab/field.hpp"
#include "berklab/fp.hpp"

namespace berklab {

// An exact element of the coefficient field, always kept in reduced
// canonical form so equality is decidable and formatting is stable.
//
// In a ramified extension (field->ram() = N > 1) an element is stored by
// its coordinates in the basis 1, u, ..., u^{N-1} with u^N = p (resp. t).
// Since coordinate valuations are integers, the terms c_i * u^i have
// pairwise distinct valuations mod 1, so v(sum) = min_i (v(c_i) + i/N)
// holds exactly, with no cancellation cases.
class Coeff {
public:
    static Coeff zero(const FieldPtr& f);
    static Coeff one(const FieldPtr& f);
    static Coeff from_int(const FieldPtr& f, long v);
    static Coeff from_mpq(const FieldPtr& f, const mpq_class& v);
    static Coeff from_fprat(const FieldPtr& f, const FpRat& v);
    // Parses the textual coefficient form of the base field:
    // rationals as "num/den", rational functions as "(poly)/(poly)".
    static Coeff parse(const FieldPtr& f, const std::string& text);
    // The element u^{m * ram}, of valuation exactly m; m's denominator must
    // divide the field's ramification index.
    static Coeff uniformizer_power(const FieldPtr& f, const mpq_class& m);

    const FieldPtr& field() const { return field_; }
    bool is_zero() const;

    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator-() const;
    Coeff operator*(const Coeff& o) const;
    Coeff operator/(const Coeff& o) const;
    bool operator==(const Coeff& o) const;
    bool operator!=(const Coeff& o) const { return !(*this == o); }

    Coeff pow(unsigned long e) const;

    Val valuation() const;
    // Image in the residue field F_p (the residue field is F_p for both
    // base kinds and is unchanged by totally ramified extension).
    // Requires valuation() >= 0.
    std::uint32_t residue() const;

    // Re-express this element in `target`, the same base field with a
    // ramification index divisible by the current one.
    Coeff embed(const FieldPtr& target) const;

    std::string str() const;

private:
    Coeff() = default;

    const mpq_class& q0() const { return q_[0]; }
    const FpRat& r0() const { return r_[0]; }

    FieldPtr field_;
    std::vector<mpq_class> q_; // PAdic coordinates (size = ram)
    std::vector<FpRat> r_;     // LaurentRational coordinates (size = ram)
};

// p-adic valuation of an exact rational (the base case of Coeff::valuation).
Val padic_valuation(const mpq_class& x, unsigned p);

} // namespace berklab
