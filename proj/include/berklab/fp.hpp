#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "berklab/errors.hpp"

namespace berklab {

// Dense univariate polynomial over the prime field F_p. Coefficients are
// stored reduced into [0, p), least significant first, with no trailing
// zeros (the zero polynomial has an empty coefficient vector).
class FpPoly {
public:
    explicit FpPoly(unsigned p) : p_(p) {}
    FpPoly(unsigned p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        reduce_and_trim();
    }
    static FpPoly constant(unsigned p, long value);
    static FpPoly variable(unsigned p); // the monomial t

    unsigned p() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }

    // Order of vanishing at t = 0 (number of trailing zero coefficients).
    // Must not be called on the zero polynomial.
    int ord() const;
    FpPoly shifted_down(int k) const; // divide by t^k, requires ord() >= k
    FpPoly shifted_up(int k) const;   // multiply by t^k

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const FpPoly& o) const { return !(*this == o); }

    FpPoly scaled(std::uint32_t k) const;
    FpPoly monic() const; // divide by the leading coefficient
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
    static FpPoly gcd(FpPoly a, FpPoly b); // monic gcd, gcd(0,0) = 0

    std::uint32_t eval0() const { return c_.empty() ? 0 : c_[0]; }

    std::string str(const std::string& var) const;

private:
    void reduce_and_trim();

    unsigned p_;
    std::vector<std::uint32_t> c_;
};

std::uint32_t fp_inv(std::uint32_t a, unsigned p);

// Reduced fraction of FpPolys: den is monic and nonzero, gcd(num, den) = 1,
// and the zero element is 0/1. This is the exact model of F_p(t).
class FpRat {
public:
    explicit FpRat(unsigned p) : num_(p), den_(FpPoly::constant(p, 1)) {}
    FpRat(FpPoly num, FpPoly den);
    static FpRat from_int(unsigned p, long v) {
        return FpRat(FpPoly::constant(p, v), FpPoly::constant(p, 1));
    }

    unsigned p() const { return num_.p(); }
    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    FpRat operator+(const FpRat& o) const;
    FpRat operator-(const FpRat& o) const;
    FpRat operator-() const;
    FpRat operator*(const FpRat& o) const;
    FpRat operator/(const FpRat& o) const;
    bool operator==(const FpRat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const FpRat& o) const { return !(*this == o); }

    // Order of vanishing at t = 0; throws on 0.
    int ord() const;
    // Image in the residue field F_p; requires ord() >= 0.
    std::uint32_t residue() const;

    std::string str(const std::string& var) const;

private:
    FpPoly num_, den_;
};

} // namespace berklab
