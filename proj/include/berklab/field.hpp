#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>

#include "berklab/errors.hpp"

namespace berklab {

// Valuation value: an exact rational, or +infinity (the valuation of 0).
// All norms in the system are carried as base-p logarithms, i.e. as Val;
// the absolute value |x| = p^{-v(x)} is never materialized as a float.
class Val {
public:
    Val() : inf_(false), v_(0) {}
    explicit Val(mpq_class v) : inf_(false), v_(std::move(v)) { v_.canonicalize(); }
    Val(long num, long den) : inf_(false), v_(num, den) { v_.canonicalize(); }

    static Val infinity() {
        Val v;
        v.inf_ = true;
        return v;
    }

    bool is_infinity() const { return inf_; }

    // Finite value; must not be called on +infinity.
    const mpq_class& finite() const {
        if (inf_) throw Error("ValInfinite", "Val: +infinity has no finite value");
        return v_;
    }

    Val operator+(const Val& o) const {
        if (inf_ || o.inf_) return infinity();
        return Val(v_ + o.v_);
    }
    Val operator-(const Val& o) const {
        if (inf_) return infinity();
        if (o.inf_) throw Error("ValInfinite", "Val: cannot subtract +infinity");
        return Val(v_ - o.v_);
    }
    Val operator*(long k) const {
        if (inf_) return infinity();
        return Val(v_ * k);
    }

    bool operator==(const Val& o) const {
        if (inf_ != o.inf_) return false;
        return inf_ || v_ == o.v_;
    }
    bool operator!=(const Val& o) const { return !(*this == o); }
    // Order with +infinity as the top element.
    bool operator<(const Val& o) const {
        if (inf_) return false;
        if (o.inf_) return true;
        return v_ < o.v_;
    }
    bool operator<=(const Val& o) const { return *this < o || *this == o; }
    bool operator>(const Val& o) const { return o < *this; }
    bool operator>=(const Val& o) const { return o <= *this; }

    friend Val min(const Val& a, const Val& b) { return a < b ? a : b; }
    friend Val max(const Val& a, const Val& b) { return a < b ? b : a; }

    std::string str() const { return inf_ ? "+inf" : v_.get_str(); }

private:
    bool inf_;
    mpq_class v_;
};

enum class FieldKind {
    PAdic,          // rationals with the p-adic valuation
    LaurentRational // rational functions over F_p with the order-at-t valuation
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Immutable description of the coefficient field. `ram` is the value-group
// denominator: elements may carry a formal uniformizer u with u^ram equal to
// the base uniformizer (p, or the variable t), so valuations live in
// (1/ram)* Z. ram = 1 is the plain base field.
class Field {
public:
    static FieldPtr padic(unsigned p);
    static FieldPtr laurent(unsigned p, std::string var = "t");

    FieldKind kind() const { return kind_; }
    unsigned p() const { return p_; }
    const std::string& var() const { return var_; }
    unsigned ram() const { return ram_; }

    // Same field up to ramification index `n` on the value group.
    FieldPtr extended(unsigned n) const;

    bool same_spec(const Field& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && ram_ == o.ram_ &&
               (kind_ == FieldKind::PAdic || var_ == o.var_);
    }

    std::string describe() const;

private:
    Field(FieldKind kind, unsigned p, std::string var, unsigned ram)
        : kind_(kind), p_(p), var_(std::move(var)), ram_(ram) {}

    FieldKind kind_;
    unsigned p_;
    std::string var_;
    unsigned ram_;
};

void require_same_field(const FieldPtr& a, const FieldPtr& b, const char* where);
bool is_prime(unsigned n);

} // namespace berklab
