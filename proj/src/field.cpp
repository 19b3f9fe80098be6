#include "berklab/field.hpp"

namespace berklab {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

static void check_prime(unsigned p) {
    if (!is_prime(p)) throw Error("NotPrime", "field: p = " + std::to_string(p) + " is not prime");
}

FieldPtr Field::padic(unsigned p) {
    check_prime(p);
    return FieldPtr(new Field(FieldKind::PAdic, p, "", 1));
}

FieldPtr Field::laurent(unsigned p, std::string var) {
    check_prime(p);
    if (var.empty()) throw Error("BadVariable", "field: empty variable name");
    return FieldPtr(new Field(FieldKind::LaurentRational, p, std::move(var), 1));
}

FieldPtr Field::extended(unsigned n) const {
    if (n == 0) throw Error("BadRamification", "field: ramification index must be positive");
    if (n == ram_) return FieldPtr(new Field(kind_, p_, var_, ram_));
    return FieldPtr(new Field(kind_, p_, var_, n));
}

std::string Field::describe() const {
    std::string base = kind_ == FieldKind::PAdic
                           ? "Q(p=" + std::to_string(p_) + ")"
                           : "F_" + std::to_string(p_) + "(" + var_ + ")";
    if (ram_ > 1) base += "[u^" + std::to_string(ram_) + "=pi]";
    return base;
}

void require_same_field(const FieldPtr& a, const FieldPtr& b, const char* where) {
    if (!a || !b || !a->same_spec(*b))
        throw FieldMismatch(std::string(where) + ": operands over different fields");
}

} // namespace berklab
