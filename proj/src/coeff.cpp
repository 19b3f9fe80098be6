#include "berklab/coeff.hpp"

#include <algorithm>
#include <cctype>

namespace berklab {

namespace {

// --- generic helpers over a coefficient type B (mpq_class or FpRat) -------

template <class B>
bool bz(const B& x);
template <>
bool bz(const mpq_class& x) { return x == 0; }
template <>
bool bz(const FpRat& x) { return x.is_zero(); }

template <class B>
void trim(std::vector<B>& v) {
    while (!v.empty() && bz(v.back())) v.pop_back();
}

// product of coordinate vectors folded by u^N = pi0
template <class B>
std::vector<B> ext_mul(const std::vector<B>& a, const std::vector<B>& b, const B& pi0,
                       const B& zero) {
    std::size_t n = a.size(); // == b.size() == ram
    std::vector<B> conv(2 * n - 1, zero);
    for (std::size_t i = 0; i < n; ++i) {
        if (bz(a[i])) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (bz(b[j])) continue;
            conv[i + j] = conv[i + j] + a[i] * b[j];
        }
    }
    std::vector<B> out(conv.begin(), conv.begin() + n);
    for (std::size_t k = n; k < conv.size(); ++k)
        out[k - n] = out[k - n] + conv[k] * pi0;
    return out;
}

// polynomial division in B[x], B a field
template <class B>
std::pair<std::vector<B>, std::vector<B>> poly_divmod(std::vector<B> r, std::vector<B> d,
                                                      const B& zero) {
    trim(r);
    trim(d);
    if (d.empty()) throw ZeroPolynomial("ext inverse: division by zero polynomial");
    std::vector<B> q;
    if (r.size() >= d.size()) q.assign(r.size() - d.size() + 1, zero);
    while (r.size() >= d.size() && !r.empty()) {
        B coef = r.back() / d.back();
        std::size_t k = r.size() - d.size();
        q[k] = coef;
        for (std::size_t i = 0; i < d.size(); ++i)
            r[k + i] = r[k + i] - coef * d[i];
        trim(r);
    }
    return {q, r};
}

// inverse of a (nonzero, degree < N) modulo m(x) = x^N - pi0 via extended
// Euclid; m is irreducible (Eisenstein), so the gcd is a unit.
template <class B>
std::vector<B> ext_inv(const std::vector<B>& a_in, const B& pi0, const B& zero, const B& one) {
    std::size_t n = a_in.size();
    std::vector<B> m(n + 1, zero);
    m[0] = zero - pi0;
    m[n] = one;
    std::vector<B> r0 = m, r1 = a_in;
    trim(r1);
    std::vector<B> s0 = {zero}, s1 = {one};
    trim(s0);
    while (!r1.empty() && r1.size() > 1) {
        auto [q, r2] = poly_divmod(r0, r1, zero);
        // s2 = s0 - q*s1
        std::vector<B> qs(q.size() + s1.size(), zero);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] = qs[i + j] + q[i] * s1[j];
        trim(qs);
        std::vector<B> s2(std::max(s0.size(), qs.size()), zero);
        for (std::size_t i = 0; i < s2.size(); ++i) {
            B x = i < s0.size() ? s0[i] : zero;
            B y = i < qs.size() ? qs[i] : zero;
            s2[i] = x - y;
        }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw ZeroPolynomial("ext inverse of zero");
    // r1 is the unit gcd; s1 * a == r1 (mod m)
    B g = r1[0];
    std::vector<B> out(n, zero);
    for (std::size_t i = 0; i < s1.size() && i < n; ++i) out[i] = s1[i] / g;
    return out;
}

mpq_class mpq_pow_signed(unsigned base, long e) {
    mpz_class b(base), num = 1, den = 1;
    if (e >= 0) {
        mpz_pow_ui(num.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    } else {
        mpz_pow_ui(den.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(-e));
    }
    return mpq_class(num, den);
}

} // namespace

Val padic_valuation(const mpq_class& x, unsigned p) {
    if (x == 0) return Val::infinity();
    mpz_class pz(p), tmp;
    long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_num_mpz_t(), pz.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_den_mpz_t(), pz.get_mpz_t()));
    return Val(mpq_class(vn - vd));
}

Coeff Coeff::zero(const FieldPtr& f) {
    Coeff c;
    c.field_ = f;
    if (f->kind() == FieldKind::PAdic)
        c.q_.assign(f->ram(), mpq_class(0));
    else
        c.r_.assign(f->ram(), FpRat(f->p()));
    return c;
}

Coeff Coeff::one(const FieldPtr& f) { return from_int(f, 1); }

Coeff Coeff::from_int(const FieldPtr& f, long v) {
    Coeff c = zero(f);
    if (f->kind() == FieldKind::PAdic)
        c.q_[0] = v;
    else
        c.r_[0] = FpRat::from_int(f->p(), v);
    return c;
}

Coeff Coeff::from_mpq(const FieldPtr& f, const mpq_class& v) {
    if (f->kind() != FieldKind::PAdic)
        throw FieldMismatch("Coeff::from_mpq: field is not rational");
    Coeff c = zero(f);
    c.q_[0] = v;
    c.q_[0].canonicalize();
    return c;
}

Coeff Coeff::from_fprat(const FieldPtr& f, const FpRat& v) {
    if (f->kind() != FieldKind::LaurentRational)
        throw FieldMismatch("Coeff::from_fprat: field is not a rational function field");
    if (v.p() != f->p()) throw FieldMismatch("Coeff::from_fprat: wrong characteristic");
    Coeff c = zero(f);
    c.r_[0] = v;
    return c;
}

bool Coeff::is_zero() const {
    if (field_->kind() == FieldKind::PAdic)
        return std::all_of(q_.begin(), q_.end(), [](const mpq_class& x) { return x == 0; });
    return std::all_of(r_.begin(), r_.end(), [](const FpRat& x) { return x.is_zero(); });
}

Coeff Coeff::operator+(const Coeff& o) const {
    require_same_field(field_, o.field_, "Coeff::+");
    Coeff c = *this;
    if (field_->kind() == FieldKind::PAdic)
        for (std::size_t i = 0; i < q_.size(); ++i) c.q_[i] += o.q_[i];
    else
        for (std::size_t i = 0; i < r_.size(); ++i) c.r_[i] = c.r_[i] + o.r_[i];
    return c;
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator-() const {
    Coeff c = *this;
    if (field_->kind() == FieldKind::PAdic)
        for (auto& x : c.q_) x = -x;
    else
        for (auto& x : c.r_) x = -x;
    return c;
}

Coeff Coeff::operator*(const Coeff& o) const {
    require_same_field(field_, o.field_, "Coeff::*");
    Coeff c = zero(field_);
    if (field_->kind() == FieldKind::PAdic) {
        if (field_->ram() == 1)
            c.q_[0] = q_[0] * o.q_[0];
        else
            c.q_ = ext_mul(q_, o.q_, mpq_class(field_->p()), mpq_class(0));
    } else {
        if (field_->ram() == 1) {
            c.r_[0] = r_[0] * o.r_[0];
        } else {
            FpRat t(FpPoly::variable(field_->p()), FpPoly::constant(field_->p(), 1));
            c.r_ = ext_mul(r_, o.r_, t, FpRat(field_->p()));
        }
    }
    return c;
}

Coeff Coeff::operator/(const Coeff& o) const {
    require_same_field(field_, o.field_, "Coeff::/");
    if (o.is_zero()) throw ZeroPolynomial("Coeff: division by zero");
    if (field_->ram() == 1) {
        Coeff c = zero(field_);
        if (field_->kind() == FieldKind::PAdic)
            c.q_[0] = q_[0] / o.q_[0];
        else
            c.r_[0] = r_[0] / o.r_[0];
        return c;
    }
    Coeff inv = zero(field_);
    if (field_->kind() == FieldKind::PAdic)
        inv.q_ = ext_inv(o.q_, mpq_class(field_->p()), mpq_class(0), mpq_class(1));
    else {
        FpRat t(FpPoly::variable(field_->p()), FpPoly::constant(field_->p(), 1));
        inv.r_ = ext_inv(o.r_, t, FpRat(field_->p()), FpRat::from_int(field_->p(), 1));
    }
    return *this * inv;
}

bool Coeff::operator==(const Coeff& o) const {
    require_same_field(field_, o.field_, "Coeff::==");
    return field_->kind() == FieldKind::PAdic ? q_ == o.q_ : r_ == o.r_;
}

Coeff Coeff::pow(unsigned long e) const {
    Coeff acc = one(field_), b = *this;
    while (e > 0) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return acc;
}

Val Coeff::valuation() const {
    Val best = Val::infinity();
    unsigned n = field_->ram();
    for (unsigned i = 0; i < n; ++i) {
        Val vi = field_->kind() == FieldKind::PAdic
                     ? padic_valuation(q_[i], field_->p())
                     : (r_[i].is_zero() ? Val::infinity() : Val(mpq_class(r_[i].ord())));
        if (!vi.is_infinity()) {
            Val term = vi + Val(mpq_class(i, n));
            best = min(best, term);
        }
    }
    return best;
}

std::uint32_t Coeff::residue() const {
    Val v = valuation();
    if (v < Val(mpq_class(0)))
        throw Error("NegativeValuation", "Coeff::residue: valuation is negative");
    if (v > Val(mpq_class(0))) return 0;
    // v = 0 is attained at coordinate 0 only (higher terms have fractional
    // valuations in (0,1) or integer shifts thereof).
    if (field_->kind() == FieldKind::PAdic) {
        unsigned p = field_->p();
        mpz_class num = q0().get_num() % p, den = q0().get_den() % p;
        std::uint32_t n = static_cast<std::uint32_t>((num.get_si() + p) % p);
        std::uint32_t d = static_cast<std::uint32_t>((den.get_si() + p) % p);
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) * fp_inv(d, p) % p);
    }
    return r0().residue();
}

Coeff Coeff::uniformizer_power(const FieldPtr& f, const mpq_class& m) {
    mpq_class scaled = m * f->ram();
    if (scaled.get_den() != 1)
        throw Error("BadExponent",
                    "uniformizer_power: exponent " + m.get_str() +
                        " not in (1/" + std::to_string(f->ram()) + ")Z");
    mpz_class j = scaled.get_num();
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), j.get_mpz_t(), mpz_class(f->ram()).get_mpz_t());
    unsigned long pos = r.get_ui();
    long e = q.get_si();
    Coeff c = zero(f);
    if (f->kind() == FieldKind::PAdic) {
        c.q_[pos] = mpq_pow_signed(f->p(), e);
    } else {
        FpPoly one = FpPoly::constant(f->p(), 1);
        FpPoly tk = one.shifted_up(static_cast<int>(e >= 0 ? e : -e));
        c.r_[pos] = e >= 0 ? FpRat(tk, one) : FpRat(one, tk);
    }
    return c;
}

Coeff Coeff::embed(const FieldPtr& target) const {
    if (target->kind() != field_->kind() || target->p() != field_->p())
        throw FieldMismatch("Coeff::embed: incompatible fields");
    if (target->ram() % field_->ram() != 0)
        throw FieldMismatch("Coeff::embed: ramification indices incompatible");
    unsigned k = target->ram() / field_->ram();
    Coeff c = zero(target);
    if (field_->kind() == FieldKind::PAdic)
        for (std::size_t i = 0; i < q_.size(); ++i) c.q_[i * k] = q_[i];
    else
        for (std::size_t i = 0; i < r_.size(); ++i) c.r_[i * k] = r_[i];
    return c;
}

// ---------------------------------------------------------------------------
// parsing / formatting

namespace {

void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

mpz_class parse_integer(const std::string& s, std::size_t& i) {
    skip_ws(s, i);
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0) throw ParseError("expected integer in '" + s + "'");
    return mpz_class(s.substr(start, i - start));
}

// polynomial in `var` with integer coefficients, e.g. "t^2+2*t+1"
FpPoly parse_fp_poly(unsigned p, const std::string& var, const std::string& s, std::size_t& i,
                     std::size_t end) {
    FpPoly acc(p);
    bool first = true;
    while (true) {
        skip_ws(s, i);
        if (i >= end) break;
        long sign = 1;
        if (s[i] == '+') {
            ++i;
        } else if (s[i] == '-') {
            sign = -1;
            ++i;
        } else if (!first) {
            throw ParseError("expected '+' or '-' in polynomial '" + s + "'");
        }
        skip_ws(s, i);
        mpz_class coef = 1;
        bool saw_coef = false;
        if (i < end && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coef = parse_integer(s, i);
            saw_coef = true;
            skip_ws(s, i);
            if (i < end && s[i] == '*') {
                ++i;
                skip_ws(s, i);
            }
        }
        long expo = 0;
        if (i < end && s.compare(i, var.size(), var) == 0) {
            i += var.size();
            expo = 1;
            skip_ws(s, i);
            if (i < end && s[i] == '^') {
                ++i;
                expo = parse_integer(s, i).get_si();
                if (expo < 0) throw ParseError("negative exponent in polynomial '" + s + "'");
            }
        } else if (!saw_coef) {
            throw ParseError("expected term in polynomial '" + s + "'");
        }
        long c = static_cast<long>(mpz_class(sign * coef % p).get_si());
        FpPoly term = FpPoly::constant(p, c).shifted_up(static_cast<int>(expo));
        acc = acc + term;
        first = false;
    }
    return acc;
}

// "(poly)" starting at s[i] == '('; returns content, advances past ')'
FpPoly parse_paren_poly(unsigned p, const std::string& var, const std::string& s,
                        std::size_t& i) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != '(') {
        // bare polynomial with no parentheses: consume to end
        std::size_t end = s.size();
        return parse_fp_poly(p, var, s, i, end);
    }
    std::size_t close = s.find(')', i);
    if (close == std::string::npos) throw ParseError("unbalanced '(' in '" + s + "'");
    ++i;
    FpPoly out = parse_fp_poly(p, var, s, i, close);
    i = close + 1;
    return out;
}

} // namespace

Coeff Coeff::parse(const FieldPtr& f, const std::string& text) {
    std::size_t i = 0;
    if (f->kind() == FieldKind::PAdic) {
        mpz_class num = parse_integer(text, i);
        mpz_class den = 1;
        skip_ws(text, i);
        if (i < text.size() && text[i] == '/') {
            ++i;
            den = parse_integer(text, i);
            if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        }
        skip_ws(text, i);
        if (i != text.size()) throw ParseError("trailing characters in '" + text + "'");
        return from_mpq(f, mpq_class(num, den));
    }
    FpPoly num = parse_paren_poly(f->p(), f->var(), text, i);
    FpPoly den = FpPoly::constant(f->p(), 1);
    skip_ws(text, i);
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = parse_paren_poly(f->p(), f->var(), text, i);
        if (den.is_zero()) throw ParseError("zero denominator in '" + text + "'");
    }
    skip_ws(text, i);
    if (i != text.size()) throw ParseError("trailing characters in '" + text + "'");
    return from_fprat(f, FpRat(num, den));
}

std::string Coeff::str() const {
    auto part = [&](unsigned i) -> std::string {
        if (field_->kind() == FieldKind::PAdic) return q_[i].get_str();
        return r_[i].str(field_->var());
    };
    auto part_zero = [&](unsigned i) {
        return field_->kind() == FieldKind::PAdic ? q_[i] == 0 : r_[i].is_zero();
    };
    if (field_->ram() == 1) return part(0);
    std::string out;
    for (unsigned i = 0; i < field_->ram(); ++i) {
        if (part_zero(i)) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += part(0);
        } else {
            out += "(" + part(i) + ")*u";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace berklab
