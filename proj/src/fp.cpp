#include "berklab/fp.hpp"

#include <algorithm>

namespace berklab {

void FpPoly::reduce_and_trim() {
    for (auto& x : c_) x %= p_;
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::constant(unsigned p, long value) {
    long r = value % static_cast<long>(p);
    if (r < 0) r += p;
    FpPoly out(p);
    if (r != 0) out.c_ = {static_cast<std::uint32_t>(r)};
    return out;
}

FpPoly FpPoly::variable(unsigned p) {
    FpPoly out(p);
    out.c_ = {0, 1};
    return out;
}

int FpPoly::ord() const {
    if (c_.empty()) throw ZeroPolynomial("FpPoly::ord on zero polynomial");
    int k = 0;
    while (c_[static_cast<std::size_t>(k)] == 0) ++k;
    return k;
}

FpPoly FpPoly::shifted_down(int k) const {
    FpPoly out(p_);
    if (static_cast<std::size_t>(k) >= c_.size()) return out;
    out.c_.assign(c_.begin() + k, c_.end());
    return out;
}

FpPoly FpPoly::shifted_up(int k) const {
    if (c_.empty()) return *this;
    FpPoly out(p_);
    out.c_.assign(static_cast<std::size_t>(k), 0);
    out.c_.insert(out.c_.end(), c_.begin(), c_.end());
    return out;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    FpPoly out(p_);
    out.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < out.c_.size(); ++i)
        out.c_[i] = (coeff(i) + o.coeff(i)) % p_;
    while (!out.c_.empty() && out.c_.back() == 0) out.c_.pop_back();
    return out;
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    FpPoly out(p_);
    out.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < out.c_.size(); ++i)
        out.c_[i] = (coeff(i) + p_ - o.coeff(i)) % p_;
    while (!out.c_.empty() && out.c_.back() == 0) out.c_.pop_back();
    return out;
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    FpPoly out(p_);
    if (c_.empty() || o.c_.empty()) return out;
    out.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            out.c_[i + j] = static_cast<std::uint32_t>(
                (out.c_[i + j] + static_cast<std::uint64_t>(c_[i]) * o.c_[j]) % p_);
        }
    }
    while (!out.c_.empty() && out.c_.back() == 0) out.c_.pop_back();
    return out;
}

FpPoly FpPoly::scaled(std::uint32_t k) const {
    FpPoly out(p_);
    k %= p_;
    if (k == 0 || c_.empty()) return out;
    out.c_ = c_;
    for (auto& x : out.c_)
        x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * k % p_);
    return out;
}

std::uint32_t fp_inv(std::uint32_t a, unsigned p) {
    // extended Euclid in F_p
    long t = 0, newt = 1;
    long r = static_cast<long>(p), newr = static_cast<long>(a % p);
    while (newr != 0) {
        long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw Error("NotInvertible", "fp_inv: argument not a unit");
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

FpPoly FpPoly::monic() const {
    if (c_.empty()) return *this;
    return scaled(fp_inv(c_.back(), p_));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
    if (d.is_zero()) throw ZeroPolynomial("FpPoly::divmod by zero");
    FpPoly q(p_), r = *this;
    if (degree() < d.degree()) return {q, r};
    q.c_.assign(static_cast<std::size_t>(degree() - d.degree()) + 1, 0);
    std::uint32_t lead_inv = fp_inv(d.leading(), p_);
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        std::uint32_t coef = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(r.leading()) * lead_inv % p_);
        q.c_[static_cast<std::size_t>(k)] = coef;
        r = r - d.scaled(coef).shifted_up(k);
    }
    while (!q.c_.empty() && q.c_.back() == 0) q.c_.pop_back();
    return {q, r};
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string FpPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        std::uint32_t ci = c_[static_cast<std::size_t>(i)];
        if (ci == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(ci);
        } else {
            if (ci != 1) out += std::to_string(ci) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

FpRat::FpRat(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ZeroPolynomial("FpRat: zero denominator");
    if (num_.is_zero()) {
        den_ = FpPoly::constant(num_.p(), 1);
        return;
    }
    FpPoly g = FpPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    std::uint32_t lead_inv = fp_inv(den_.leading(), num_.p());
    num_ = num_.scaled(lead_inv);
    den_ = den_.scaled(lead_inv);
}

FpRat FpRat::operator+(const FpRat& o) const {
    return FpRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FpRat FpRat::operator-(const FpRat& o) const {
    return FpRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

FpRat FpRat::operator-() const {
    return FpRat(FpPoly(p()) - num_, den_);
}

FpRat FpRat::operator*(const FpRat& o) const {
    return FpRat(num_ * o.num_, den_ * o.den_);
}

FpRat FpRat::operator/(const FpRat& o) const {
    if (o.is_zero()) throw ZeroPolynomial("FpRat: division by zero");
    return FpRat(num_ * o.den_, den_ * o.num_);
}

int FpRat::ord() const {
    if (is_zero()) throw ZeroPolynomial("FpRat::ord of zero");
    return num_.ord() - den_.ord();
}

std::uint32_t FpRat::residue() const {
    if (is_zero()) return 0;
    int o = ord();
    if (o < 0) throw Error("NegativeValuation", "FpRat::residue: negative order at t");
    if (o > 0) return 0;
    int k = num_.ord(); // shared t-power of num and den
    FpPoly n = num_.shifted_down(k);
    FpPoly d = den_.shifted_down(den_.ord());
    // den_.ord() == k when ord()==0 and num_.ord()==k; den(0) != 0 afterwards
    return static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(n.eval0()) * fp_inv(d.eval0(), p()) % p());
}

std::string FpRat::str(const std::string& var) const {
    std::string out = "(" + num_.str(var) + ")";
    if (!den_.is_one()) out += "/(" + den_.str(var) + ")";
    return out;
}

} // namespace berklab
