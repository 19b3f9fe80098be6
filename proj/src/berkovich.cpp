#include "berklab/berkovich.hpp"

namespace berklab {

ProjPoint::ProjPoint(Coeff z0, Coeff z1) : z0_(std::move(z0)), z1_(std::move(z1)) {
    if (z0_.is_zero() && z1_.is_zero())
        throw InvalidProjectivePoint("projective point (0 : 0)");
}

ProjPoint ProjPoint::affine(const Coeff& a) { return ProjPoint(a, Coeff::one(a.field())); }

ProjPoint ProjPoint::infinity(const FieldPtr& f) {
    return ProjPoint(Coeff::one(f), Coeff::zero(f));
}

bool ProjPoint::operator==(const ProjPoint& o) const {
    return (z0_ * o.z1_ - z1_ * o.z0_).is_zero();
}

std::string ProjPoint::str() const {
    if (is_infinity()) return "inf";
    if (z1_ == Coeff::one(field())) return z0_.str();
    return "[" + z0_.str() + " : " + z1_.str() + "]";
}

TypeIIPoint::TypeIIPoint(Coeff center, mpq_class radius_exponent)
    : a_(std::move(center)), m_(std::move(radius_exponent)) {
    m_.canonicalize();
}

TypeIIPoint TypeIIPoint::gauss(const FieldPtr& f) {
    return TypeIIPoint(Coeff::zero(f), mpq_class(0));
}

TypeIIPoint TypeIIPoint::from_inverted(const Coeff& a_w, const mpq_class& m_w) {
    Val va = a_w.valuation();
    if (va >= Val(m_w)) {
        // the w-disk contains w = 0; in the z-chart this is the disk
        // D(0, p^{+m_w})
        return TypeIIPoint(Coeff::zero(a_w.field()), -m_w);
    }
    // 0 outside: inversion maps the disk to D(1/a_w, p^{-(m_w - 2 v(a_w))})
    mpq_class mz = m_w - 2 * va.finite();
    return TypeIIPoint(Coeff::one(a_w.field()) / a_w, mz);
}

bool TypeIIPoint::is_gauss() const { return m_ == 0 && a_.valuation() >= Val(mpq_class(0)); }

bool TypeIIPoint::operator==(const TypeIIPoint& o) const {
    return m_ == o.m_ && (a_ - o.a_).valuation() >= Val(m_);
}

bool TypeIIPoint::leq(const TypeIIPoint& o) const {
    return m_ >= o.m_ && (a_ - o.a_).valuation() >= Val(o.m_);
}

std::string TypeIIPoint::str() const {
    return "D(" + a_.str() + "; " + m_.get_str() + ")";
}

TypeIIPoint TypeIIPoint::parse(const FieldPtr& f, const std::string& text) {
    auto fail = [&]() -> TypeIIPoint {
        throw ParseError("bad point '" + text + "', expected D(a; m)[@inv]");
    };
    std::size_t open = text.find('(');
    if (open == std::string::npos || text.substr(0, open) != "D") return fail();
    std::size_t close = text.rfind(')');
    if (close == std::string::npos || close < open) return fail();
    std::string body = text.substr(open + 1, close - open - 1);
    std::size_t semi = body.rfind(';');
    if (semi == std::string::npos) return fail();
    std::string a_str = body.substr(0, semi);
    std::string m_str = body.substr(semi + 1);
    std::string tail = text.substr(close + 1);
    while (!m_str.empty() && m_str.front() == ' ') m_str.erase(m_str.begin());
    while (!m_str.empty() && m_str.back() == ' ') m_str.pop_back();
    Coeff a = Coeff::parse(f, a_str);
    mpq_class m;
    try {
        m = mpq_class(m_str);
        m.canonicalize();
    } catch (const std::exception&) {
        return fail();
    }
    if (tail == "@inv") return from_inverted(a, m);
    if (!tail.empty()) return fail();
    return TypeIIPoint(std::move(a), std::move(m));
}

Val gauss_seminorm(const Poly& phi, const TypeIIPoint& S) {
    if (phi.is_zero()) return Val::infinity();
    Poly shifted = phi.shift(S.center());
    Val best = Val::infinity();
    for (int i = 0; i <= shifted.degree(); ++i) {
        const Coeff c = shifted.coeff(static_cast<std::size_t>(i));
        if (c.is_zero()) continue;
        best = min(best, c.valuation() + Val(S.exponent() * i));
    }
    return best;
}

TypeIIPoint join(const TypeIIPoint& S, const TypeIIPoint& Sp) {
    require_same_field(S.field(), Sp.field(), "join");
    Val sep = (S.center() - Sp.center()).valuation();
    mpq_class m = std::min(S.exponent(), Sp.exponent());
    if (!sep.is_infinity() && sep.finite() < m) m = sep.finite();
    return TypeIIPoint(S.center(), m);
}

Val chordal(const ProjPoint& z, const ProjPoint& w) {
    require_same_field(z.field(), w.field(), "chordal");
    Val wedge = (z.z0() * w.z1() - z.z1() * w.z0()).valuation();
    Val nz = min(z.z0().valuation(), z.z1().valuation());
    Val nw = min(w.z0().valuation(), w.z1().valuation());
    if (wedge.is_infinity()) return Val::infinity();
    return wedge - nz - nw;
}

mpq_class hyperbolic_distance(const TypeIIPoint& S, const TypeIIPoint& Sp) {
    TypeIIPoint j = join(S, Sp);
    return S.exponent() + Sp.exponent() - 2 * j.exponent();
}

Direction::Direction(const TypeIIPoint& base, const TypeIIPoint& rep) : base_(base) {
    if (rep == base) throw Error("BadDirection", "direction representative equals base");
    classify(rep.center(), Val(rep.exponent()));
}

Direction::Direction(const TypeIIPoint& base, const ProjPoint& rep) : base_(base) {
    if (rep.is_infinity()) {
        up_ = true;
        return;
    }
    classify(rep.z0() / rep.z1(), Val::infinity());
}

void Direction::classify(const Coeff& rep_center, const Val& rep_depth) {
    // the representative lies below base iff its disk is contained in
    // base's disk; otherwise the path to it leaves through infinity side
    bool below = rep_depth >= Val(base_.exponent()) &&
                 (rep_center - base_.center()).valuation() >= Val(base_.exponent());
    if (!below) {
        up_ = true;
        return;
    }
    down_ = rep_center;
}

bool Direction::operator==(const Direction& o) const {
    if (!(base_ == o.base_)) return false;
    if (up_ || o.up_) return up_ == o.up_;
    // same residue branch iff the centers agree strictly below the base level
    return (*down_ - *o.down_).valuation() > Val(base_.exponent());
}

} // namespace berklab
