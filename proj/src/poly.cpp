#include "berklab/poly.hpp"

#include <algorithm>

namespace berklab {

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly::Poly(FieldPtr f, std::vector<Coeff> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    trim();
}

Poly Poly::constant(const FieldPtr& f, const Coeff& c) { return Poly(f, {c}); }

Poly Poly::variable(const FieldPtr& f) {
    return Poly(f, {Coeff::zero(f), Coeff::one(f)});
}

Poly Poly::parse(const FieldPtr& f, const std::vector<std::string>& coeffs) {
    std::vector<Coeff> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(Coeff::parse(f, s));
    return Poly(f, std::move(c));
}

const Coeff& Poly::leading() const {
    if (c_.empty()) throw ZeroPolynomial("Poly::leading of zero polynomial");
    return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Coeff> out;
    out.reserve(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < std::max(c_.size(), o.c_.size()); ++i)
        out.push_back(coeff(i) + o.coeff(i));
    return Poly(f_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Coeff> out;
    out.reserve(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < std::max(c_.size(), o.c_.size()); ++i)
        out.push_back(coeff(i) - o.coeff(i));
    return Poly(f_, std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(f_);
    std::vector<Coeff> out(c_.size() + o.c_.size() - 1, Coeff::zero(f_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            out[i + j] = out[i + j] + c_[i] * o.c_[j];
        }
    }
    return Poly(f_, std::move(out));
}

Poly Poly::scaled(const Coeff& k) const {
    std::vector<Coeff> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c * k);
    return Poly(f_, std::move(out));
}

Poly Poly::shifted_up(int k) const {
    if (is_zero()) return *this;
    std::vector<Coeff> out(static_cast<std::size_t>(k), Coeff::zero(f_));
    out.insert(out.end(), c_.begin(), c_.end());
    return Poly(f_, std::move(out));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(Coeff::one(f_) / leading());
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw ZeroPolynomial("Poly::divmod by zero");
    Poly q(f_), r = *this;
    if (degree() < d.degree()) return {q, r};
    std::vector<Coeff> qc(static_cast<std::size_t>(degree() - d.degree()) + 1,
                          Coeff::zero(f_));
    while (!r.is_zero() && r.degree() >= d.degree()) {
        Coeff coef = r.leading() / d.leading();
        int k = r.degree() - d.degree();
        qc[static_cast<std::size_t>(k)] = coef;
        r = r - d.scaled(coef).shifted_up(k);
    }
    return {Poly(f_, std::move(qc)), r};
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly Poly::derivative() const {
    if (degree() < 1) return Poly(f_);
    std::vector<Coeff> out;
    out.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        out.push_back(c_[i] * Coeff::from_int(f_, static_cast<long>(i)));
    return Poly(f_, std::move(out));
}

Coeff Poly::eval(const Coeff& a) const {
    Coeff acc = Coeff::zero(f_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * a + c_[i];
    return acc;
}

Poly Poly::shift(const Coeff& a) const {
    if (degree() < 1 || a.is_zero()) return *this;
    std::vector<Coeff> out = c_;
    std::size_t n = out.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t j = n - 1; j-- > k;) out[j] = out[j] + a * out[j + 1];
    return Poly(f_, std::move(out));
}

int Poly::ord_at_zero() const {
    if (is_zero()) throw ZeroPolynomial("Poly::ord_at_zero of zero polynomial");
    int k = 0;
    while (c_[static_cast<std::size_t>(k)].is_zero()) ++k;
    return k;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Coeff& ci = c_[static_cast<std::size_t>(i)];
        if (ci.is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += ci.str();
        } else {
            out += "(" + ci.str() + ")*" + var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

Form Form::homogenize(const Poly& p, int d) {
    if (p.degree() > d) throw Error("DegreeTooHigh", "Form::homogenize: degree exceeds d");
    std::vector<Coeff> c;
    c.reserve(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) c.push_back(p.coeff(static_cast<std::size_t>(i)));
    return Form(p.field(), std::move(c));
}

bool Form::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Coeff& c) { return c.is_zero(); });
}

Poly Form::z_section() const { return Poly(f_, c_); }

Poly Form::w_section() const {
    std::vector<Coeff> rev(c_.rbegin(), c_.rend());
    return Poly(f_, std::move(rev));
}

Form Form::operator+(const Form& o) const {
    if (degree() != o.degree()) throw Error("DegreeMismatch", "Form::+ degree mismatch");
    std::vector<Coeff> out;
    out.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out.push_back(c_[i] + o.c_[i]);
    return Form(f_, std::move(out));
}

Form Form::operator-(const Form& o) const {
    if (degree() != o.degree()) throw Error("DegreeMismatch", "Form::- degree mismatch");
    std::vector<Coeff> out;
    out.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out.push_back(c_[i] - o.c_[i]);
    return Form(f_, std::move(out));
}

Form Form::operator*(const Form& o) const {
    std::vector<Coeff> out(c_.size() + o.c_.size() - 1, Coeff::zero(f_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            out[i + j] = out[i + j] + c_[i] * o.c_[j];
        }
    }
    return Form(f_, std::move(out));
}

Form Form::scaled(const Coeff& k) const {
    std::vector<Coeff> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c * k);
    return Form(f_, std::move(out));
}

Form Form::compose(const Form& g0, const Form& g1) const {
    if (g0.degree() != g1.degree())
        throw Error("DegreeMismatch", "Form::compose: inner forms of unequal degree");
    int d = degree();
    // power tables g0^i and g1^i for i = 0..d
    std::vector<Form> p0, p1;
    Form unit(f_, {Coeff::one(f_)});
    p0.push_back(unit);
    p1.push_back(unit);
    for (int i = 1; i <= d; ++i) {
        p0.push_back(p0.back() * g0);
        p1.push_back(p1.back() * g1);
    }
    Form acc(f_, std::vector<Coeff>(static_cast<std::size_t>(d * g0.degree()) + 1,
                                    Coeff::zero(f_)));
    for (int i = 0; i <= d; ++i) {
        if (c_[static_cast<std::size_t>(i)].is_zero()) continue;
        acc = acc + (p0[static_cast<std::size_t>(i)] * p1[static_cast<std::size_t>(d - i)])
                        .scaled(c_[static_cast<std::size_t>(i)]);
    }
    return acc;
}

Form Form::linear_substitute(const Coeff& a, const Coeff& b, const Coeff& c,
                             const Coeff& d) const {
    Form g0(f_, {b, a}); // a*z + b*w as slots [w-coeff, z-coeff]
    Form g1(f_, {d, c});
    return compose(g0, g1);
}

Val Form::min_coeff_valuation() const {
    Val best = Val::infinity();
    for (const auto& c : c_) best = min(best, c.valuation());
    return best;
}

std::string Form::str() const {
    std::string out;
    int d = degree();
    for (int i = d; i >= 0; --i) {
        const Coeff& ci = c_[static_cast<std::size_t>(i)];
        if (ci.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + ci.str() + ")";
        if (i > 0) out += "*z" + (i > 1 ? "^" + std::to_string(i) : "");
        if (i < d) out += "*w" + (d - i > 1 ? "^" + std::to_string(d - i) : "");
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

std::vector<NewtonSegment> newton_polygon(const Poly& P) {
    if (P.is_zero()) throw ZeroPolynomial("newton_polygon of zero polynomial");
    // points (i, v(c_i)) over nonzero coefficients, x already increasing
    std::vector<std::pair<long, mpq_class>> pts;
    for (int i = P.ord_at_zero(); i <= P.degree(); ++i) {
        const Coeff c = P.coeff(static_cast<std::size_t>(i));
        if (c.is_zero()) continue;
        pts.emplace_back(i, c.valuation().finite());
    }
    // lower convex hull, monotone chain
    std::vector<std::pair<long, mpq_class>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // drop b unless it turns strictly upward: keep if
            // slope(a,b) < slope(b,pt)
            mpq_class lhs = (b.second - a.second) * (pt.first - b.first);
            mpq_class rhs = (pt.second - b.second) * (b.first - a.first);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    std::vector<NewtonSegment> segs;
    for (std::size_t i = 1; i < hull.size(); ++i) {
        mpq_class slope = mpq_class(hull[i].second - hull[i - 1].second) /
                          mpq_class(hull[i].first - hull[i - 1].first);
        slope.canonicalize();
        segs.push_back({slope, static_cast<unsigned long>(hull[i].first - hull[i - 1].first)});
    }
    return segs;
}

unsigned long count_roots_in_disk(const Poly& P, const Coeff& a,
                                  const std::optional<mpq_class>& m) {
    if (P.is_zero()) throw ZeroPolynomial("count_roots_in_disk of zero polynomial");
    if (!m.has_value()) return static_cast<unsigned long>(std::max(P.degree(), 0));
    if (P.degree() == 0) return 0;
    Poly Q = P.shift(a);
    unsigned long count = static_cast<unsigned long>(Q.ord_at_zero()); // roots exactly at a
    for (const auto& seg : newton_polygon(Q)) {
        if (seg.slope <= -*m) count += seg.length;
    }
    return count;
}

namespace {

// Q(y) with Q(z^p) = P(z); requires all exponents in the support of P to be
// divisible by p (equivalently P' = 0 in characteristic p).
Poly p_power_contract(const Poly& P, unsigned p) {
    std::vector<Coeff> out;
    for (int i = 0; i <= P.degree(); i += static_cast<int>(p))
        out.push_back(P.coeff(static_cast<std::size_t>(i)));
    return Poly(P.field(), std::move(out));
}

} // namespace

unsigned long distinct_root_count(const Poly& P_in) {
    if (P_in.is_zero()) throw ZeroPolynomial("distinct_root_count of zero polynomial");
    const unsigned char_p =
        P_in.field()->kind() == FieldKind::LaurentRational ? P_in.field()->p() : 0;
    Poly P = P_in;
    unsigned long total = 0;
    while (P.degree() > 0) {
        Poly Pd = P.derivative();
        if (Pd.is_zero()) {
            // purely inseparable layer: P(z) = Q(z^p), same distinct roots
            P = p_power_contract(P, char_p);
            continue;
        }
        Poly g = Poly::gcd(P, Pd);
        Poly w = P.divmod(g).first; // the roots of multiplicity prime to char
        total += static_cast<unsigned long>(w.degree());
        // strip every w-root from P; what remains has all multiplicities
        // divisible by char_p (in characteristic 0 it is a constant)
        Poly T = P;
        while (true) {
            Poly h = Poly::gcd(T, w);
            if (h.degree() <= 0) break;
            T = T.divmod(h).first;
        }
        if (T.degree() <= 0) return total;
        P = p_power_contract(T, char_p);
    }
    return total;
}

namespace {

// determinant by Gaussian elimination over the coefficient field
Coeff determinant(std::vector<std::vector<Coeff>> a, const FieldPtr& f) {
    const std::size_t n = a.size();
    Coeff det = Coeff::one(f);
    bool negate = false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) return Coeff::zero(f);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            negate = !negate;
        }
        det = det * a[col][col];
        Coeff inv = Coeff::one(f) / a[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col].is_zero()) continue;
            Coeff factor = a[row][col] * inv;
            for (std::size_t k = col; k < n; ++k)
                a[row][k] = a[row][k] - factor * a[col][k];
        }
    }
    return negate ? -det : det;
}

// Sylvester determinant for coefficient vectors given in descending order,
// treated as degrees dp and dq even if the leading entries are zero.
Coeff sylvester(const std::vector<Coeff>& pdesc, const std::vector<Coeff>& qdesc, int dp,
                int dq, const FieldPtr& f) {
    const std::size_t n = static_cast<std::size_t>(dp + dq);
    if (n == 0) return Coeff::one(f);
    std::vector<std::vector<Coeff>> m(n, std::vector<Coeff>(n, Coeff::zero(f)));
    for (int r = 0; r < dq; ++r)
        for (int k = 0; k <= dp; ++k) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = pdesc[static_cast<std::size_t>(k)];
    for (int r = 0; r < dp; ++r)
        for (int k = 0; k <= dq; ++k) m[static_cast<std::size_t>(dq + r)][static_cast<std::size_t>(r + k)] = qdesc[static_cast<std::size_t>(k)];
    return determinant(std::move(m), f);
}

} // namespace

Coeff resultant(const Poly& P, const Poly& Q) {
    const FieldPtr& f = P.field();
    if (P.is_zero() || Q.is_zero()) return Coeff::zero(f);
    int dp = P.degree(), dq = Q.degree();
    std::vector<Coeff> pdesc, qdesc;
    for (int i = dp; i >= 0; --i) pdesc.push_back(P.coeff(static_cast<std::size_t>(i)));
    for (int i = dq; i >= 0; --i) qdesc.push_back(Q.coeff(static_cast<std::size_t>(i)));
    return sylvester(pdesc, qdesc, dp, dq, f);
}

Coeff resultant_form(const Form& F0, const Form& F1) {
    if (F0.degree() != F1.degree())
        throw Error("DegreeMismatch", "resultant_form: forms of unequal degree");
    const FieldPtr& f = F0.field();
    int d = F0.degree();
    std::vector<Coeff> pdesc, qdesc;
    for (int i = d; i >= 0; --i) {
        pdesc.push_back(F0.coeff(static_cast<std::size_t>(i)));
        qdesc.push_back(F1.coeff(static_cast<std::size_t>(i)));
    }
    return sylvester(pdesc, qdesc, d, d, f);
}

} // namespace berklab
