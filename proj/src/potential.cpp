#include "berklab/potential.hpp"

namespace berklab {

namespace {

// lambda(phi at S) = log_p [phi]_S = -gauss_seminorm
mpq_class lam(const Poly& phi, const TypeIIPoint& S) {
    return -gauss_seminorm(phi, S).finite();
}

mpq_class lam_coordinate(const TypeIIPoint& S) {
    // [z]_S = max(|a|, p^{-m})
    Val v = min(S.center().valuation(), Val(S.exponent()));
    return -v.finite();
}

mpz_class power_of(long base, unsigned e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return out;
}

} // namespace

PotentialValue t_h(const RationalMap& H, const TypeIIPoint& S) {
    mpq_class l0 = lam(H.lift0().z_section(), S);
    mpq_class l1 = lam(H.lift1().z_section(), S);
    mpq_class lz = lam_coordinate(S);
    mpq_class stored = std::max(l0, l1) - std::max(lz, mpq_class(0)) * H.degree();
    return stored - H.lift_shift();
}

PotentialValue t_h_inverted_chart(const RationalMap& H, const Coeff& a_w,
                                  const mpq_class& m_w) {
    // sections through Z = (1, w); the coordinate norm becomes max(1, |w|^-1)
    TypeIIPoint Sw(a_w, m_w); // the w-disk, used as a seminorm evaluation chart
    mpq_class l0 = lam(H.lift0().w_section(), Sw);
    mpq_class l1 = lam(H.lift1().w_section(), Sw);
    mpq_class lw = lam_coordinate(Sw);
    mpq_class stored = std::max(l0, l1) - std::max(lw, mpq_class(0)) * H.degree();
    return stored - H.lift_shift();
}

GreenApprox green(const RationalMap& f, const TypeIIPoint& S, const mpq_class& eps,
                  unsigned n_cap) {
    if (f.degree() < 2) throw Error("DegreeTooLow", "green needs deg f > 1");
    if (eps <= 0) throw Error("BadTolerance", "green: eps must be positive");
    // the tail bound sup |T_F| <= v(Res F~) holds for the normalized lift,
    // so the potential is computed for that representative (scaling a lift
    // only shifts the limit by a constant)
    RationalMap base = f.with_reference_reset();
    mpq_class M = resultant_form(base.lift0(), base.lift1()).valuation().finite();
    const long d = base.degree();
    for (unsigned n = 1; n <= n_cap; ++n) {
        mpq_class bound = M / (mpq_class(power_of(d, n)) * (d - 1));
        if (bound <= eps) {
            RationalMap fn = iterate(base, n);
            mpq_class value = t_h(fn, S) / mpq_class(power_of(d, n));
            return GreenApprox{value, n, bound};
        }
    }
    throw ToleranceUnreachable("green: tolerance not certified within n <= " +
                               std::to_string(n_cap));
}

std::optional<PotentialValue> green_telescoped(const RationalMap& f, const TypeIIPoint& S,
                                               unsigned n) {
    RationalMap base = f.with_reference_reset();
    const long d = base.degree();
    mpq_class acc = 0;
    TypeIIPoint s = S;
    for (unsigned k = 0; k < n; ++k) {
        acc += t_h(base, s) / mpq_class(power_of(d, k + 1));
        if (k + 1 < n) {
            try {
                s = map_typeII(base, s);
            } catch (const DiskContainsZeroAndPole&) {
                return std::nullopt;
            }
        }
    }
    return acc;
}

PotentialValue chordal_can(const RationalMap& fn, const RationalMap& g,
                           const TypeIIPoint& S) {
    require_same_field(fn.field(), g.field(), "chordal_can");
    Form wedge = fn.lift0() * g.lift1() - fn.lift1() * g.lift0();
    if (wedge.is_zero())
        throw IdenticallyEqual("chordal_can: the two maps coincide; the root divisor "
                               "is undefined");
    mpq_class lw = lam(wedge.z_section(), S);
    mpq_class lf = std::max(lam(fn.lift0().z_section(), S), lam(fn.lift1().z_section(), S));
    mpq_class lg = std::max(lam(g.lift0().z_section(), S), lam(g.lift1().z_section(), S));
    return lw - lf - lg;
}

PotentialValue log_plus_abs(const TypeIIPoint& S) {
    return std::max(lam_coordinate(S), mpq_class(0));
}

// ---------------------------------------------------------------------------

namespace {

struct Piece {
    mpq_class lo, hi;
    mpq_class slope;
};

class EdgeResolver {
public:
    EdgeResolver(const std::function<PotentialValue(const TypeIIPoint&)>& values,
                 const Coeff& center)
        : values_(values), center_(center) {}

    std::vector<Piece> resolve(const mpq_class& lo, const mpq_class& hi, unsigned depth) {
        return resolve_impl(lo, value_at(lo), hi, value_at(hi), depth);
    }

private:
    mpq_class value_at(const mpq_class& m) { return values_(TypeIIPoint(center_, m)); }

    static mpq_class slope_of(const mpq_class& x0, const mpq_class& v0, const mpq_class& x1,
                              const mpq_class& v1) {
        return (v1 - v0) / (x1 - x0);
    }

    bool consistent(const mpq_class& lo, const mpq_class& vlo, const mpq_class& hi,
                    const mpq_class& vhi, mpq_class& slope_out) {
        mpq_class q = (lo + hi) / 2;
        mpq_class vq = value_at(q);
        mpq_class s1 = slope_of(lo, vlo, q, vq);
        mpq_class s2 = slope_of(q, vq, hi, vhi);
        slope_out = s1;
        return s1 == s2;
    }

    static void append(std::vector<Piece>& out, std::vector<Piece> more) {
        for (auto& p : more) {
            if (!out.empty() && out.back().slope == p.slope) {
                out.back().hi = p.hi; // not a genuine kink
            } else {
                out.push_back(std::move(p));
            }
        }
    }

    std::vector<Piece> resolve_impl(const mpq_class& lo, const mpq_class& vlo,
                                    const mpq_class& hi, const mpq_class& vhi,
                                    unsigned depth) {
        mpq_class s;
        if (consistent(lo, vlo, hi, vhi, s)) return {{lo, hi, s}};
        if (depth == 0)
            throw InsufficientResolution("tree_laplacian: probe subdivision exhausted");
        // single-kink hypothesis: end slopes from the quarter points pin the
        // breakpoint as an exact line intersection
        mpq_class q = (lo + hi) / 2, vq = value_at(q);
        mpq_class ql = (lo + q) / 2, qr = (q + hi) / 2;
        mpq_class sl = slope_of(lo, vlo, ql, value_at(ql));
        mpq_class sr = slope_of(qr, value_at(qr), hi, vhi);
        if (sl != sr) {
            mpq_class b = (vhi - vlo + sl * lo - sr * hi) / (sl - sr);
            if (lo < b && b < hi) {
                mpq_class vb = vlo + sl * (b - lo);
                mpq_class tmp;
                if (value_at(b) == vb && consistent(lo, vlo, b, vb, tmp) &&
                    consistent(b, vb, hi, vhi, tmp)) {
                    std::vector<Piece> out{{lo, b, sl}};
                    append(out, {{b, hi, sr}});
                    return out;
                }
            }
        }
        std::vector<Piece> out = resolve_impl(lo, vlo, q, vq, depth - 1);
        append(out, resolve_impl(q, vq, hi, vhi, depth - 1));
        return out;
    }

    const std::function<PotentialValue(const TypeIIPoint&)>& values_;
    Coeff center_;
};

} // namespace

TreeMeasure tree_laplacian(const std::function<PotentialValue(const TypeIIPoint&)>& values,
                           const FiniteTree& tree, unsigned max_depth) {
    TreeMeasure out(tree, mpq_class(0));
    for (std::size_t child = 0; child < tree.size(); ++child) {
        std::size_t par = tree.parent(child);
        if (par == FiniteTree::npos) continue;
        // the edge is parametrized by the radius exponent with the child's
        // center valid along all of it
        EdgeResolver rs(values, tree.vertex(child).center());
        std::vector<Piece> pieces =
            rs.resolve(tree.vertex(par).exponent(), tree.vertex(child).exponent(), max_depth);
        out.add_mass(tree.vertex(par), pieces.front().slope);
        out.add_mass(tree.vertex(child), -pieces.back().slope);
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
            out.add_mass(TypeIIPoint(tree.vertex(child).center(), pieces[i].hi),
                         pieces[i + 1].slope - pieces[i].slope);
        }
    }
    out.validate();
    return out;
}

std::vector<AprioriEntry> apriori_sequence(const RationalMap& f, const RationalMap& g,
                                           const std::vector<TypeIIPoint>& samples,
                                           unsigned n_max) {
    if (samples.empty()) throw Error("NoSamples", "apriori_sequence: empty sample list");
    if (f.degree() < 2) throw Error("DegreeTooLow", "apriori_sequence needs deg f > 1");
    if (g.degree() < 1) throw Error("DegreeTooLow", "apriori_sequence needs deg g > 0");
    std::vector<AprioriEntry> out;
    for (unsigned n = 1; n <= n_max; ++n) {
        RationalMap fn = iterate(f, n);
        AprioriEntry entry{n, false, mpq_class(0)};
        mpz_class denom = power_of(f.degree(), n) + g.degree();
        bool first = true;
        for (const auto& s : samples) {
            mpq_class v;
            try {
                v = chordal_can(fn, g, s) / mpq_class(denom);
            } catch (const IdenticallyEqual&) {
                entry.identically_equal = true;
                break;
            }
            if (first || v > entry.s_n) entry.s_n = v;
            first = false;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace berklab
