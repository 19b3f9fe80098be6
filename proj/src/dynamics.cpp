#include "berklab/dynamics.hpp"

namespace berklab {

Mobius::Mobius(Coeff a, Coeff b, Coeff c, Coeff d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (det().is_zero()) throw SingularMatrix("Mobius: zero determinant");
}

Mobius Mobius::identity(const FieldPtr& f) {
    return Mobius(Coeff::one(f), Coeff::zero(f), Coeff::zero(f), Coeff::one(f));
}

Mobius Mobius::disk_to_unit(const Coeff& a, const Coeff& s) {
    const FieldPtr& f = a.field();
    return Mobius(Coeff::one(f), -a, Coeff::zero(f), s);
}

Mobius Mobius::inverse() const { return Mobius(d_, -b_, -c_, a_); }

ProjPoint Mobius::apply(const ProjPoint& z) const {
    return ProjPoint(a_ * z.z0() + b_ * z.z1(), c_ * z.z0() + d_ * z.z1());
}

bool Mobius::is_identity_like() const {
    return b_.is_zero() && c_.is_zero() && a_ == d_;
}

std::string Mobius::str() const {
    return "[[" + a_.str() + ", " + b_.str() + "], [" + c_.str() + ", " + d_.str() + "]]";
}

// ---------------------------------------------------------------------------

namespace {

// scale both forms so the minimum coefficient valuation is 0; returns the
// valuation of the scalar that relates the input to the normalized pair
mpq_class normalize_pair(Form& f0, Form& f1) {
    Val m = min(f0.min_coeff_valuation(), f1.min_coeff_valuation());
    if (m.is_infinity()) throw DegenerateLift("rational map: zero lift pair");
    if (m == Val(mpq_class(0))) return mpq_class(0);
    Coeff scale = Coeff::uniformizer_power(f0.field(), -m.finite());
    f0 = f0.scaled(scale);
    f1 = f1.scaled(scale);
    return m.finite();
}

} // namespace

RationalMap::RationalMap(const Form& f0, const Form& f1)
    : f0_(f0), f1_(f1), shift_(0), cache_(std::make_shared<IterateCache>()) {
    if (f0_.degree() != f1_.degree())
        throw DegenerateLift("rational map: lift forms of unequal degree");
    if (f0_.degree() < 1) throw DegenerateLift("rational map: degree must be >= 1");
    shift_ = normalize_pair(f0_, f1_);
    if (resultant_form(f0_, f1_).is_zero())
        throw DegenerateLift("rational map: resultant vanishes (degenerate lift)");
}

RationalMap::RationalMap(Form f0, Form f1, mpq_class shift)
    : f0_(std::move(f0)), f1_(std::move(f1)), shift_(std::move(shift)),
      cache_(std::make_shared<IterateCache>()) {
    shift_ += normalize_pair(f0_, f1_);
}

RationalMap RationalMap::from_fraction(const Poly& num, const Poly& den) {
    if (num.is_zero() && den.is_zero())
        throw DegenerateLift("rational map: 0/0");
    int d = std::max(num.degree(), den.degree());
    return RationalMap(Form::homogenize(num, d), Form::homogenize(den, d));
}

RationalMap RationalMap::with_reference_reset() const {
    RationalMap out = *this;
    out.shift_ = 0;
    out.cache_ = std::make_shared<IterateCache>();
    return out;
}

RationalMap RationalMap::embedded(const FieldPtr& target) const {
    auto embed_form = [&](const Form& f) {
        std::vector<Coeff> c;
        c.reserve(f.coeffs().size());
        for (const auto& x : f.coeffs()) c.push_back(x.embed(target));
        return Form(target, std::move(c));
    };
    return RationalMap(embed_form(f0_), embed_form(f1_), shift_);
}

ProjPoint RationalMap::eval(const ProjPoint& z) const {
    auto eval_form = [&](const Form& f) {
        Coeff acc = Coeff::zero(field());
        Coeff zp = Coeff::one(field());
        std::vector<Coeff> zpow;
        for (int i = 0; i <= degree(); ++i) {
            zpow.push_back(zp);
            zp = zp * z.z0();
        }
        Coeff wp = Coeff::one(field());
        for (int i = degree(); i >= 0; --i) {
            acc = acc + f.coeff(static_cast<std::size_t>(i)) * zpow[static_cast<std::size_t>(i)] * wp;
            wp = wp * z.z1();
        }
        return acc;
    };
    return ProjPoint(eval_form(f0_), eval_form(f1_));
}

std::string RationalMap::str() const {
    return "(" + f0_.str() + ") / (" + f1_.str() + ")";
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
    require_same_field(f.field(), g.field(), "compose");
    Form h0 = f.lift0().compose(g.lift0(), g.lift1());
    Form h1 = f.lift1().compose(g.lift0(), g.lift1());
    // reference composition = lambda_f * Lambda_g^{deg f} * (stored comp)
    mpq_class shift = f.lift_shift() + g.lift_shift() * f.degree();
    return RationalMap(std::move(h0), std::move(h1), std::move(shift));
}

RationalMap iterate(const RationalMap& f, unsigned n) {
    if (n == 0) {
        const FieldPtr& k = f.field();
        return RationalMap(Form(k, {Coeff::zero(k), Coeff::one(k)}),
                           Form(k, {Coeff::one(k), Coeff::zero(k)}));
    }
    if (n == 1) return f;
    {
        std::lock_guard<std::mutex> lock(f.cache_->mu);
        auto it = f.cache_->memo.find(n);
        if (it != f.cache_->memo.end()) return it->second;
    }
    RationalMap result = compose(f, iterate(f, n - 1));
    {
        std::lock_guard<std::mutex> lock(f.cache_->mu);
        f.cache_->memo.emplace(n, result);
    }
    return result;
}

// ---------------------------------------------------------------------------

namespace {

struct FpForm {
    FpPoly zsec;
    int wmult; // form = w^wmult * homogenization of zsec
    bool zero;
};

FpForm reduce_form(const Form& f) {
    unsigned p = f.field()->p();
    std::vector<std::uint32_t> sec;
    for (const auto& c : f.coeffs()) sec.push_back(c.residue());
    FpPoly zsec(p, sec);
    if (zsec.is_zero()) return {zsec, 0, true};
    return {zsec, f.degree() - zsec.degree(), false};
}

} // namespace

ReductionReport reduce(const RationalMap& f) {
    Val m = min(f.lift0().min_coeff_valuation(), f.lift1().min_coeff_valuation());
    if (m != Val(mpq_class(0)))
        throw NotNormalized("reduce: lift is not normalized");
    int d = f.degree();
    FpForm r0 = reduce_form(f.lift0());
    FpForm r1 = reduce_form(f.lift1());
    // the reduced pair lives over the residue field F_p in the dynamical
    // variable, for both field kinds
    ReductionReport rep{FpPoly(f.field()->p()), FpPoly(f.field()->p()), d, 0, 0, "z"};
    if (r0.zero || r1.zero) {
        // the whole nonzero form cancels; the induced map is constant
        rep.cancelled_degree = d;
        rep.reduced_degree = 0;
        rep.num = r0.zero ? FpPoly(f.field()->p()) : FpPoly::constant(f.field()->p(), 1);
        rep.den = r1.zero ? FpPoly(f.field()->p()) : FpPoly::constant(f.field()->p(), 1);
        return rep;
    }
    FpPoly g = FpPoly::gcd(r0.zsec, r1.zsec);
    int common_w = std::min(r0.wmult, r1.wmult);
    rep.cancelled_degree = g.degree() + common_w;
    rep.reduced_degree = d - rep.cancelled_degree;
    rep.num = r0.zsec.divmod(g).first;
    rep.den = r1.zsec.divmod(g).first;
    return rep;
}

bool good_reduction(const RationalMap& f) {
    ReductionReport rep = reduce(f);
    bool by_degree = rep.reduced_degree == f.degree();
    Val res_val = resultant_form(f.lift0(), f.lift1()).valuation();
    bool by_resultant = res_val == Val(mpq_class(0));
    if (by_degree != by_resultant)
        throw Error("InternalCheck",
                    "good_reduction: degree and resultant criteria disagree");
    return by_degree;
}

RationalMap conjugate(const RationalMap& f, const Mobius& h) {
    if (h.det().is_zero()) throw SingularMatrix("conjugate: singular matrix");
    // lift of h o f o h^{-1}: apply f's forms to the adjugate substitution,
    // then act by h on the resulting pair
    Form g0 = f.lift0().linear_substitute(h.d(), -h.b(), -h.c(), h.a());
    Form g1 = f.lift1().linear_substitute(h.d(), -h.b(), -h.c(), h.a());
    Form n0 = g0.scaled(h.a()) + g1.scaled(h.b());
    Form n1 = g0.scaled(h.c()) + g1.scaled(h.d());
    return RationalMap(n0, n1);
}

TypeIIPoint map_typeII(const RationalMap& f, const TypeIIPoint& S) {
    require_same_field(f.field(), S.field(), "map_typeII");
    Poly num = f.lift0().z_section();
    Poly den = f.lift1().z_section();
    unsigned long poles = count_roots_in_disk(den, S.center(), S.exponent());
    if (poles == 0) {
        Coeff fa = num.eval(S.center()) / den.eval(S.center());
        Val t = gauss_seminorm(num - den.scaled(fa), S) - gauss_seminorm(den, S);
        return TypeIIPoint(fa, t.finite());
    }
    unsigned long zeros = count_roots_in_disk(num, S.center(), S.exponent());
    if (zeros > 0)
        throw DiskContainsZeroAndPole(
            "map_typeII: disk meets both zeros and poles; subdivide at depth " +
            S.exponent().get_str() + " + 1/ram and retry per piece");
    // compute through 1/f, then invert the chart of the image
    Coeff ga = den.eval(S.center()) / num.eval(S.center());
    Val t = gauss_seminorm(den - num.scaled(ga), S) - gauss_seminorm(num, S);
    return TypeIIPoint::from_inverted(ga, t.finite());
}

bool non_exceptional_witness(const RationalMap& f, const ProjPoint& a) {
    if (f.degree() < 2)
        throw Error("DegreeTooLow", "non_exceptional_witness needs deg f > 1");
    RationalMap f2 = iterate(f, 2);
    Form w = a.is_infinity()
                 ? f2.lift1()
                 : f2.lift0().scaled(a.z1()) - f2.lift1().scaled(a.z0());
    Poly wsec = w.z_section();
    unsigned long distinct = wsec.degree() > 0 ? distinct_root_count(wsec) : 0;
    if (wsec.degree() < w.degree()) distinct += 1; // solution at infinity
    return distinct >= 2;
}

// ---------------------------------------------------------------------------

namespace {

struct PgrContext {
    const RationalMap* map; // over the search field
    FieldPtr field;
    unsigned p;
    mpq_class step;   // 1 / denom
    mpq_class depth;  // exploration bound on |m|
    unsigned long budget;
    PgrResult result;

    mpq_class objective(const Coeff& center, const mpq_class& m, Mobius& h_out) const {
        Coeff scale = Coeff::uniformizer_power(field, m);
        Mobius h = Mobius::disk_to_unit(center, scale);
        RationalMap conj = conjugate(*map, h);
        h_out = h;
        Val v = resultant_form(conj.lift0(), conj.lift1()).valuation();
        return v.finite();
    }

    void explore(const Coeff& center, const mpq_class& m, const mpq_class* parent_obj) {
        if (result.found || result.stats.budget_exhausted) return;
        if (result.stats.visited >= budget) {
            result.stats.budget_exhausted = true;
            return;
        }
        ++result.stats.visited;
        Mobius h = Mobius::identity(field);
        mpq_class obj = objective(center, m, h);
        if (result.stats.visited == 1 || obj < result.best_objective)
            result.best_objective = obj;
        if (obj == 0) {
            RationalMap conj = conjugate(*map, h);
            if (!good_reduction(conj))
                throw Error("InternalCheck", "pgr_search: zero objective not certified");
            result.found = true;
            result.point = TypeIIPoint(center, m);
            result.conjugator = h;
            return;
        }
        if (parent_obj != nullptr && obj > *parent_obj) {
            ++result.stats.pruned;
            return;
        }
        mpq_class next = m + step;
        if (next > depth) return;
        Coeff offset_scale = Coeff::uniformizer_power(field, m);
        for (unsigned r = 0; r < p && !result.found; ++r) {
            Coeff child = center + Coeff::from_int(field, static_cast<long>(r)) * offset_scale;
            explore(child, next, &obj);
        }
    }
};

} // namespace

PgrResult pgr_search(const RationalMap& f, unsigned depth, unsigned denom,
                     unsigned long node_budget) {
    if (f.degree() < 2) throw Error("DegreeTooLow", "pgr_search needs deg f > 1");
    if (denom == 0) throw Error("BadDenominator", "pgr_search: denom must be positive");
    FieldPtr search_field =
        denom == 1 ? f.field() : f.field()->extended(f.field()->ram() * denom);
    RationalMap fe = denom == 1 ? f : f.embedded(search_field);
    PgrContext ctx{&fe,
                   search_field,
                   search_field->p(),
                   mpq_class(1, denom),
                   mpq_class(static_cast<long>(depth)),
                   node_budget,
                   PgrResult{}};
    ctx.result.depth = depth;
    ctx.result.denom = denom;
    ctx.result.search_field = search_field;
    // walk from the top disk D(0, p^{depth}); along the path toward any
    // minimizer the objective is non-increasing, so strict increases prune
    ctx.explore(Coeff::zero(search_field), -ctx.depth, nullptr);
    return ctx.result;
}

} // namespace berklab
