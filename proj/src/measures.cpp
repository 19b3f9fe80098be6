#include "berklab/measures.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace berklab {

// --- TreeMeasure -----------------------------------------------------------

TreeMeasure TreeMeasure::dirac(const FiniteTree& tree, const TypeIIPoint& at) {
    TreeMeasure out(tree, mpq_class(1));
    out.add_mass(at, mpq_class(1));
    return out;
}

void TreeMeasure::add_mass(const TypeIIPoint& at, const mpq_class& mass) {
    if (mass == 0) return;
    for (auto& a : atoms_) {
        if (a.point == at) {
            a.mass += mass;
            if (a.mass == 0) {
                a = atoms_.back();
                atoms_.pop_back();
            }
            return;
        }
    }
    atoms_.push_back({at, mass});
}

mpq_class TreeMeasure::mass_at(const TypeIIPoint& at) const {
    for (const auto& a : atoms_)
        if (a.point == at) return a.mass;
    return 0;
}

TreeMeasure TreeMeasure::scaled(const mpq_class& k) const {
    TreeMeasure out(tree_, total_ * k);
    for (const auto& a : atoms_) out.add_mass(a.point, a.mass * k);
    return out;
}

void TreeMeasure::validate() const {
    mpq_class sum = 0;
    for (const auto& a : atoms_) sum += a.mass;
    if (sum != total_)
        throw Error("MassConservation", "tree measure: atoms sum to " + sum.get_str() +
                                            ", declared " + total_.get_str());
}

bool TreeMeasure::same_support_and_masses(const TreeMeasure& o) const {
    for (const auto& a : atoms_)
        if (o.mass_at(a.point) != a.mass) return false;
    for (const auto& a : o.atoms_)
        if (mass_at(a.point) != a.mass) return false;
    return true;
}

std::string TreeMeasure::str() const {
    std::string out = "{";
    for (const auto& a : atoms_) {
        if (out.size() > 1) out += ", ";
        out += a.point.str() + ": " + a.mass.get_str();
    }
    return out + "}";
}

mpq_class tv_distance(const TreeMeasure& mu, const TreeMeasure& nu) {
    if (!mu.tree().same_tree(nu.tree()))
        throw TreeMismatch("tv_distance: measures live on different trees");
    if (mu.total() != 1 || nu.total() != 1)
        throw Error("NotProbability", "tv_distance: measures must be probability measures");
    mu.validate();
    nu.validate();
    mpq_class acc = 0;
    for (const auto& a : mu.atoms()) acc += abs(a.mass - nu.mass_at(a.point));
    for (const auto& a : nu.atoms())
        if (mu.mass_at(a.point) == 0) acc += abs(a.mass);
    return acc / 2;
}

// --- divisors and retractions ----------------------------------------------

DivisorPoly divisor_poly(const RationalMap& f, const RationalMap& g, unsigned n) {
    require_same_field(f.field(), g.field(), "divisor_poly");
    RationalMap fn = iterate(f, n);
    Form wedge = fn.lift0() * g.lift1() - fn.lift1() * g.lift0();
    if (wedge.is_zero())
        throw IdenticallyEqual("divisor_poly: f^" + std::to_string(n) + " equals g");
    Poly zsec = wedge.z_section();
    Poly wsec = wedge.w_section();
    unsigned long total = static_cast<unsigned long>(wedge.degree());
    unsigned long at_inf = total - static_cast<unsigned long>(zsec.degree());
    // cross-chart consistency: the w-chart multiplicity at w=0 is the
    // multiplicity of infinity
    if (static_cast<unsigned long>(wsec.ord_at_zero()) != at_inf)
        throw Error("InternalCheck", "divisor_poly: chart root counts disagree");
    return DivisorPoly{std::move(wedge), std::move(zsec), std::move(wsec), total, at_inf};
}

namespace {

TreeMeasure retract_root_counts(const Poly& zsec, unsigned long total,
                                const FiniteTree& tree) {
    TreeMeasure out(tree, mpq_class(static_cast<long>(total)));
    std::vector<unsigned long> counts(tree.size(), 0);
    for (std::size_t i = 0; i < tree.size(); ++i) {
        counts[i] = zsec.degree() < 1
                        ? 0
                        : count_roots_in_disk(zsec, tree.vertex(i).center(),
                                              tree.vertex(i).exponent());
    }
    for (std::size_t i = 0; i < tree.size(); ++i) {
        mpq_class mass(static_cast<long>(counts[i]));
        for (std::size_t c : tree.children(i)) mass -= static_cast<long>(counts[c]);
        if (i == tree.root())
            mass += mpq_class(static_cast<long>(total)) - static_cast<long>(counts[i]);
        out.add_mass(tree.vertex(i), mass);
    }
    out.validate();
    return out;
}

} // namespace

TreeMeasure retract_divisor(const DivisorPoly& P, const FiniteTree& tree) {
    return retract_root_counts(P.z_sec, P.total_degree, tree);
}

TreeMeasure mu_pullback(const RationalMap& f, const ProjPoint& a, unsigned n,
                        const FiniteTree& tree) {
    if (!non_exceptional_witness(f, a))
        throw ExceptionalBasePoint("mu_pullback: base point " + a.str() +
                                   " lacks a non-exceptionality witness");
    RationalMap fn = iterate(f, n);
    Form w = fn.lift0().scaled(a.z1()) - fn.lift1().scaled(a.z0());
    if (w.is_zero()) throw Error("InternalCheck", "mu_pullback: degenerate fiber");
    mpz_class dn;
    mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(f.degree()), n);
    unsigned long total = static_cast<unsigned long>(dn.get_ui());
    TreeMeasure counts = retract_root_counts(w.z_section(), total, tree);
    TreeMeasure out = counts.scaled(mpq_class(1) / mpq_class(dn));
    out.validate();
    return out;
}

TreeMeasure mu_green(const RationalMap& f, const FiniteTree& tree, const mpq_class& eps) {
    if (f.degree() < 2) throw Error("DegreeTooLow", "mu_green needs deg f > 1");
    // one global truncation level: the tail bound is point-independent
    RationalMap base = f.with_reference_reset();
    GreenApprox probe = green(base, tree.vertex(tree.root()), eps);
    RationalMap fn = iterate(base, probe.n_used);
    mpz_class dn;
    mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(f.degree()), probe.n_used);
    auto values = [&](const TypeIIPoint& S) -> mpq_class { return t_h(fn, S) / mpq_class(dn); };
    TreeMeasure lap = tree_laplacian(values, tree);
    TreeMeasure out(tree, lap.total() + 1);
    for (const auto& a : lap.atoms()) out.add_mass(a.point, a.mass);
    out.add_mass(tree.retract(TypeIIPoint::gauss(f.field())), mpq_class(1));
    out.validate();
    // the truncated measure is a retracted pullback of the canonical point,
    // so genuinely negative mass signals under-resolved slopes
    mpq_class slack = probe.error_bound * static_cast<long>(tree.size());
    for (const auto& a : out.atoms())
        if (a.mass < -slack)
            throw InsufficientResolution("mu_green: negative mass " + a.mass.get_str() +
                                         " at " + a.point.str());
    return out;
}

// --- the moving-target distance table --------------------------------------

EquidistReport equidist_experiment(const RationalMap& f, const RationalMap& g,
                                   const FiniteTree& tree, const EquidistOptions& opts) {
    EquidistReport report;
    report.hypothesis = pgr_search(f, opts.pgr_depth, opts.pgr_denom);
    report.makes_claim = !report.hypothesis.found;

    TreeMeasure mu_ref = [&]() {
        switch (opts.mu_ref) {
        case MuRefKind::Pullback: {
            Coeff base = Coeff::parse(f.field(), opts.pullback_base);
            try {
                TreeMeasure m = mu_pullback(f, ProjPoint::affine(base), opts.pullback_n, tree);
                report.mu_ref_description = "pullback(a=" + base.str() +
                                            ", n=" + std::to_string(opts.pullback_n) + ")";
                return m;
            } catch (const ExceptionalBasePoint&) {
                // in characteristic p the exceptional set can be larger and
                // the witness is one-sided: no silent substitute there
                if (f.field()->kind() == FieldKind::LaurentRational) throw;
                report.mu_ref_description = "green(eps=" + opts.green_eps.get_str() +
                                            ") [pullback base " + base.str() +
                                            " not witness-certified]";
                return mu_green(f, tree, opts.green_eps);
            }
        }
        case MuRefKind::Green:
            report.mu_ref_description = "green(eps=" + opts.green_eps.get_str() + ")";
            return mu_green(f, tree, opts.green_eps);
        case MuRefKind::CanonicalPoint:
        default:
            report.mu_ref_description = "canonical-point";
            return TreeMeasure::dirac(tree, tree.retract(TypeIIPoint::gauss(f.field())));
        }
    }();

    if (opts.n_to < opts.n_from) return report;
    std::size_t cells = opts.n_to - opts.n_from + 1;
    report.rows.assign(cells, EquidistRow{});
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto run_cell = [&](std::size_t idx) {
        try {
            unsigned n = opts.n_from + static_cast<unsigned>(idx);
            DivisorPoly div = divisor_poly(f, g, n);
            TreeMeasure raw = retract_divisor(div, tree);
            TreeMeasure prob =
                raw.scaled(mpq_class(1) / mpq_class(static_cast<long>(div.total_degree)));
            report.rows[idx] = EquidistRow{n, div.total_degree, tv_distance(prob, mu_ref)};
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
        }
    };
    unsigned threads = std::max(1u, opts.threads);
    if (threads == 1 || cells <= 1) {
        for (std::size_t i = 0; i < cells; ++i) run_cell(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned t = 0; t < std::min<std::size_t>(threads, cells); ++t) {
            pool.emplace_back([&]() {
                for (std::size_t i = next.fetch_add(1); i < cells; i = next.fetch_add(1))
                    run_cell(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return report;
}

} // namespace berklab
