#include "berklab/experiment.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace berklab {

using ordered_json = nlohmann::ordered_json;

// --- map specs ---------------------------------------------------------------

namespace {

FieldPtr field_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("p"))
        throw ParseError("map spec: field needs kind and p");
    std::string kind = j.at("kind").get<std::string>();
    unsigned p = j.at("p").get<unsigned>();
    if (kind == "Qp") return Field::padic(p);
    if (kind == "Fpt") return Field::laurent(p, j.value("var", std::string("t")));
    throw ParseError("map spec: unknown field kind '" + kind + "'");
}

ordered_json field_to_json(const FieldPtr& f) {
    ordered_json j;
    j["kind"] = f->kind() == FieldKind::PAdic ? "Qp" : "Fpt";
    j["p"] = f->p();
    if (f->kind() == FieldKind::LaurentRational) j["var"] = f->var();
    return j;
}

std::vector<std::string> string_list(const ordered_json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("map spec: ") + what + " must be a list");
    std::vector<std::string> out;
    for (const auto& x : j) out.push_back(x.get<std::string>());
    return out;
}

} // namespace

RationalMap load_map_spec_text(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("map spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("field") || !j.contains("numerator") ||
        !j.contains("denominator"))
        throw ParseError("map spec: need field, numerator, denominator");
    FieldPtr f = field_from_json(j.at("field"));
    Poly num = Poly::parse(f, string_list(j.at("numerator"), "numerator"));
    Poly den = Poly::parse(f, string_list(j.at("denominator"), "denominator"));
    return RationalMap::from_fraction(num, den);
}

RationalMap load_map_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open map spec '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_map_spec_text(ss.str());
}

std::string map_spec_to_json(const RationalMap& f) {
    ordered_json j;
    j["field"] = field_to_json(f.field());
    auto coeff_strings = [](const Poly& p) {
        std::vector<std::string> out;
        for (int i = 0; i <= p.degree(); ++i)
            out.push_back(p.coeff(static_cast<std::size_t>(i)).str());
        return out;
    };
    j["numerator"] = coeff_strings(f.lift0().z_section());
    j["denominator"] = coeff_strings(f.lift1().z_section());
    return j.dump();
}

// --- config -------------------------------------------------------------------

std::string ExperimentConfig::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["f"] = f_path;
    j["g"] = g_path;
    j["depth"] = depth;
    j["nmax"] = nmax;
    j["samples"] = samples;
    j["eps"] = eps;
    j["pgr_depth"] = pgr_depth;
    j["pgr_denom"] = pgr_denom;
    j["mu_ref"] = mu_ref;
    j["out"] = out_path;
    j["format"] = format;
    j["threads"] = threads;
    return j.dump();
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("config: invalid JSON: ") + e.what());
    }
    ExperimentConfig c;
    c.command = j.at("command").get<std::string>();
    c.f_path = j.at("f").get<std::string>();
    c.g_path = j.at("g").get<std::string>();
    c.depth = j.at("depth").get<int>();
    c.nmax = j.at("nmax").get<unsigned>();
    c.samples = j.at("samples").get<std::vector<std::string>>();
    c.eps = j.at("eps").get<std::string>();
    c.pgr_depth = j.at("pgr_depth").get<unsigned>();
    c.pgr_denom = j.at("pgr_denom").get<unsigned>();
    c.mu_ref = j.at("mu_ref").get<std::string>();
    c.out_path = j.at("out").get<std::string>();
    c.format = j.at("format").get<std::string>();
    c.threads = j.at("threads").get<unsigned>();
    return c;
}

// --- decimal rendering ----------------------------------------------------------

std::string decimal6(const mpq_class& x) {
    mpq_class y = x >= 0 ? x : mpq_class(-x);
    mpz_class scaled_num = y.get_num() * 1000000;
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(),
                y.get_den().get_mpz_t());
    mpz_class twice = 2 * r;
    int cmp = mpz_cmp(twice.get_mpz_t(), y.get_den().get_mpz_t());
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    mpz_class ip = q / 1000000, fp = q % 1000000;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), 6 - frac.size(), '0');
    std::string out = ip.get_str() + "." + frac;
    if (x < 0 && q != 0) out.insert(out.begin(), '-');
    return out;
}

// --- identity checks -------------------------------------------------------------

bool check_laplacian_affine(const FieldPtr& field, std::string* detail) {
    FiniteTree tree = FiniteTree::from_points({TypeIIPoint(Coeff::zero(field), mpq_class(-1)),
                                               TypeIIPoint::gauss(field),
                                               TypeIIPoint(Coeff::zero(field), mpq_class(2))});
    TreeMeasure lap = tree_laplacian(&log_plus_abs, tree);
    TreeMeasure expect(tree, mpq_class(0));
    expect.add_mass(TypeIIPoint::gauss(field), mpq_class(1));
    expect.add_mass(TypeIIPoint(Coeff::zero(field), mpq_class(-1)), mpq_class(-1));
    bool ok = lap.same_support_and_masses(expect);
    if (detail) *detail = "laplacian " + lap.str() + " expected " + expect.str();
    return ok;
}

bool check_roots_normalized(const RationalMap& f, const RationalMap& g, unsigned n,
                            const FiniteTree& tree, std::string* detail) {
    RationalMap fn = iterate(f, n);
    auto values = [&](const TypeIIPoint& S) -> mpq_class {
        return chordal_can(fn, g, S) + t_h(fn, S) + t_h(g, S);
    };
    TreeMeasure lhs = tree_laplacian(values, tree);
    DivisorPoly div = divisor_poly(f, g, n);
    TreeMeasure rhs = retract_divisor(div, tree);
    TreeMeasure rhs_full(tree, rhs.total() - static_cast<long>(div.total_degree));
    for (const auto& a : rhs.atoms()) rhs_full.add_mass(a.point, a.mass);
    rhs_full.add_mass(tree.retract(TypeIIPoint::gauss(f.field())),
                      -mpq_class(static_cast<long>(div.total_degree)));
    rhs_full.validate();
    bool ok = lhs.same_support_and_masses(rhs_full);
    if (detail)
        *detail = "n=" + std::to_string(n) + " lhs " + lhs.str() + " rhs " + rhs_full.str();
    return ok;
}

// --- command driver ---------------------------------------------------------------

namespace {

mpq_class parse_rat(const std::string& s, const char* what) {
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad rational for ") + what + ": '" + s + "'");
    }
}

RationalMap identity_map(const FieldPtr& f) {
    return RationalMap(Form(f, {Coeff::zero(f), Coeff::one(f)}),
                       Form(f, {Coeff::one(f), Coeff::zero(f)}));
}

ordered_json pgr_to_json(const PgrResult& r) {
    ordered_json j;
    j["verdict"] = r.found ? "GoodReductionFound" : "NoneFoundUpTo";
    if (r.found) {
        j["point"] = r.point->str();
        j["conjugator"] = r.conjugator->str();
    }
    j["depth"] = r.depth;
    j["denom"] = r.denom;
    j["best_resultant_valuation"] = r.best_objective.get_str();
    j["search_field"] = r.search_field->describe();
    j["nodes_visited"] = r.stats.visited;
    j["nodes_pruned"] = r.stats.pruned;
    j["budget_exhausted"] = r.stats.budget_exhausted;
    return j;
}

struct CsvBuilder {
    std::string text;
    void comment(const std::string& line) { text += "# " + line + "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += ",";
            text += cells[i];
        }
        text += "\n";
    }
};

} // namespace

RunOutput run_command(const ExperimentConfig& config) {
    RationalMap f = load_map_spec_file(config.f_path);
    const FieldPtr& field = f.field();
    RationalMap g = config.g_path.empty() ? identity_map(field)
                                          : load_map_spec_file(config.g_path);
    require_same_field(field, g.field(), "run: f and g");
    if (config.depth < 0) throw ParseError("depth must be >= 0");
    FiniteTree tree = FiniteTree::standard_tree(field, config.depth);
    std::vector<TypeIIPoint> samples;
    if (config.samples.empty()) {
        samples = tree.vertices();
    } else {
        for (const auto& s : config.samples) samples.push_back(TypeIIPoint::parse(field, s));
    }

    ordered_json out;
    out["version"] = kVersion;
    out["config"] = ordered_json::parse(config.to_json());
    CsvBuilder csv;
    csv.comment(kVersion);
    csv.comment("config: " + config.to_json());
    bool tabular = false;

    if (config.command == "reduce") {
        ReductionReport r = reduce(f);
        ordered_json j;
        j["map"] = f.str();
        j["map_degree"] = r.map_degree;
        j["reduced_degree"] = r.reduced_degree;
        j["cancelled_degree"] = r.cancelled_degree;
        j["reduced_numerator"] = r.num.str(r.var);
        j["reduced_denominator"] = r.den.str(r.var);
        j["good_reduction"] = good_reduction(f);
        j["resultant_valuation"] =
            resultant_form(f.lift0(), f.lift1()).valuation().str();
        out["result"] = j;
    } else if (config.command == "pgr") {
        out["result"] = pgr_to_json(pgr_search(f, config.pgr_depth, config.pgr_denom));
    } else if (config.command == "green") {
        tabular = true;
        mpq_class eps = parse_rat(config.eps, "eps");
        ordered_json rows = ordered_json::array();
        csv.row({"point", "value", "value_decimal", "n_used", "error_bound"});
        for (const auto& s : samples) {
            GreenApprox ga = green(f, s, eps);
            ordered_json j;
            j["point"] = s.str();
            j["value"] = ga.value.get_str();
            j["value_decimal"] = decimal6(ga.value);
            j["n_used"] = ga.n_used;
            j["error_bound"] = ga.error_bound.get_str();
            rows.push_back(j);
            csv.row({s.str(), ga.value.get_str(), decimal6(ga.value),
                     std::to_string(ga.n_used), ga.error_bound.get_str()});
        }
        out["result"] = ordered_json{{"rows", rows}};
    } else if (config.command == "apriori") {
        tabular = true;
        auto seq = apriori_sequence(f, g, samples, config.nmax);
        ordered_json rows = ordered_json::array();
        csv.row({"n", "s_n", "s_n_decimal", "identically_equal"});
        for (const auto& e : seq) {
            ordered_json j;
            j["n"] = e.n;
            j["identically_equal"] = e.identically_equal;
            if (!e.identically_equal) {
                j["s_n"] = e.s_n.get_str();
                j["s_n_decimal"] = decimal6(e.s_n);
            }
            rows.push_back(j);
            csv.row({std::to_string(e.n), e.identically_equal ? "" : e.s_n.get_str(),
                     e.identically_equal ? "" : decimal6(e.s_n),
                     e.identically_equal ? "true" : "false"});
        }
        out["result"] = ordered_json{{"rows", rows}, {"samples", static_cast<unsigned>(samples.size())}};
    } else if (config.command == "equidist") {
        tabular = true;
        EquidistOptions opts;
        opts.n_from = 1;
        opts.n_to = config.nmax;
        opts.pgr_depth = config.pgr_depth;
        opts.pgr_denom = config.pgr_denom;
        opts.green_eps = parse_rat(config.eps, "eps");
        opts.threads = config.threads;
        if (config.mu_ref == "pullback")
            opts.mu_ref = MuRefKind::Pullback;
        else if (config.mu_ref == "green")
            opts.mu_ref = MuRefKind::Green;
        else if (config.mu_ref == "canonical")
            opts.mu_ref = MuRefKind::CanonicalPoint;
        else
            throw ParseError("mu_ref must be pullback | green | canonical");
        EquidistReport rep = equidist_experiment(f, g, tree, opts);
        ordered_json rows = ordered_json::array();
        std::string verdict = rep.hypothesis.found ? "GoodReductionFound" : "NoneFoundUpTo";
        csv.row({"n", "divisor_degree", "tv", "tv_decimal", "verdict", "makes_claim"});
        for (const auto& r : rep.rows) {
            ordered_json j;
            j["n"] = r.n;
            j["divisor_degree"] = r.degree;
            j["tv"] = r.tv.get_str();
            j["tv_decimal"] = decimal6(r.tv);
            rows.push_back(j);
            csv.row({std::to_string(r.n), std::to_string(r.degree), r.tv.get_str(),
                     decimal6(r.tv), verdict, rep.makes_claim ? "true" : "false"});
        }
        out["result"] = ordered_json{{"hypothesis", pgr_to_json(rep.hypothesis)},
                                     {"makes_claim", rep.makes_claim},
                                     {"mu_ref", rep.mu_ref_description},
                                     {"rows", rows}};
    } else if (config.command == "roots") {
        tabular = true;
        DivisorPoly div = divisor_poly(f, g, config.nmax);
        ordered_json rows = ordered_json::array();
        csv.row({"vertex", "roots_in_disk"});
        for (const auto& v : tree.vertices()) {
            unsigned long c = div.z_sec.degree() < 1
                                  ? 0
                                  : count_roots_in_disk(div.z_sec, v.center(), v.exponent());
            ordered_json j;
            j["vertex"] = v.str();
            j["roots_in_disk"] = c;
            rows.push_back(j);
            csv.row({v.str(), std::to_string(c)});
        }
        out["result"] = ordered_json{{"n", config.nmax},
                                     {"total_degree", div.total_degree},
                                     {"infinity_multiplicity", div.infinity_multiplicity},
                                     {"rows", rows}};
    } else if (config.command == "laplacian-check") {
        std::string d1, d2, d3;
        bool affine_ok = check_laplacian_affine(field, &d1);
        bool rn1 = check_roots_normalized(f, g, 1, tree, &d2);
        bool rn2 = check_roots_normalized(f, g, 2, tree, &d3);
        ordered_json j;
        j["laplacian_affine_ok"] = affine_ok;
        j["laplacian_affine_detail"] = d1;
        j["roots_normalized_n1_ok"] = rn1;
        j["roots_normalized_n1_detail"] = d2;
        j["roots_normalized_n2_ok"] = rn2;
        j["roots_normalized_n2_detail"] = d3;
        j["ok"] = affine_ok && rn1 && rn2;
        out["result"] = j;
    } else {
        throw ParseError("unknown command '" + config.command + "'");
    }

    RunOutput ro;
    ro.json = out.dump(2) + "\n";
    if (tabular) ro.csv = csv.text;
    return ro;
}

} // namespace berklab
