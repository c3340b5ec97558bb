// sktcoh: exact cohomology and SKT polarisation calculator for invariant
// complex structures given by structure equations.
//
// JSON report on stdout, human summary on stderr. Exit code 0 for computed
// verdicts (including "false"/"infeasible"), nonzero for input errors.

#include "CLI11.hpp"
#include "json.hpp"

#include "skt/deformation.hpp"
#include "skt/hodge_riemann.hpp"
#include "skt/manifold_io.hpp"

#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace skt;

namespace {

json scalar_json(const Scalar& s) { return s.str(); }

json form_json(const Form& f) { return print_form_expr(f); }

json vform_json(const VectorForm& f) { return print_vector_expr(f); }

json vec_json(const Vec& v) {
    json out = json::array();
    for (const Scalar& s : v) out.push_back(s.str());
    return out;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
        out.push_back(row);
    }
    return out;
}

json forms_json(const std::vector<Form>& fs) {
    json out = json::array();
    for (const Form& f : fs) out.push_back(form_json(f));
    return out;
}

struct Report {
    json body;
    std::ostringstream human;

    Report(const std::string& command, const ManifoldInput& input) {
        body["schema"] = "sktcoh/1";
        body["command"] = command;
        body["input"] = {{"manifold", input.name}, {"n", input.coframe.dim()}};
        body["results"] = json::object();
        body["checks"] = json::array();
    }
    void check(const std::string& name, bool passed, const std::string& detail = "") {
        json c = {{"name", name}, {"passed", passed}};
        if (!detail.empty()) c["detail"] = detail;
        body["checks"].push_back(c);
    }
    int emit() {
        std::cout << body.dump(2) << "\n";
        std::cerr << human.str();
        return 0;
    }
};

struct Session {
    ManifoldInput input;
    MetricContext mc;
    CohomologyRing ring;

    explicit Session(ManifoldInput in)
        : input(std::move(in)), mc(input.coframe, input.metric), ring(input.coframe, &mc) {}
};

std::string read_stdin() {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
}

ManifoldInput load(const std::string& spec) {
    return load_manifold(spec, spec == "-" ? read_stdin() : "");
}

Model parse_model(const std::string& name) {
    if (name == "bc" || name == "bott-chern") return Model::BottChern;
    if (name == "dolbeault" || name == "db") return Model::Dolbeault;
    if (name == "aeppli" || name == "a") return Model::Aeppli;
    if (name == "derham" || name == "dr" || name == "de-rham") return Model::DeRham;
    throw std::runtime_error("unknown model '" + name + "'");
}

Bidegree parse_bidegree(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("--bidegree expects 'p,q'");
    return {std::atoi(text.substr(0, comma).c_str()),
            std::atoi(text.substr(comma + 1).c_str())};
}

json group_json(const CohomologyGroup& g) {
    return {{"dimension", g.dimension()}, {"basis", forms_json(g.representatives())}};
}

int cmd_validate(const std::string& manifold) {
    ManifoldInput input = load(manifold);
    Report rep("validate", input);
    ValidationReport v = input.coframe.validate();
    for (const auto& c : v.checks) rep.check(c.name, c.passed, c.detail);
    rep.body["results"]["valid"] = v.ok();
    rep.human << input.name << ": " << (v.ok() ? "valid" : "INVALID") << "\n" << v.summary();
    return rep.emit();
}

int cmd_cohomology(const std::string& manifold, const std::string& model_name,
                   const std::string& bidegree, bool all) {
    Session s(load(manifold));
    Model model = parse_model(model_name);
    Report rep("cohomology", s.input);
    rep.body["results"]["model"] = model_name;
    json table = json::array();
    int n = s.input.coframe.dim();
    auto add = [&](Bidegree b) {
        const CohomologyGroup& g =
            model == Model::DeRham ? s.ring.de_rham(b.p) : s.ring.group(model, b);
        json e = group_json(g);
        if (model == Model::DeRham)
            e["degree"] = b.p;
        else
            e["bidegree"] = {b.p, b.q};
        table.push_back(e);
        if (model == Model::DeRham)
            rep.human << "  b_" << b.p << " = " << g.dimension() << "\n";
        else if (g.dimension() > 0)
            rep.human << "  h^{" << b.p << "," << b.q << "} = " << g.dimension() << "\n";
    };
    rep.human << s.input.name << " " << model_name << " cohomology:\n";
    if (!bidegree.empty() && !all) {
        add(parse_bidegree(bidegree));
    } else if (model == Model::DeRham) {
        for (int k = 0; k <= 2 * n; ++k) add({k, -1});
    } else {
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) add({p, q});
    }
    rep.body["results"]["groups"] = table;
    return rep.emit();
}

int cmd_ddbar(const std::string& manifold) {
    Session s(load(manifold));
    Report rep("ddbar-test", s.input);
    auto r = s.ring.ddbar_test();
    rep.body["results"]["is_ddbar_manifold"] = r.is_ddbar;
    json detail = json::array();
    for (const auto& e : r.entries) {
        detail.push_back({{"bidegree", {e.bidegree.p, e.bidegree.q}},
                          {"dim_bc", e.dim_bc},
                          {"dim_dolbeault", e.dim_dolbeault},
                          {"dim_aeppli", e.dim_aeppli},
                          {"bc_to_dolbeault_iso", e.bc_to_dolbeault_iso},
                          {"dolbeault_to_aeppli_iso", e.dolbeault_to_aeppli_iso}});
    }
    rep.body["results"]["bidegrees"] = detail;
    rep.human << s.input.name << ": ddbar-manifold (invariant level): "
              << (r.is_ddbar ? "yes" : "no") << "\n";
    return rep.emit();
}

int cmd_skt(const std::string& manifold) {
    Session s(load(manifold));
    Report rep("skt", s.input);
    bool skt = skt_check(s.mc);
    Form obstruction = s.input.coframe.del(s.input.coframe.dbar(s.mc.omega()));
    rep.body["results"]["omega"] = form_json(s.mc.omega());
    rep.body["results"]["is_skt"] = skt;
    rep.body["results"]["del_dbar_omega"] = form_json(obstruction);
    rep.human << s.input.name << ": del dbar omega = " << obstruction.str() << " -> "
              << (skt ? "SKT" : "not SKT") << "\n";
    return rep.emit();
}

int cmd_alpha(const std::string& manifold) {
    Session s(load(manifold));
    Report rep("alpha", s.input);
    if (!skt_check(s.mc)) {
        rep.body["results"]["feasible"] = false;
        rep.body["results"]["reason"] = "metric is not SKT";
        rep.human << s.input.name << ": metric is not SKT, alpha-equation not posed\n";
        return rep.emit();
    }
    auto a = solve_alpha(s.mc);
    rep.body["results"]["feasible"] = a.has_value();
    if (a) {
        rep.body["results"]["alpha"] = form_json(*a);
        const Coframe& cf = s.input.coframe;
        bool solves = cf.del(cf.dbar(*a)) == cf.dbar(s.mc.omega());
        rep.check("del dbar alpha = dbar omega", solves);
        rep.human << s.input.name << ": alpha = " << a->str() << "\n";
    } else {
        rep.body["results"]["reason"] = "no invariant solution of the alpha-equation";
        rep.human << s.input.name << ": alpha-equation infeasible over invariant forms\n";
    }
    return rep.emit();
}

int cmd_primitive(const std::string& manifold, const std::string& class_expr) {
    Session s(load(manifold));
    Report rep("primitive", s.input);
    if (!skt_check(s.mc)) throw std::runtime_error("metric is not SKT");
    Polarisation pol(s.mc, s.ring);
    int n = s.input.coframe.dim();
    if (class_expr.empty()) {
        json spaces = json::array();
        for (int p = 0; p <= n; ++p) {
            auto prim = pol.primitive_class_space(p);
            const auto& bc = s.ring.group(Model::BottChern, {p, n - p});
            json e = {{"bidegree", {p, n - p}},
                      {"dim_bott_chern", bc.dimension()},
                      {"dim_primitive", prim.dimension},
                      {"basis", forms_json(prim.reps)}};
            spaces.push_back(e);
            rep.human << "  prim H^{" << p << "," << n - p << "}_BC: " << prim.dimension
                      << " of " << bc.dimension() << "\n";
        }
        rep.body["results"]["primitive_spaces"] = spaces;
        return rep.emit();
    }
    Form gamma = parse_form_expr(class_expr, n);
    Bidegree b{0, 0};
    for (const auto& [m, c] : gamma.terms()) b = m.bidegree();
    if (!gamma.is_pure(b) || b.p + b.q != n)
        throw std::runtime_error("--class must be a pure (p, n-p) form");
    auto l = pol.l_omega(gamma, b);
    rep.body["results"]["bidegree"] = {b.p, b.q};
    rep.body["results"]["omega_wedge_class"] = form_json(l.wedge_form);
    rep.body["results"]["aeppli_coordinates"] = vec_json(l.aeppli_coords);
    rep.body["results"]["primitive"] = l.zero_class();
    rep.human << s.input.name << ": L_[omega] class "
              << (l.zero_class() ? "vanishes -> primitive" : "is nonzero -> not primitive")
              << "\n";
    return rep.emit();
}

int cmd_primitive_rep(const std::string& manifold, const std::string& class_expr, bool dclosed) {
    Session s(load(manifold));
    Report rep("primitive-rep", s.input);
    if (!skt_check(s.mc)) throw std::runtime_error("metric is not SKT");
    Polarisation pol(s.mc, s.ring);
    int n = s.input.coframe.dim();
    Form gamma = parse_form_expr(class_expr, n);
    Bidegree b{0, 0};
    for (const auto& [m, c] : gamma.terms()) b = m.bidegree();
    if (!gamma.is_pure(b) || b.p + b.q != n)
        throw std::runtime_error("--class must be a pure (p, n-p) form");
    auto res = pol.primitive_representative(gamma, b, dclosed);
    rep.body["results"]["bidegree"] = {b.p, b.q};
    rep.body["results"]["d_closed_search"] = dclosed;
    if (std::holds_alternative<Form>(res)) {
        const Form& v = std::get<Form>(res);
        rep.body["results"]["outcome"] = "witness";
        rep.body["results"]["representative"] = form_json(v);
        rep.check("omega wedge witness = 0", wedge(s.mc.omega(), v).is_zero());
        rep.human << s.input.name << ": primitive representative " << v.str() << "\n";
    } else if (std::holds_alternative<Infeasible>(res)) {
        rep.body["results"]["outcome"] = "infeasible";
        rep.body["results"]["reason"] = std::get<Infeasible>(res).reason;
        rep.human << s.input.name << ": " << std::get<Infeasible>(res).reason << "\n";
    } else {
        rep.body["results"]["outcome"] = "not-primitive";
        rep.body["results"]["l_omega_coordinates"] =
            vec_json(std::get<Polarisation::NotPrimitive>(res).l_coords);
        rep.human << s.input.name << ": class is not primitive\n";
    }
    return rep.emit();
}

int cmd_tangent(const std::string& manifold) {
    Session s(load(manifold));
    Report rep("tangent", s.input);
    if (!skt_check(s.mc)) throw std::runtime_error("metric is not SKT");
    Polarisation pol(s.mc, s.ring);
    SktContext ctx = SktContext::build(s.mc);
    rep.body["results"]["alpha_feasible"] = ctx.has_alpha();
    if (!ctx.has_alpha()) {
        rep.body["results"]["available"] = false;
        rep.body["results"]["reason"] =
            "no d-closed representative of [omega]_A (alpha-equation infeasible)";
        rep.human << s.input.name << ": tangent space unavailable (alpha infeasible)\n";
        return rep.emit();
    }
    auto tangent = pol.polarised_tangent_space(ctx);
    rep.body["results"]["available"] = true;
    rep.body["results"]["dim_vector_cohomology"] = pol.vector_cohomology().dimension();
    rep.body["results"]["dimension"] = tangent.dimension();
    json basis = json::array();
    for (const VectorForm& t : tangent.basis) basis.push_back(vform_json(t));
    rep.body["results"]["basis"] = basis;
    rep.human << s.input.name << ": polarised tangent space has dimension "
              << tangent.dimension() << " inside H^{0,1}(X, T^{1,0}X) of dimension "
              << pol.vector_cohomology().dimension() << "\n";
    return rep.emit();
}

int cmd_pairings(const std::string& manifold) {
    Session s(load(manifold));
    Report rep("pairings", s.input);
    int n = s.input.coframe.dim();
    const CohomologyGroup& hn = s.ring.de_rham(n);
    const auto& reps = hn.representatives();
    int k = hn.dimension();
    Matrix q(k, k), h(k, k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) {
            q.set(r, c, pairing_q(s.mc, reps[r], reps[c]));
            h.set(r, c, pairing_h(s.mc, reps[r], reps[c]));
        }
    auto split = hn_split(s.mc);
    rep.body["results"]["degree"] = n;
    rep.body["results"]["basis"] = forms_json(reps);
    rep.body["results"]["Q"] = matrix_json(q);
    rep.body["results"]["H"] = matrix_json(h);
    rep.body["results"]["plus_dimension"] = static_cast<int>(split.plus.size());
    rep.body["results"]["minus_dimension"] = static_cast<int>(split.minus.size());
    rep.body["results"]["plus_basis"] = forms_json(split.plus);
    rep.body["results"]["minus_basis"] = forms_json(split.minus);
    rep.human << s.input.name << ": b_" << n << " = " << k << ", star eigenspace split "
              << split.plus.size() << "/" << split.minus.size() << "\n";
    return rep.emit();
}

Form volume_or_throw(const ManifoldInput& input) {
    if (!input.volume)
        throw std::runtime_error(
            "this command needs a holomorphic volume form ('volume = ...' block)");
    return *input.volume;
}

int cmd_period(const std::string& manifold, const std::string& form_expr) {
    Session s(load(manifold));
    Report rep("period", s.input);
    int n = s.input.coframe.dim();
    PeriodVerdict verdict;
    if (form_expr.empty()) {
        HolomorphicVolume u(s.input.coframe, volume_or_throw(s.input));
        verdict = period_point(s.mc, s.ring, u);
        rep.body["results"]["form"] = form_json(u.form());
    } else {
        Form f = parse_form_expr(form_expr, n);
        verdict = period_membership(s.mc, s.ring, f);
        rep.body["results"]["form"] = form_json(f);
    }
    rep.body["results"]["de_rham_coordinates"] = vec_json(verdict.de_rham_coords);
    rep.body["results"]["Q"] = scalar_json(verdict.q);
    rep.body["results"]["H"] = scalar_json(verdict.h);
    rep.body["results"]["in_period_domain"] = verdict.in_domain;
    rep.body["results"]["reason"] = verdict.reason;
    rep.human << s.input.name << ": " << verdict.reason << " -> "
              << (verdict.in_domain ? "inside" : "outside") << " the period domain\n";
    return rep.emit();
}

int cmd_metrics(const std::string& manifold) {
    Session s(load(manifold));
    Report rep("metrics", s.input);
    if (!skt_check(s.mc)) throw std::runtime_error("metric is not SKT");
    Polarisation pol(s.mc, s.ring);
    SktContext ctx = SktContext::build(s.mc);
    if (!ctx.has_alpha()) {
        rep.body["results"]["available"] = false;
        rep.body["results"]["reason"] = "alpha-equation infeasible";
        rep.human << s.input.name << ": metrics unavailable (alpha infeasible)\n";
        return rep.emit();
    }
    HolomorphicVolume u(s.input.coframe, volume_or_throw(s.input));
    auto tangent = pol.polarised_tangent_space(ctx);
    auto m = metrics_report(pol, ctx, u, tangent.basis);
    rep.body["results"]["available"] = true;
    rep.body["results"]["tangent_dimension"] = tangent.dimension();
    rep.body["results"]["normalisation"] = scalar_json(m.normalisation);
    rep.body["results"]["G1"] = matrix_json(m.g1);
    rep.body["results"]["G2"] = matrix_json(m.g2);
    rep.body["results"]["gamma"] = matrix_json(m.gamma);
    json entries = json::array();
    for (const auto& e : m.entries) {
        json ej = {{"theta", vform_json(e.theta)}, {"feasible", e.feasible}};
        if (e.feasible) {
            ej["contraction"] = form_json(e.contraction);
            ej["primitive_part"] = form_json(e.primitive_part);
            ej["zeta"] = form_json(e.zeta);
        } else {
            ej["detail"] = e.detail;
        }
        entries.push_back(ej);
    }
    rep.body["results"]["entries"] = entries;
    json diff = json::array();
    for (const Scalar& d : m.difference) diff.push_back(d.str());
    rep.body["results"]["g2_minus_gamma_diagonal"] = diff;
    rep.check("(G2-gamma) = 4 Gram(zeta)/normalisation", m.identity_holds);
    rep.check("G2-gamma diagonal nonnegative", m.difference_psd);
    rep.human << s.input.name << ": G2 " << (m.g2 == m.gamma ? "equals" : "differs from")
              << " gamma on the " << tangent.dimension() << "-dimensional tangent space\n";
    return rep.emit();
}

int cmd_deform(const std::string& manifold, const std::string& theta_expr,
               const std::string& t_expr) {
    Session s(load(manifold));
    Report rep("deform", s.input);
    int n = s.input.coframe.dim();
    VectorForm theta = parse_vector_expr(theta_expr, n);
    Scalar t = Scalar::parse(t_expr);
    rep.body["results"]["theta"] = vform_json(theta);
    rep.body["results"]["t"] = scalar_json(t);
    bool dbar_closed = s.input.coframe.dbar(theta).is_zero();
    rep.check("dbar theta = 0", dbar_closed);
    std::string err;
    auto ds = build_deformation(s.input.coframe, theta, t, &err);
    if (!ds) {
        rep.body["results"]["outcome"] = "degenerate";
        rep.body["results"]["reason"] = err;
        rep.human << s.input.name << ": " << err << "\n";
        return rep.emit();
    }
    json defects = json::array();
    for (const Form& d : ds->integrability_defect()) defects.push_back(form_json(d));
    rep.body["results"]["integrability_defect"] = defects;
    rep.body["results"]["integrable"] = ds->integrable();
    if (!ds->integrable()) {
        rep.body["results"]["outcome"] = "not-integrable";
        rep.human << s.input.name << ": deformed structure not integrable\n";
        return rep.emit();
    }
    rep.body["results"]["outcome"] = "deformed";
    json table = json::array();
    for (int i = 1; i <= n; ++i) table.push_back(form_json(ds->deformed().d_generator(i)));
    rep.body["results"]["deformed_structure_equations"] = table;
    ValidationReport v = ds->deformed().validate();
    rep.check("deformed presentation valid", v.ok());

    SktContext ctx = SktContext::build(s.mc);
    if (ctx.has_alpha()) {
        auto dm = deformed_skt_metric(*ds, ctx);
        rep.body["results"]["deformed_metric"] = {{"omega_t", form_json(dm.omega_t)},
                                                  {"coefficients", matrix_json(dm.coefficients)},
                                                  {"positive", dm.positive},
                                                  {"real", dm.real},
                                                  {"del_dbar_closed", dm.del_dbar_closed}};
    }
    rep.human << s.input.name << ": integrable deformation at t = " << t.str() << "\n";
    return rep.emit();
}

int cmd_polarised(const std::string& manifold, const std::string& theta_expr,
                  const std::string& t_expr, bool first_order) {
    Session s(load(manifold));
    Report rep("polarised", s.input);
    if (!skt_check(s.mc)) throw std::runtime_error("metric is not SKT");
    int n = s.input.coframe.dim();
    VectorForm theta = parse_vector_expr(theta_expr, n);
    if (!s.input.coframe.dbar(theta).is_zero())
        throw std::runtime_error("--theta must be dbar-closed");
    SktContext ctx = SktContext::build(s.mc);
    rep.body["results"]["theta"] = vform_json(theta);
    if (!ctx.has_alpha()) {
        rep.body["results"]["applicable"] = false;
        rep.body["results"]["reason"] = "alpha-equation infeasible";
        rep.human << s.input.name << ": not applicable (alpha infeasible)\n";
        return rep.emit();
    }
    if (first_order) {
        auto tc = polarised_tangent_consistency(ctx, s.ring, theta);
        rep.body["results"]["first_order"] = {
            {"linear_coefficient", form_json(tc.linear_coefficient)},
            {"linear_class", vec_json(tc.linear_class)},
            {"contraction_class", vec_json(tc.contraction_class)},
            {"matches_contraction_class", tc.matches}};
        bool zero = tc.linear_coefficient.is_zero();
        rep.human << s.input.name << ": first-order obstruction "
                  << (zero ? "vanishes" : "is nonzero") << ", law "
                  << (tc.matches ? "verified" : "VIOLATED") << "\n";
        if (t_expr.empty()) return rep.emit();
    }
    if (t_expr.empty()) throw std::runtime_error("--t is required without --first-order");
    Scalar t = Scalar::parse(t_expr);
    rep.body["results"]["t"] = scalar_json(t);
    std::string err;
    auto ds = build_deformation(s.input.coframe, theta, t, &err);
    if (!ds) {
        rep.body["results"]["applicable"] = false;
        rep.body["results"]["reason"] = err;
        rep.human << s.input.name << ": " << err << "\n";
        return rep.emit();
    }
    auto check = polarisation_check(*ds, ctx);
    rep.body["results"]["applicable"] = check.applicable;
    if (!check.applicable) {
        rep.body["results"]["reason"] = check.detail;
        rep.human << s.input.name << ": " << check.detail << "\n";
        return rep.emit();
    }
    rep.body["results"]["polarised"] = check.polarised;
    rep.body["results"]["class_02"] = vec_json(check.class02);
    rep.body["results"]["class_20"] = vec_json(check.class20);
    rep.human << s.input.name << ": fibre at t = " << t.str() << " is "
              << (check.polarised ? "polarised" : "NOT polarised") << "\n";
    return rep.emit();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact Bott-Chern/Aeppli/Dolbeault/de Rham cohomology and SKT polarisation "
        "for invariant complex structures"};
    app.require_subcommand(1);

    std::string manifold, model = "bc", bidegree, class_expr, theta, t, form_expr;
    bool all = false, dclosed = false, first_order = false;

    auto add_manifold = [&](CLI::App* cmd) {
        cmd->add_option("manifold", manifold,
                        "builtin name (torus3 | iwasawa | s3xs3-calabi-eckmann), file path, "
                        "or '-' for stdin")
            ->required();
    };

    auto* validate = app.add_subcommand("validate", "check a structure-equation presentation");
    add_manifold(validate);

    auto* coh = app.add_subcommand("cohomology", "cohomology groups of one model");
    add_manifold(coh);
    coh->add_option("--model", model, "bc | dolbeault | aeppli | derham (default bc)");
    coh->add_option("--bidegree", bidegree, "single bidegree 'p,q'");
    coh->add_flag("--all", all, "the full table (default when --bidegree is absent)");

    auto* ddbar = app.add_subcommand("ddbar-test", "are the canonical maps isomorphisms?");
    add_manifold(ddbar);

    auto* skt = app.add_subcommand("skt", "is the metric SKT (del dbar omega = 0)?");
    add_manifold(skt);

    auto* alpha = app.add_subcommand("alpha", "solve dbar omega = del dbar alpha");
    add_manifold(alpha);

    auto* prim = app.add_subcommand("primitive", "L_[omega] and primitive Bott-Chern classes");
    add_manifold(prim);
    prim->add_option("--class", class_expr, "Bott-Chern representative, e.g. '(23|2)+i(13|1)'");

    auto* prep = app.add_subcommand("primitive-rep", "search a primitive representative");
    add_manifold(prep);
    prep->add_option("--class", class_expr, "Bott-Chern representative")->required();
    prep->add_flag("--dclosed", dclosed, "search the d-closed Dolbeault orbit instead");

    auto* tang = app.add_subcommand("tangent", "polarised deformation tangent space");
    add_manifold(tang);

    auto* pair = app.add_subcommand("pairings", "Q/H pairings and the H^n star split");
    add_manifold(pair);

    auto* period = app.add_subcommand("period", "period point and domain membership");
    add_manifold(period);
    period->add_option("--form", form_expr, "degree-n form (default: the volume block)");

    auto* metrics = app.add_subcommand("metrics", "Weil-Petersson and period metrics");
    add_manifold(metrics);

    auto* deform_cmd = app.add_subcommand("deform", "deform the bigrading along t*theta");
    add_manifold(deform_cmd);
    deform_cmd->add_option("--theta", theta, "direction, e.g. '1*(|1)Z1'")->required();
    deform_cmd->add_option("--t", t, "parameter (exact scalar)")->required();

    auto* pol = app.add_subcommand("polarised", "Definition-1 polarisation check at t");
    add_manifold(pol);
    pol->add_option("--theta", theta, "direction")->required();
    pol->add_option("--t", t, "parameter (exact scalar)");
    pol->add_flag("--first-order", first_order, "exact first-order obstruction law");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(manifold);
        if (coh->parsed()) return cmd_cohomology(manifold, model, bidegree, all);
        if (ddbar->parsed()) return cmd_ddbar(manifold);
        if (skt->parsed()) return cmd_skt(manifold);
        if (alpha->parsed()) return cmd_alpha(manifold);
        if (prim->parsed()) return cmd_primitive(manifold, class_expr);
        if (prep->parsed()) return cmd_primitive_rep(manifold, class_expr, dclosed);
        if (tang->parsed()) return cmd_tangent(manifold);
        if (pair->parsed()) return cmd_pairings(manifold);
        if (period->parsed()) return cmd_period(manifold, form_expr);
        if (metrics->parsed()) return cmd_metrics(manifold);
        if (deform_cmd->parsed()) return cmd_deform(manifold, theta, t);
        if (pol->parsed()) return cmd_polarised(manifold, theta, t, first_order);
    } catch (const std::exception& e) {
        json err = {{"schema", "sktcoh/1"}, {"error", e.what()}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
