#include "skt/hodge_riemann.hpp"

#include <stdexcept>

namespace skt {

namespace {

void require_degree(const Form& f, int k, const char* who) {
    for (const auto& [m, c] : f.terms())
        if (m.degree() != k)
            throw std::invalid_argument(std::string(who) + ": expected a degree-" +
                                        std::to_string(k) + " form");
}

}  // namespace

Scalar pairing_q(const MetricContext& mc, const Form& a, const Form& b) {
    int n = mc.n();
    require_degree(a, n, "pairing_q");
    require_degree(b, n, "pairing_q");
    long e = static_cast<long>(n) * (n - 1) / 2;
    return Scalar::sign_pow(e) * mc.integrate(wedge(a, b));
}

Scalar pairing_h(const MetricContext& mc, const Form& a, const Form& b) {
    int n = mc.n();
    require_degree(a, n, "pairing_h");
    require_degree(b, n, "pairing_h");
    long e = static_cast<long>(n) * (n + 1) / 2;
    return Scalar::sign_pow(e) * Scalar::i_pow(n) * mc.integrate(wedge(a, conjugate(b)));
}

HnSplit hn_split(const MetricContext& mc) {
    int n = mc.n();
    const std::vector<Form>& hb = mc.harmonic_basis_total(n);
    auto amb = mc.coframe().basis_total(n);
    int bnum = static_cast<int>(hb.size());

    // restriction R of star to the harmonic subspace: S * HB = HB * R
    std::vector<Vec> hb_cols;
    for (const Form& h : hb) hb_cols.push_back(form_coords(h, amb));
    Matrix hbm = Matrix::from_columns(static_cast<int>(amb.size()), hb_cols);
    Matrix r(bnum, bnum);
    for (int c = 0; c < bnum; ++c) {
        Vec starred = form_coords(mc.star(hb[c]), amb);
        auto sol = solve_affine(hbm, starred);
        if (!sol) throw std::logic_error("hn_split: star does not preserve harmonic forms");
        for (int rr = 0; rr < bnum; ++rr) r.set(rr, c, sol->particular[rr]);
    }

    HnSplit out;
    out.eigen_plus = (n % 2 == 0) ? Scalar(1) : Scalar::i();
    out.eigen_minus = -out.eigen_plus;
    auto eigenbasis = [&](const Scalar& lambda) {
        Matrix shifted = r - Matrix::identity(bnum).scaled(lambda);
        std::vector<Form> basis;
        for (const Vec& k : kernel_basis(shifted)) {
            Form f;
            for (int i = 0; i < bnum; ++i) f += hb[i].scaled(k[i]);
            basis.push_back(f);
        }
        return basis;
    };
    out.plus = eigenbasis(out.eigen_plus);
    out.minus = eigenbasis(out.eigen_minus);
    if (static_cast<int>(out.plus.size() + out.minus.size()) != bnum)
        throw std::logic_error("hn_split: eigenspaces do not span the harmonic space");
    return out;
}

PeriodVerdict period_point(const MetricContext& mc, const CohomologyRing& ring,
                           const HolomorphicVolume& u) {
    return period_membership(mc, ring, u.form());
}

PeriodVerdict period_membership(const MetricContext& mc, const CohomologyRing& ring,
                                const Form& form) {
    int n = mc.n();
    if (form.is_zero()) throw std::invalid_argument("period_membership: zero form");
    const CohomologyGroup& hn = ring.de_rham(n);
    PeriodVerdict out;
    out.de_rham_coords = hn.reduce(form);
    Form rep = hn.class_representative(out.de_rham_coords);
    out.q = pairing_q(mc, rep, rep);
    out.h = pairing_h(mc, rep, rep);
    if (!out.h.is_real()) throw std::logic_error("period_point: H(u,u) is not real");
    bool q_ok = out.q.is_zero();
    bool h_ok = (n % 2 == 0) ? out.h.is_positive_real()
                             : (out.h.is_real() && out.h.re() < 0);
    out.in_domain = q_ok && h_ok;
    if (!q_ok)
        out.reason = "Q(u,u) = " + out.q.str() + " != 0";
    else if (!h_ok)
        out.reason = "H(u,u) = " + out.h.str() + (n % 2 == 0 ? " is not > 0" : " is not < 0");
    else
        out.reason = "Q(u,u) = 0 and H(u,u) = " + out.h.str();
    return out;
}

MetricsReport metrics_report(const Polarisation& pol, const SktContext& ctx,
                             const HolomorphicVolume& u,
                             const std::vector<VectorForm>& tangent_basis) {
    const MetricContext& mc = pol.metric_context();
    const CohomologyRing& ring = pol.ring();
    const Coframe& cf = mc.coframe();
    int n = mc.n();

    if (ctx.mc != &mc || !ctx.skt)
        throw std::invalid_argument("metrics_report: SKT context does not match the metric");

    MetricsReport rep;
    rep.normalisation = Scalar::i_pow(static_cast<long>(n) * n) *
                        mc.integrate(wedge(u.form(), conjugate(u.form())));
    if (!rep.normalisation.is_positive_real())
        throw std::logic_error("metrics_report: i^{n^2} integral of u /\\ conj(u) must be > 0");

    // frame monomials Z_i .| u span (n-1,0); used to adjust representatives
    auto src_frames = cf.vector_basis(0);
    auto nm10 = cf.basis({n - 1, 0});
    Matrix contract_u = matrix_of_vec_to_form(
        [&](const VectorForm& xi) { return cf.contract(xi, u.form()); }, src_frames, nm10);

    int k = static_cast<int>(tangent_basis.size());
    rep.g1 = Matrix(k, k);
    rep.g2 = Matrix(k, k);
    rep.gamma = Matrix(k, k);

    for (const VectorForm& theta : tangent_basis) {
        MetricsReport::Entry e;
        e.theta = theta;
        Form w = cf.contract(theta, u.form());
        CohClass cls{Model::Dolbeault, {n - 1, 1}, w};
        auto min = ring.minimal_d_closed_rep(cls);
        if (!min.feasible) {
            e.feasible = false;
            e.detail = min.detail;
            rep.entries.push_back(std::move(e));
            continue;
        }
        // theta' = theta + dbar xi with xi .| u = (the dbar-potential moving
        // w to the minimal representative); then theta' .| u = rep exactly.
        Form delta = min.rep - w;  // lies in dbar(Lambda^{n-1,0})
        auto dst = cf.basis({n - 1, 1});
        Matrix a = matrix_of(
            [&](const Form& f) { return cf.dbar(f); }, nm10, dst);
        Matrix full = a * contract_u;
        auto xi = solve_affine(full, form_coords(delta, dst));
        if (!xi) throw std::logic_error("metrics_report: representative adjustment failed");
        VectorForm xi_v = vform_from_coords(xi->particular, src_frames);
        e.theta_adjusted = theta + cf.dbar(xi_v);
        e.contraction = min.rep;
        if (cf.contract(e.theta_adjusted, u.form()) != min.rep)
            throw std::logic_error("metrics_report: adjusted contraction mismatch");
        auto split = pol.lefschetz_split(e.contraction);
        e.primitive_part = split.primitive;
        e.zeta = split.zeta;
        rep.entries.push_back(std::move(e));
    }

    Scalar inv_d = rep.normalisation.inverse();
    Scalar c_n = (n % 2 == 0) ? Scalar(1) : Scalar::i();
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) {
            if (!rep.entries[r].feasible || !rep.entries[c].feasible) continue;
            const auto& er = rep.entries[r];
            const auto& ec = rep.entries[c];
            rep.g1.set(r, c, mc.inner_vec(er.theta_adjusted, ec.theta_adjusted));
            rep.g2.set(r, c, mc.inner(er.contraction, ec.contraction) * inv_d);
            Scalar g = -(c_n * mc.integrate(wedge(er.contraction, conjugate(ec.contraction)))) *
                       inv_d;
            rep.gamma.set(r, c, g);
        }
    }

    // (G2 - gamma) must equal 4 Gram(zeta) / normalisation entrywise
    rep.identity_holds = true;
    rep.difference_psd = true;
    for (int r = 0; r < k; ++r) {
        if (!rep.entries[r].feasible) {
            rep.difference.push_back(Scalar());
            rep.zeta_norms.push_back(Scalar());
            continue;
        }
        Scalar diff = rep.g2.at(r, r) - rep.gamma.at(r, r);
        Scalar zn = Scalar(4) * mc.inner(rep.entries[r].zeta, rep.entries[r].zeta) * inv_d;
        rep.difference.push_back(diff);
        rep.zeta_norms.push_back(zn);
        if (diff != zn) rep.identity_holds = false;
        if (!(diff.is_zero() || diff.is_positive_real())) rep.difference_psd = false;
        for (int c = 0; c < k; ++c) {
            if (!rep.entries[c].feasible) continue;
            Scalar off = rep.g2.at(r, c) - rep.gamma.at(r, c);
            Scalar zg = Scalar(4) * mc.inner(rep.entries[r].zeta, rep.entries[c].zeta) * inv_d;
            if (off != zg) rep.identity_holds = false;
        }
    }
    return rep;
}

}  // namespace skt
