#include "skt/deformation.hpp"

#include <stdexcept>

namespace skt {

namespace {

// Substitute each generator by its image 1-form and expand. `images` holds
// the images of phi^1..phi^n, conj(phi)^1..conj(phi)^n in that order.
Form substitute(const Form& f, const std::vector<Form>& images, int n) {
    Form out;
    for (const auto& [m, c] : f.terms()) {
        Form acc = Form::monomial(Mono{}, c);
        for (int i : indices_of_mask(m.hol)) acc = wedge(acc, images[i - 1]);
        for (int j : indices_of_mask(m.anti)) acc = wedge(acc, images[n + j - 1]);
        out += acc;
    }
    return out;
}

std::vector<Form> rows_as_one_forms(const Matrix& m, int n) {
    std::vector<Form> out;
    for (int r = 0; r < 2 * n; ++r) {
        Form f;
        for (int b = 0; b < n; ++b) {
            Scalar ch = m.at(r, b);
            if (!ch.is_zero()) f.add_term(Mono{IndexMask(1) << b, 0}, ch);
            Scalar ca = m.at(r, n + b);
            if (!ca.is_zero()) f.add_term(Mono{0, IndexMask(1) << b}, ca);
        }
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

Form DeformedStructure::to_deformed(const Form& f) const {
    return substitute(f, gen_images_, base_->dim());
}

Form DeformedStructure::from_deformed(const Form& f) const {
    return substitute(f, gen_preimages_, base_->dim());
}

bool DeformedStructure::integrable() const {
    for (const Form& f : defect_)
        if (!f.is_zero()) return false;
    return true;
}

const Coframe& DeformedStructure::deformed() const {
    if (!deformed_)
        throw std::invalid_argument("DeformedStructure: fibre is not integrable");
    return *deformed_;
}

std::optional<DeformedStructure> build_deformation(const Coframe& base, const VectorForm& theta,
                                                   const Scalar& t, std::string* err) {
    int n = base.dim();
    if (!theta.is_zero() && theta.q() != 1)
        throw std::invalid_argument("build_deformation: theta must be a (0,1) vector form");

    DeformedStructure ds;
    ds.base_ = &base;
    ds.theta_ = theta;
    ds.t_ = t;

    Matrix big = Matrix::identity(2 * n);
    for (const auto& [vm, c] : theta.terms()) {
        int j = indices_of_mask(vm.anti).at(0);
        // eta^i = phi^i + t theta^i_{jbar} phi-bar^j; the sign is pinned by
        // the first-order law (the linear coefficient of the (0,2)_t class
        // of omega_tilde along t*theta must equal [theta .| zeta]_A in this
        // tool's contraction convention).
        big.set(vm.frame - 1, n + j - 1, big.at(vm.frame - 1, n + j - 1) + t * c);
        big.set(n + vm.frame - 1, j - 1,
                big.at(n + vm.frame - 1, j - 1) + t.conj() * c.conj());
    }
    ds.fwd_ = big;
    ds.det_ = determinant(big);
    if (ds.det_.is_zero()) {
        if (err) *err = "degenerate deformed coframe (change of basis is singular)";
        return std::nullopt;
    }
    ds.bwd_ = *inverse(big);
    ds.gen_images_ = rows_as_one_forms(ds.bwd_, n);     // phi in eta-coordinates
    ds.gen_preimages_ = rows_as_one_forms(ds.fwd_, n);  // eta in phi-coordinates

    // d eta^i in eta-coordinates, split by deformed bidegree
    Matrix theta_m(n, n);
    for (const auto& [vm, c] : theta.terms())
        theta_m.set(vm.frame - 1, indices_of_mask(vm.anti).at(0) - 1, c);
    std::vector<Form> dtable;
    for (int i = 0; i < n; ++i) {
        Form d_eta = base.d_generator(i + 1);
        for (int j = 0; j < n; ++j) {
            Scalar c = theta_m.at(i, j);
            if (c.is_zero()) continue;
            d_eta += (t * c) * conjugate(base.d_generator(j + 1));
        }
        Form in_eta = ds.to_deformed(d_eta);
        ds.defect_.push_back(in_eta.component({0, 2}));
        dtable.push_back(in_eta - in_eta.component({0, 2}));
    }

    if (ds.integrable()) {
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i) names.push_back(base.name(i) + "'");
        ds.deformed_.emplace(n, std::move(names), std::move(dtable));
    }
    return ds;
}

DeformedStructure deform(const Coframe& base, const VectorForm& theta, const Scalar& t) {
    if (!base.dbar(theta).is_zero())
        throw std::invalid_argument("deform: theta is not dbar-closed");
    std::string err;
    auto ds = build_deformation(base, theta, t, &err);
    if (!ds) throw std::invalid_argument("deform: " + err);
    if (!ds->integrable()) {
        std::string detail = "deform: deformed structure is not integrable;";
        for (int i = 0; i < base.dim(); ++i)
            if (!ds->integrability_defect()[i].is_zero())
                detail += " defect(" + base.name(i + 1) + ") = " +
                          ds->integrability_defect()[i].str();
        throw std::invalid_argument(detail);
    }
    ds->deformed().require_valid();
    return std::move(*ds);
}

PolarisationCheck polarisation_check(const DeformedStructure& ds, const SktContext& ctx) {
    PolarisationCheck out;
    if (!ctx.omega_tilde) {
        out.detail = "no d-closed representative of [omega]_A (alpha-equation infeasible)";
        return out;
    }
    if (!ds.integrable()) {
        out.detail = "deformed structure is not integrable";
        return out;
    }
    const Coframe& cf = ds.deformed();
    CohomologyRing ring(cf);
    Form w = ds.to_deformed(*ctx.omega_tilde);
    auto dec = ring.hodge_decompose_2form(w);
    if (!dec.feasible || !dec.unique) {
        out.detail = dec.feasible
                         ? "Definition-1 projection ill-defined: " + dec.detail
                         : "not applicable: " + dec.detail;
        return out;
    }
    out.applicable = true;
    out.class02 = dec.class02;
    out.class20 = dec.class20;
    bool z02 = true, z20 = true;
    for (const Scalar& s : out.class02) z02 = z02 && s.is_zero();
    for (const Scalar& s : out.class20) z20 = z20 && s.is_zero();
    if (z02 != z20)
        throw std::logic_error(
            "polarisation_check: conjugate projections disagree on a real class");
    out.polarised = z02;
    return out;
}

DeformedMetric deformed_skt_metric(const DeformedStructure& ds, const SktContext& ctx) {
    if (!ctx.omega_hat)
        throw std::invalid_argument("deformed_skt_metric: alpha-equation data unavailable");
    const Coframe& cf = ds.deformed();  // throws when not integrable
    int n = cf.dim();
    DeformedMetric out;
    Form hat = ds.to_deformed(*ctx.omega_hat);
    out.omega_t = hat.component({1, 1});
    out.real = conjugate(out.omega_t) == out.omega_t;
    out.del_dbar_closed = cf.del(cf.dbar(out.omega_t)).is_zero();
    Matrix m(n, n);
    Scalar minus_i = -Scalar::i();
    for (const auto& [mono, c] : out.omega_t.terms()) {
        int j = indices_of_mask(mono.hol).at(0);
        int k = indices_of_mask(mono.anti).at(0);
        m.set(j - 1, k - 1, minus_i * c);
    }
    out.coefficients = m;
    out.positive = true;
    for (int k = 1; k <= n; ++k) {
        Matrix sub(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) sub.set(r, c, m.at(r, c));
        if (!determinant(sub).is_positive_real()) out.positive = false;
    }
    return out;
}

namespace {

// Exact polynomial through the sample points (Vandermonde solve); ys[k] is
// the value at xs[k]. Degree bound = xs.size() - 1.
std::vector<Scalar> interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
    int m = static_cast<int>(xs.size());
    Matrix v(m, m);
    for (int r = 0; r < m; ++r) {
        Scalar p(1);
        for (int c = 0; c < m; ++c) {
            v.set(r, c, p);
            p *= xs[r];
        }
    }
    auto sol = solve_affine(v, ys);
    if (!sol) throw std::logic_error("interpolate: Vandermonde system infeasible");
    return sol->particular;
}

Scalar eval_poly(const std::vector<Scalar>& coeffs, const Scalar& x) {
    Scalar acc;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) acc = acc * x + coeffs[i];
    return acc;
}

}  // namespace

TangentConsistency polarised_tangent_consistency(const SktContext& ctx,
                                                 const CohomologyRing& ring,
                                                 const VectorForm& theta) {
    if (!ctx.omega_tilde || !ctx.zeta)
        throw std::invalid_argument(
            "polarised_tangent_consistency: no d-closed representative (alpha infeasible)");
    const Coframe& cf = ring.coframe();
    int n = cf.dim();
    if (!cf.dbar(theta).is_zero())
        throw std::invalid_argument("polarised_tangent_consistency: theta is not dbar-closed");

    // kappa(t) := (0,2)_t component of omega_tilde, written back in the fixed
    // coframe, is poly(t)/det(t) with deg(poly * det) <= 4n. Sampling
    // kappa * det^2 at degree_bound+1 points pins the polynomial exactly.
    int degree_bound = 4 * n + 2;
    int needed = degree_bound + 2;  // one spare point for re-verification
    std::vector<Scalar> xs;
    std::map<Mono, Vec> samples;
    int den = 2;
    while (static_cast<int>(xs.size()) < needed) {
        Scalar t = Scalar::of(1, den++);
        auto ds = build_deformation(cf, theta, t);
        if (!ds) continue;
        Form kappa = ds->from_deformed(ds->to_deformed(*ctx.omega_tilde).component({0, 2}));
        Scalar det2 = ds->basis_determinant() * ds->basis_determinant();
        Form scaled = kappa.scaled(det2);
        xs.push_back(t);
        for (auto& [m, vec] : samples) vec.push_back(scaled.coeff(m));
        for (const auto& [m, c] : scaled.terms()) {
            if (!samples.count(m)) {
                samples[m] = Vec(xs.size() - 1, Scalar());
                samples[m].push_back(c);
            }
        }
    }

    std::vector<Scalar> fit_xs(xs.begin(), xs.end() - 1);
    TangentConsistency out;
    for (const auto& [m, vec] : samples) {
        Vec fit_ys(vec.begin(), vec.end() - 1);
        std::vector<Scalar> poly = interpolate(fit_xs, fit_ys);
        if (eval_poly(poly, xs.back()) != vec.back())
            throw std::logic_error(
                "polarised_tangent_consistency: degree bound violated at spare sample");
        if (!poly[0].is_zero())
            throw std::logic_error("polarised_tangent_consistency: kappa(0) != 0");
        if (poly.size() > 1 && !poly[1].is_zero()) out.linear_coefficient.add_term(m, poly[1]);
    }
    if (!out.linear_coefficient.is_zero() && !out.linear_coefficient.is_pure({0, 2}))
        throw std::logic_error("polarised_tangent_consistency: linear term is not (0,2)");

    const CohomologyGroup& a02 = ring.group(Model::Aeppli, {0, 2});
    out.linear_class = a02.reduce(out.linear_coefficient);
    out.contraction_class = a02.reduce(cf.contract(theta, *ctx.zeta));
    out.matches = out.linear_class == out.contraction_class;
    return out;
}

}  // namespace skt
