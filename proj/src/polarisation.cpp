#include "skt/polarisation.hpp"

#include <stdexcept>

namespace skt {

bool skt_check(const MetricContext& mc) {
    const Coframe& cf = mc.coframe();
    return cf.del(cf.dbar(mc.omega())).is_zero();
}

std::optional<Form> solve_alpha(const MetricContext& mc) {
    const Coframe& cf = mc.coframe();
    auto src = cf.basis({0, 1});
    auto dst = cf.basis({1, 2});
    Matrix a = matrix_of([&](const Form& f) { return cf.del(cf.dbar(f)); }, src, dst);
    Vec b = form_coords(cf.dbar(mc.omega()), dst);
    auto x = min_norm_solution(a, b, mc.gram({0, 1}));
    if (!x) return std::nullopt;
    return form_from_coords(*x, src);
}

SktContext SktContext::build(const MetricContext& mc) {
    SktContext ctx;
    ctx.mc = &mc;
    ctx.skt = skt_check(mc);
    if (!ctx.skt) return ctx;
    ctx.alpha = solve_alpha(mc);
    if (!ctx.alpha) return ctx;
    const Coframe& cf = mc.coframe();
    const Form& w = mc.omega();
    Form a = *ctx.alpha;
    Form abar = conjugate(a);
    ctx.omega_tilde = w + cf.del(a) + cf.dbar(abar);
    ctx.omega_hat = w - cf.del(abar) - cf.dbar(a);
    ctx.zeta = w + cf.del(a);
    // construction invariants
    if (!cf.d(*ctx.omega_tilde).is_zero())
        throw std::logic_error("SktContext: omega_tilde is not d-closed");
    if (!cf.d(*ctx.omega_hat).is_zero())
        throw std::logic_error("SktContext: omega_hat is not d-closed");
    if (conjugate(*ctx.omega_hat) != *ctx.omega_hat)
        throw std::logic_error("SktContext: omega_hat is not real");
    if (!cf.dbar(*ctx.zeta).is_zero())
        throw std::logic_error("SktContext: zeta is not dbar-closed");
    return ctx;
}

HolomorphicVolume::HolomorphicVolume(const Coframe& cf, Form u) : u_(std::move(u)) {
    int n = cf.dim();
    if (u_.is_zero() || !u_.is_pure({n, 0}))
        throw std::invalid_argument("HolomorphicVolume: expected a nonzero (n,0)-form");
    if (u_.terms().size() != 1 || u_.terms().begin()->first.hol != full_mask(n))
        throw std::invalid_argument("HolomorphicVolume: form vanishes somewhere");
    if (!cf.dbar(u_).is_zero())
        throw std::invalid_argument("HolomorphicVolume: form is not holomorphic (dbar u != 0)");
}

Polarisation::Polarisation(const MetricContext& mc, const CohomologyRing& ring)
    : mc_(&mc), ring_(&ring) {}

void Polarisation::require_skt() const {
    if (!skt_check(*mc_))
        throw std::invalid_argument("the metric is not SKT (del dbar omega != 0)");
}

Polarisation::LValue Polarisation::l_omega(const Form& gamma, Bidegree b) const {
    require_skt();
    const CohomologyGroup& bc = ring_->group(Model::BottChern, b);
    if (!bc.is_in_numerator(gamma))
        throw std::invalid_argument("l_omega: representative is not del- and dbar-closed");
    LValue out;
    out.wedge_form = wedge(mc_->omega(), gamma);
    out.aeppli_coords = ring_->group(Model::Aeppli, {b.p + 1, b.q + 1}).reduce(out.wedge_form);
    return out;
}

Matrix Polarisation::l_matrix(Bidegree b) const {
    require_skt();
    const CohomologyGroup& bc = ring_->group(Model::BottChern, b);
    const CohomologyGroup& a = ring_->group(Model::Aeppli, {b.p + 1, b.q + 1});
    std::vector<Vec> cols;
    for (const Form& r : bc.representatives()) cols.push_back(a.reduce(wedge(mc_->omega(), r)));
    return Matrix::from_columns(a.dimension(), cols);
}

Polarisation::PrimitiveSpace Polarisation::primitive_class_space(int p) const {
    require_skt();
    int n = mc_->n();
    Bidegree b{p, n - p};
    if (b.q < 0 || b.p < 0)
        throw std::invalid_argument("primitive_class_space: bidegree off the antidiagonal");
    const CohomologyGroup& bc = ring_->group(Model::BottChern, b);
    PrimitiveSpace out;
    out.class_coords = kernel_basis(l_matrix(b));
    out.dimension = static_cast<int>(out.class_coords.size());
    for (const Vec& v : out.class_coords) out.reps.push_back(bc.class_representative(v));
    return out;
}

std::variant<Form, Infeasible, Polarisation::NotPrimitive>
Polarisation::primitive_representative(const Form& gamma, Bidegree b, bool dolbeault_orbit) const {
    require_skt();
    int n = mc_->n();
    if (b.p + b.q != n)
        throw std::invalid_argument("primitive_representative: bidegree must be (p, n-p)");
    LValue l = l_omega(gamma, b);
    if (!l.zero_class()) return NotPrimitive{l.aeppli_coords};

    const Coframe& cf = *&mc_->coframe();
    const Form& w = mc_->omega();
    auto target = cf.basis({b.p + 1, b.q + 1});

    if (!dolbeault_orbit) {
        // search gamma + del dbar beta, beta of bidegree (p-1, q-1)
        auto src = cf.basis({b.p - 1, b.q - 1});
        Matrix a = matrix_of(
            [&](const Form& f) { return wedge(w, cf.del(cf.dbar(f))); }, src, target);
        Vec rhs = form_coords(wedge(w, gamma).scaled(Scalar(-1)), target);
        auto sol = solve_affine(a, rhs);
        if (!sol) {
            // certify: the augmented system must have strictly larger rank
            Matrix aug = a.hcat(Matrix::from_columns(static_cast<int>(target.size()), {rhs}));
            if (rank(aug) != rank(a) + 1)
                throw std::logic_error("primitive_representative: inconsistent infeasibility");
            return Infeasible{"no primitive representative in the Bott-Chern class"};
        }
        Form beta = form_from_coords(sol->particular, src);
        Form v = gamma + cf.del(cf.dbar(beta));
        if (!wedge(w, v).is_zero())
            throw std::logic_error("primitive_representative: witness fails primitivity");
        return v;
    }

    // d-closed-and-primitive search over the Dolbeault orbit gamma + dbar w'
    auto src = cf.basis({b.p, b.q - 1});
    auto d_target = cf.basis_total(n + 1);
    Matrix a_prim = matrix_of([&](const Form& f) { return wedge(w, cf.dbar(f)); }, src, target);
    Matrix a_closed = matrix_of([&](const Form& f) { return cf.d(cf.dbar(f)); }, src, d_target);
    Matrix a = a_prim.vcat(a_closed);
    Vec rhs = form_coords(wedge(w, gamma).scaled(Scalar(-1)), target);
    Vec rhs2 = form_coords(cf.d(gamma).scaled(Scalar(-1)), d_target);
    rhs.insert(rhs.end(), rhs2.begin(), rhs2.end());
    auto sol = solve_affine(a, rhs);
    if (!sol)
        return Infeasible{"no d-closed primitive representative in the Dolbeault class"};
    Form v = gamma + cf.dbar(form_from_coords(sol->particular, src));
    if (!wedge(w, v).is_zero() || !cf.d(v).is_zero())
        throw std::logic_error("primitive_representative: witness verification failed");
    return v;
}

std::variant<Polarisation::CyClass, Infeasible> Polarisation::calabi_yau_map(
    const VectorForm& theta, const HolomorphicVolume& u) const {
    const Coframe& cf = mc_->coframe();
    int n = mc_->n();
    if (!theta.is_zero() && theta.q() != 1)
        throw std::invalid_argument("calabi_yau_map: theta must be a (0,1) vector form");
    if (!cf.dbar(theta).is_zero())
        throw std::invalid_argument("calabi_yau_map: theta is not dbar-closed");
    Form w = cf.contract(theta, u.form());

    // solve del(w + dbar eta) = 0 with eta of minimal norm
    auto src = cf.basis({n - 1, 0});
    auto dst = cf.basis({n, 1});
    Matrix a = matrix_of([&](const Form& f) { return cf.del(cf.dbar(f)); }, src, dst);
    Vec rhs = form_coords(cf.del(w).scaled(Scalar(-1)), dst);
    auto eta = min_norm_solution(a, rhs, mc_->gram({n - 1, 0}));
    if (!eta) return Infeasible{"no eta with del(theta .| u + dbar eta) = 0"};
    CyClass out;
    out.eta = form_from_coords(*eta, src);
    out.rep = w + cf.dbar(out.eta);
    const CohomologyGroup& bc = ring_->group(Model::BottChern, {n - 1, 1});
    out.bc_coords = bc.reduce(out.rep);
    return out;
}

Matrix Polarisation::wedge_u_matrix(int q, const HolomorphicVolume& u) const {
    int n = mc_->n();
    const CohomologyGroup& src = ring_->group(Model::Dolbeault, {0, q});
    const CohomologyGroup& dst = ring_->group(Model::Dolbeault, {n, q});
    std::vector<Vec> cols;
    for (const Form& r : src.representatives()) cols.push_back(dst.reduce(wedge(u.form(), r)));
    return Matrix::from_columns(dst.dimension(), cols);
}

const Polarisation::VectorCohomology& Polarisation::vector_cohomology() const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (vcoh_) return *vcoh_;
    }
    const Coframe& cf = mc_->coframe();
    VectorCohomology vc;
    vc.ambient = cf.vector_basis(1);
    auto dst = cf.vector_basis(2);
    auto src0 = cf.vector_basis(0);
    vc.dbar_matrix = matrix_of_vec([&](const VectorForm& t) { return cf.dbar(t); },
                                   vc.ambient, dst);
    std::vector<Vec> num = kernel_basis(vc.dbar_matrix);
    std::vector<Vec> denom_gens;
    for (const VMono& m : src0) {
        Vec v = vform_coords(cf.dbar(VectorForm::monomial(m.frame, m.anti)), vc.ambient);
        bool zero = true;
        for (const Scalar& s : v) zero = zero && s.is_zero();
        if (!zero) denom_gens.push_back(std::move(v));
    }
    std::vector<Vec> denom = canonical_span(denom_gens, static_cast<int>(vc.ambient.size()));
    int amb = static_cast<int>(vc.ambient.size());
    vc.denom_cols = Matrix::from_columns(amb, denom);
    int dim = static_cast<int>(num.size()) - static_cast<int>(denom.size());
    Matrix acc = vc.denom_cols;
    int r = static_cast<int>(denom.size());
    std::vector<Vec> reps;
    for (const Vec& v : num) {
        if (static_cast<int>(reps.size()) == dim) break;
        Matrix cand = acc.hcat(Matrix::from_columns(amb, {v}));
        if (rank(cand) > r) {
            acc = cand;
            ++r;
            reps.push_back(v);
            vc.reps.push_back(vform_from_coords(v, vc.ambient));
        }
    }
    if (static_cast<int>(reps.size()) != dim)
        throw std::logic_error("vector_cohomology: representative completion failed");
    vc.rep_cols = Matrix::from_columns(amb, reps);
    std::lock_guard<std::mutex> lock(mu_);
    if (!vcoh_) vcoh_ = std::move(vc);
    return *vcoh_;
}

Vec Polarisation::VectorCohomology::reduce(const VectorForm& theta) const {
    Vec coords = vform_coords(theta, ambient);
    Vec img = dbar_matrix.apply(coords);
    for (const Scalar& s : img)
        if (!s.is_zero())
            throw std::invalid_argument("vector reduce: theta is not dbar-closed");
    auto sol = solve_affine(rep_cols.hcat(denom_cols), coords);
    if (!sol) throw std::logic_error("vector reduce: representatives do not span");
    return Vec(sol->particular.begin(), sol->particular.begin() + dimension());
}

Polarisation::TangentSpace Polarisation::polarised_tangent_space(const SktContext& ctx) const {
    if (!ctx.zeta)
        throw std::invalid_argument(
            "polarised_tangent_space: no d-closed representative (alpha-equation infeasible)");
    const Coframe& cf = mc_->coframe();
    const VectorCohomology& vc = vector_cohomology();
    const CohomologyGroup& dolb02 = ring_->group(Model::Dolbeault, {0, 2});
    std::vector<Vec> cols;
    for (const VectorForm& t : vc.reps)
        cols.push_back(dolb02.reduce(cf.contract(t, *ctx.zeta)));
    Matrix map = Matrix::from_columns(dolb02.dimension(), cols);
    TangentSpace out;
    for (const Vec& k : kernel_basis(map)) {
        out.class_coords.push_back(k);
        VectorForm combo;
        for (int i = 0; i < vc.dimension(); ++i)
            combo = combo + vc.reps[i].scaled(k[i]);
        out.basis.push_back(combo);
    }
    return out;
}

Polarisation::LefschetzSplit Polarisation::lefschetz_split(const Form& v) const {
    int n = mc_->n();
    if (!v.is_zero() && !v.is_pure({n - 1, 1}))
        throw std::invalid_argument("lefschetz_split: expected a (n-1,1)-form");
    const Coframe& cf = mc_->coframe();
    const Form& w = mc_->omega();
    auto src = cf.basis({n - 2, 0});
    auto dst = cf.basis({n, 2});
    Form w2 = wedge(w, w);
    Matrix a = matrix_of([&](const Form& f) { return wedge(w2, f); }, src, dst);
    Vec rhs = form_coords(wedge(w, v), dst);
    auto sol = solve_affine(a, rhs);
    if (!sol || !sol->kernel.empty())
        throw std::logic_error("lefschetz_split: Lefschetz system is not uniquely solvable");
    LefschetzSplit out;
    out.zeta = form_from_coords(sol->particular, src);
    out.primitive = v - wedge(w, out.zeta);
    if (!wedge(w, out.primitive).is_zero())
        throw std::logic_error("lefschetz_split: primitive part fails primitivity");
    return out;
}

}  // namespace skt
