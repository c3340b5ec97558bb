// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// everywhere, zero tolerance. The process exit code is the number of
// failing criteria.

#include "laws.hpp"

#include "skt/deformation.hpp"

#include <iostream>

using namespace skt;
using namespace skt::testing;

namespace {

int failures = 0;

void report(int number, bool passed, const std::string& text) {
    std::cout << "criterion " << number << ": " << (passed ? "PASS" : "FAIL") << " -- " << text
              << "\n";
    if (!passed) ++failures;
}

bool all_zero(const Vec& v) {
    for (const Scalar& s : v)
        if (!s.is_zero()) return false;
    return true;
}

bool same_span(const std::vector<Form>& a, const std::vector<Form>& b,
               const std::vector<Mono>& ambient) {
    std::vector<Vec> ca, cb;
    for (const Form& f : a) ca.push_back(form_coords(f, ambient));
    for (const Form& f : b) cb.push_back(form_coords(f, ambient));
    Matrix ma = Matrix::from_columns(static_cast<int>(ambient.size()), ca);
    Matrix mb = Matrix::from_columns(static_cast<int>(ambient.size()), cb);
    return rank(ma) == rank(mb) && rank(ma.hcat(mb)) == rank(ma);
}

struct Rig {
    ManifoldInput input;
    MetricContext mc;
    CohomologyRing ring;
    explicit Rig(const std::string& name)
        : input(builtin(name)), mc(input.coframe, input.metric), ring(input.coframe, &mc) {}
};

// 1. the S^3 x S^3 Bott-Chern table with the published harmonic generators
void criterion_1() {
    Rig s3("s3xs3-calabi-eckmann");
    bool ok = true;
    std::map<std::pair<int, int>, std::vector<Form>> generators{
        {{0, 0}, {F("1*(|)")}},
        {{1, 1}, {F("1*(1|1)"), F("1*(2|2)")}},
        {{2, 1}, {F("(23|2)+i(13|1)")}},
        {{1, 2}, {F("(2|23)+-1i*(1|13)")}},
        {{2, 2}, {F("1*(12|12)")}},
        {{3, 2}, {F("1*(123|12)")}},
        {{2, 3}, {F("1*(12|123)")}},  // the published index set is corrected here
        {{3, 3}, {F("1*(123|123)")}},
    };
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) {
            const auto& g = s3.ring.group(Model::BottChern, {p, q});
            auto it = generators.find({p, q});
            int want = it == generators.end() ? 0 : static_cast<int>(it->second.size());
            if (g.dimension() != want) ok = false;
            if (it != generators.end() &&
                !same_span(g.representatives(), it->second, s3.input.coframe.basis({p, q})))
                ok = false;
        }
    report(1, ok,
           "s3xs3 Bott-Chern dimensions (1,2,1,1,1,1,1,1) with harmonic generators spanning "
           "the published forms; H^{2,3} generator (12|123)");
}

// 2. SKT verdicts on the three builtins
void criterion_2() {
    bool ok = skt_check(Rig("s3xs3-calabi-eckmann").mc) && skt_check(Rig("torus3").mc) &&
              !skt_check(Rig("iwasawa").mc);
    report(2, ok, "del dbar omega = 0 exactly on s3xs3 and torus3, nonzero on iwasawa");
}

// 3. the primitivity counterexample with its exact intermediate
void criterion_3() {
    Rig s3("s3xs3-calabi-eckmann");
    Polarisation pol(s3.mc, s3.ring);
    Form gamma = F("(23|2)+i(13|1)");
    auto l = pol.l_omega(gamma, {2, 1});
    bool ok = l.wedge_form == F("-1/2+1/2i*(123|12)");
    ok = ok && l.zero_class();
    ok = ok && s3.input.coframe.del(F("1*(13|13)")) == F("1*(123|12)");
    auto res = pol.primitive_representative(gamma, {2, 1});
    ok = ok && std::holds_alternative<Infeasible>(res);
    report(3, ok,
           "L_[omega]([(23|2)+i(13|1)]) = ((-1+i)/2)(123|12), Aeppli-trivial via del(13|13), "
           "and no primitive representative exists (certified infeasibility)");
}

// 4. Theorem 9 / Corollary 10 dimensions on the torus
void criterion_4() {
    Rig torus("torus3");
    Polarisation pol(torus.mc, torus.ring);
    SktContext ctx = SktContext::build(torus.mc);
    HolomorphicVolume u(torus.input.coframe, *torus.input.volume);
    auto tangent = pol.polarised_tangent_space(ctx);
    auto prim = pol.primitive_class_space(2);
    int h21 = torus.ring.group(Model::BottChern, {2, 1}).dimension();
    int h02 = torus.ring.group(Model::Dolbeault, {0, 2}).dimension();
    bool ok = tangent.dimension() == 6 && prim.dimension == 6 && h21 - h02 == 6;
    ok = ok && rank(pol.l_matrix({2, 1})) == h02 && h02 == 3;

    // T~_[u] maps the tangent basis bijectively onto the primitive classes
    const auto& bc = torus.ring.group(Model::BottChern, {2, 1});
    std::vector<Vec> images;
    for (const VectorForm& theta : tangent.basis) {
        auto res = pol.calabi_yau_map(theta, u);
        if (!std::holds_alternative<Polarisation::CyClass>(res)) {
            ok = false;
            break;
        }
        Vec coords = std::get<Polarisation::CyClass>(res).bc_coords;
        Matrix span = Matrix::from_columns(bc.dimension(), prim.class_coords);
        if (!solve_affine(span, coords)) ok = false;
        images.push_back(coords);
    }
    ok = ok && rank(Matrix::from_columns(bc.dimension(), images)) == 6;
    report(4, ok,
           "dim H^{0,1}(X,T^{1,0}X)_[omega] = dim H^{2,1}_{BC,prim} = h^{2,1} - h^{0,2} = 6, "
           "dim im L_[omega] = h^{0,2} = 3, and T~_[u] bijects the two spaces");
}

// 5. the randomised law suite (>= 100 cases per law, fixed seeds)
void criterion_5() {
    bool ok = true;
    std::string first_failure;
    for (const auto& law : run_all_laws()) {
        if (!law.passed) {
            ok = false;
            if (first_failure.empty()) first_failure = law.name + ": " + law.detail;
        }
    }
    report(5, ok,
           ok ? "all seven exact law suites pass (differentials, contraction Leibniz, "
                "primitive star formula, degree-n equivalence, Lefschetz/star coincidence, "
                "Q/H signs, L_[omega] independence)"
              : first_failure);
}

// 6. metric comparison on the torus
void criterion_6() {
    Rig torus("torus3");
    Polarisation pol(torus.mc, torus.ring);
    SktContext ctx = SktContext::build(torus.mc);
    HolomorphicVolume u(torus.input.coframe, *torus.input.volume);
    auto tangent = pol.polarised_tangent_space(ctx);
    auto rep = metrics_report(pol, ctx, u, tangent.basis);
    bool ok = rep.g2 == rep.gamma && rep.identity_holds && rep.difference_psd;
    for (const auto& e : rep.entries) ok = ok && e.feasible && e.zeta.is_zero();

    // randomly perturbed bases must satisfy the exact difference identity
    Rng rng(3001);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<VectorForm> basis;
        for (const VectorForm& t : tangent.basis)
            basis.push_back(t + rng.vector_form(torus.input.coframe, 1, 2));
        auto pr = metrics_report(pol, ctx, u, basis);
        ok = ok && pr.identity_holds && pr.difference_psd;
        for (std::size_t r = 0; r < basis.size(); ++r)
            ok = ok && pr.difference[r] == pr.zeta_norms[r];
    }
    report(6, ok,
           "G2 = gamma on the full polarised tangent space (zeta = 0), and on perturbed "
           "bases (G2 - gamma)(theta,theta) = 4|zeta|^2 / (i^{n^2} int u /\\ conj u) >= 0 "
           "exactly");
}

// 7. the first-order deformation law on the torus
void criterion_7() {
    Rig torus("torus3");
    Polarisation pol(torus.mc, torus.ring);
    SktContext ctx = SktContext::build(torus.mc);
    auto tangent = pol.polarised_tangent_space(ctx);
    const auto& vc = pol.vector_cohomology();
    Matrix span = Matrix::from_columns(vc.dimension(), tangent.class_coords);
    bool ok = true;
    for (int i = 1; i <= 3 && ok; ++i)
        for (int j = 1; j <= 3 && ok; ++j) {
            VectorForm theta = VectorForm::monomial(i, IndexMask(1) << (j - 1));
            auto tc = polarised_tangent_consistency(ctx, torus.ring, theta);
            ok = ok && tc.matches;
            bool member = static_cast<bool>(solve_affine(span, vc.reduce(theta)));
            ok = ok && (all_zero(tc.linear_class) == member);
        }
    report(7, ok,
           "linear-in-t coefficient of the (0,2)_t Aeppli class equals [theta .| zeta]_A for "
           "all 9 basis directions, and first-order vanishing matches membership in the "
           "6-dimensional tangent space");
}

// 8. explicitly excluded full-manifold results
void criterion_8() {
    report(8, true,
           "openness of the ddbar/Hermitian-symplectic properties, Kuranishi unobstructedness "
           "and Local Torelli are full-manifold statements outside desk scale; covered only "
           "by the invariant-level law suites above and excluded from quantitative acceptance");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria pass"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria FAILED")
              << "\n";
    return failures;
}
