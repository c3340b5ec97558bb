#pragma once

// The randomised law suite: each law runs at least 100 cases from a fixed
// seed and checks exact equalities only. Shared between the properties
// runner and the acceptance suite.

#include "helpers.hpp"

#include "skt/hodge_riemann.hpp"

#include <functional>
#include <iostream>
#include <vector>

namespace skt::testing {

struct LawResult {
    std::string name;
    bool passed = true;
    int cases = 0;
    std::string detail;
};

class LawRunner {
public:
    LawResult result;
    explicit LawRunner(std::string name) { result.name = std::move(name); }
    void require(bool ok, const std::string& what) {
        ++result.cases;
        if (!ok && result.passed) {
            result.passed = false;
            result.detail = what;
        }
    }
};

inline LawResult law_differential_algebra() {
    LawRunner law("d^2 / del^2 / dbar^2 / anticommutation");
    for (const char* name : {"torus3", "iwasawa", "s3xs3-calabi-eckmann"}) {
        auto input = builtin(name);
        const Coframe& cf = input.coframe;
        Rng rng(2001);
        for (int i = 0; i < 100; ++i) {
            Form f = rng.mixed_form(cf, i % 6);
            law.require(cf.d(cf.d(f)).is_zero(), "d^2 != 0");
            law.require(cf.del(cf.del(f)).is_zero(), "del^2 != 0");
            law.require(cf.dbar(cf.dbar(f)).is_zero(), "dbar^2 != 0");
            law.require((cf.del(cf.dbar(f)) + cf.dbar(cf.del(f))).is_zero(),
                        "del dbar + dbar del != 0");
            law.require(cf.d(f) == cf.del(f) + cf.dbar(f), "d != del + dbar");
        }
    }
    return law.result;
}

inline LawResult law_contraction_leibniz() {
    LawRunner law("contraction Leibniz dbar(theta .| beta) = dbar(theta) .| beta + (-1)^q theta .| dbar(beta)");
    for (const char* name : {"torus3", "iwasawa", "s3xs3-calabi-eckmann"}) {
        auto input = builtin(name);
        const Coframe& cf = input.coframe;
        Rng rng(2003);
        for (int i = 0; i < 100; ++i) {
            int q = 1 + i % 2;
            VectorForm theta = rng.vector_form(cf, q);
            Form beta = rng.form(cf, {1, i % 3});
            Form lhs = cf.dbar(cf.contract(theta, beta));
            Form rhs = cf.contract(cf.dbar(theta), beta) +
                       cf.contract(theta, cf.dbar(beta)).scaled(Scalar::sign_pow(q));
            law.require(lhs == rhs, "Leibniz identity failed on " + std::string(name));
        }
    }
    return law.result;
}

inline LawResult law_primitive_star_formula() {
    LawRunner law("primitive star formula (Voisin 6.29)");
    for (const char* name : {"torus3", "s3xs3-calabi-eckmann"}) {
        auto input = builtin(name);
        MetricContext mc(input.coframe, input.metric);
        const Coframe& cf = input.coframe;
        int n = 3;
        Rng rng(2005);
        for (Bidegree b : {Bidegree{1, 1}, Bidegree{2, 0}, Bidegree{0, 2}, Bidegree{1, 0},
                           Bidegree{0, 1}, Bidegree{2, 1}, Bidegree{1, 2}, Bidegree{3, 0}}) {
            int k = b.p + b.q;
            auto basis = cf.basis(b);
            Form pow = wedge_pow(mc.omega(), n - k + 1);
            Matrix a = matrix_of([&](const Form& f) { return wedge(pow, f); }, basis,
                                 cf.basis({b.p + n - k + 1, b.q + n - k + 1}));
            auto prim = kernel_basis(a);
            if (prim.empty()) continue;
            for (int trial = 0; trial < 10; ++trial) {
                Form v = form_from_coords(rng.combo(prim, static_cast<int>(basis.size())), basis);
                Scalar fact(1);
                for (int j = 2; j <= n - k; ++j) fact *= Scalar(j);
                Form rhs = wedge(wedge_pow(mc.omega(), n - k), v)
                               .scaled(Scalar::sign_pow(static_cast<long>(k) * (k + 1) / 2) *
                                       Scalar::i_pow(b.p - b.q) * fact.inverse());
                law.require(mc.star(v) == rhs, "star formula failed");
            }
        }
    }
    return law.result;
}

inline LawResult law_primitive_degree_n_equivalence() {
    LawRunner law("five-way equivalence for primitive degree-3 forms");
    for (const char* name : {"torus3", "s3xs3-calabi-eckmann", "iwasawa"}) {
        auto input = builtin(name);
        MetricContext mc(input.coframe, input.metric);
        const Coframe& cf = input.coframe;
        auto amb = cf.basis_total(3);
        Matrix a = matrix_of([&](const Form& f) { return wedge(mc.omega(), f); }, amb,
                             cf.basis_total(5));
        auto prim = kernel_basis(a);
        Rng rng(2007);
        for (int i = 0; i < 100; ++i) {
            Form v = form_from_coords(rng.combo(prim, static_cast<int>(amb.size())), amb);
            bool d_closed = cf.d(v).is_zero();
            law.require(d_closed == mc.d_star(v).is_zero(), "d-closed <-> d*-closed");
            law.require(d_closed == mc.laplacian(LaplacianKind::DeRham, v).is_zero(),
                        "d-closed <-> harmonic");
            law.require(d_closed == mc.laplacian(LaplacianKind::Aeppli, v).is_zero(),
                        "d-closed <-> Aeppli-harmonic");
            law.require(d_closed == mc.laplacian(LaplacianKind::BottChern, v).is_zero(),
                        "d-closed <-> Bott-Chern-harmonic");
        }
    }
    return law.result;
}

inline LawResult law_lefschetz_star_coincidence() {
    LawRunner law("Lefschetz and star-eigenspace splits coincide on (2,1)");
    for (const char* name : {"torus3", "s3xs3-calabi-eckmann"}) {
        auto input = builtin(name);
        MetricContext mc(input.coframe, input.metric);
        CohomologyRing ring(input.coframe, &mc);
        if (!skt_check(mc)) continue;
        Polarisation pol(mc, ring);
        Rng rng(2011);
        for (int i = 0; i < 100; ++i) {
            Form v = rng.form(input.coframe, {2, 1}, 4);
            auto split = pol.lefschetz_split(v);
            Form wz = wedge(mc.omega(), split.zeta);
            law.require(v == split.primitive + wz, "split does not recompose");
            // n = 3 odd: primitive part has star-eigenvalue +i, the omega
            // part -i, so the star projections recover the same pieces
            Form v_plus = (v - Scalar::i() * mc.star(v)).scaled(Scalar::of(1, 2));
            Form v_minus = (v + Scalar::i() * mc.star(v)).scaled(Scalar::of(1, 2));
            law.require(v_plus == split.primitive, "star(+i) projection != primitive part");
            law.require(v_minus == wz, "star(-i) projection != omega wedge part");
            law.require(mc.inner(split.primitive, wz).is_zero(), "parts not orthogonal");
        }
    }
    return law.result;
}

inline LawResult law_hodge_riemann_signs() {
    LawRunner law("Q/H sign laws on the H^3 star eigenspaces");
    for (const char* name : {"torus3", "s3xs3-calabi-eckmann"}) {
        auto input = builtin(name);
        MetricContext mc(input.coframe, input.metric);
        auto split = hn_split(mc);
        Rng rng(2013);
        for (int i = 0; i < 100; ++i) {
            Form p, m, a, b;
            for (const Form& f : split.plus) p += f.scaled(rng.scalar());
            for (const Form& f : split.minus) m += f.scaled(rng.scalar());
            for (const Form& f : mc.harmonic_basis_total(3)) {
                a += f.scaled(rng.scalar());
                b += f.scaled(rng.scalar());
            }
            if (!p.is_zero())
                law.require(pairing_h(mc, p, p).is_positive_real(), "H not positive on plus");
            if (!m.is_zero()) {
                Scalar h = pairing_h(mc, m, m);
                law.require(h.is_real() && h.re() < 0, "H not negative on minus");
            }
            law.require(pairing_q(mc, a, b) == Scalar::sign_pow(3) * pairing_q(mc, b, a),
                        "Q graded symmetry failed");
            law.require(pairing_h(mc, a, a).is_real(), "H(a,a) not real");
        }
    }
    return law.result;
}

inline LawResult law_l_omega_representative_independence() {
    LawRunner law("L_[omega] independence of both representatives");
    for (const char* name : {"torus3", "s3xs3-calabi-eckmann"}) {
        auto input = builtin(name);
        MetricContext mc(input.coframe, input.metric);
        CohomologyRing ring(input.coframe, &mc);
        const Coframe& cf = input.coframe;
        const auto& bc = ring.group(Model::BottChern, {2, 1});
        const auto& a32 = ring.group(Model::Aeppli, {3, 2});
        Rng rng(2017);
        for (int i = 0; i < 100; ++i) {
            Form gamma;
            for (const Form& r : bc.representatives()) gamma += r.scaled(rng.scalar());
            Vec base = a32.reduce(wedge(mc.omega(), gamma));
            Form beta = rng.form(cf, {1, 0});
            law.require(a32.reduce(wedge(mc.omega(), gamma + cf.del(cf.dbar(beta)))) == base,
                        "changed under del dbar shift of gamma");
            Form b1 = rng.form(cf, {0, 1}), b2 = rng.form(cf, {1, 0});
            Form omega2 = mc.omega() + cf.del(b1) + cf.dbar(b2);
            law.require(a32.reduce(wedge(omega2, gamma)) == base,
                        "changed under Aeppli shift of omega");
        }
    }
    return law.result;
}

inline std::vector<LawResult> run_all_laws() {
    return {law_differential_algebra(),
            law_contraction_leibniz(),
            law_primitive_star_formula(),
            law_primitive_degree_n_equivalence(),
            law_lefschetz_star_coincidence(),
            law_hodge_riemann_signs(),
            law_l_omega_representative_independence()};
}

}  // namespace skt::testing
