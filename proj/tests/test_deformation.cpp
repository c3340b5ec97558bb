#include "doctest.h"
#include "helpers.hpp"

#include "skt/deformation.hpp"
#include "skt/hodge_riemann.hpp"

using namespace skt;
using namespace skt::testing;

namespace {

struct Rig {
    ManifoldInput input;
    MetricContext mc;
    CohomologyRing ring;
    explicit Rig(const std::string& name)
        : input(builtin(name)), mc(input.coframe, input.metric), ring(input.coframe, &mc) {}
};

bool all_zero(const Vec& v) {
    for (const Scalar& s : v)
        if (!s.is_zero()) return false;
    return true;
}

}  // namespace

TEST_CASE("deforming by t = 0 reproduces the presentation") {
    for (const char* name : {"torus3", "iwasawa", "s3xs3-calabi-eckmann"}) {
        auto input = builtin(name);
        Rng rng(113);
        VectorForm theta = rng.vector_form(input.coframe, 1);
        auto ds = build_deformation(input.coframe, theta, Scalar(0));
        REQUIRE(ds);
        CHECK(ds->integrable());
        CHECK(ds->deformed().same_table(input.coframe));
        Form f = rng.mixed_form(input.coframe, 3);
        CHECK(ds->to_deformed(f) == f);
    }
}

TEST_CASE("torus deformations stay abelian and valid") {
    auto torus = builtin("torus3");
    auto ds = deform(torus.coframe, V("1*(|1)Z1"), S("1/2"));
    CHECK(ds.integrable());
    for (int i = 1; i <= 3; ++i) CHECK(ds.deformed().d_generator(i).is_zero());
    CHECK(ds.deformed().validate().ok());
    // round trip through the coordinate change
    Rng rng(127);
    for (int i = 0; i < 50; ++i) {
        Form f = rng.mixed_form(torus.coframe, i % 6);
        CHECK(ds.from_deformed(ds.to_deformed(f)) == f);
    }
}

TEST_CASE("|t| = 1 along a diagonal direction degenerates the coframe") {
    auto torus = builtin("torus3");
    std::string err;
    auto ds = build_deformation(torus.coframe, V("1*(|1)Z1"), Scalar(1), &err);
    CHECK_FALSE(ds);
    CHECK(err.find("degenerate") != std::string::npos);
    CHECK_THROWS_AS(deform(torus.coframe, V("1*(|1)Z1"), Scalar(1)), std::invalid_argument);
}

TEST_CASE("integrability defect on torus vanishes for every direction") {
    auto torus = builtin("torus3");
    Rng rng(131);
    for (int i = 0; i < 20; ++i) {
        VectorForm theta = rng.vector_form(torus.coframe, 1);
        auto ds = build_deformation(torus.coframe, theta, S("1/2"));
        if (!ds) continue;  // random direction may be degenerate at this t
        CHECK(ds->integrable());
    }
}

TEST_CASE("integrability defect on s3xs3 along (|3)Z1 is exactly -i t^2 (|13)") {
    auto s3 = builtin("s3xs3-calabi-eckmann");
    auto ds = build_deformation(s3.coframe, V("1*(|3)Z1"), S("1/2"));
    REQUIRE(ds);
    CHECK_FALSE(ds->integrable());
    CHECK(ds->integrability_defect()[0] == F("-1/4i*(|13)"));
    CHECK(ds->integrability_defect()[1].is_zero());
    // d eta^3 also picks up a (0,2) part through phi-bar^1 = eta-bar^1 - t eta^3
    CHECK(ds->integrability_defect()[2] == F("-1/2i*(|13)"));
    // this direction is not even dbar-closed, so deform() rejects it upfront
    CHECK_THROWS_AS(deform(s3.coframe, V("1*(|3)Z1"), S("1/2")), std::invalid_argument);
    // at t = 0 the defect vanishes
    auto ds0 = build_deformation(s3.coframe, V("1*(|3)Z1"), Scalar(0));
    REQUIRE(ds0);
    CHECK(ds0->integrable());
}

TEST_CASE("the deformed bigrading splits the same real operator") {
    auto torus = builtin("torus3");
    auto ds = deform(torus.coframe, V("1*(|2)Z1") + V("1/2i*(|3)Z2"), S("1/3"));
    const Coframe& cf_t = ds.deformed();
    Rng rng(137);
    for (int i = 0; i < 60; ++i) {
        Form f = rng.mixed_form(torus.coframe, i % 5);
        Form g = ds.to_deformed(f);
        CHECK(ds.to_deformed(torus.coframe.d(f)) == cf_t.d(g));
        CHECK(cf_t.d(g) == cf_t.del(g) + cf_t.dbar(g));
        CHECK(cf_t.del(cf_t.del(g)).is_zero());
        CHECK(cf_t.dbar(cf_t.dbar(g)).is_zero());
        CHECK((cf_t.del(cf_t.dbar(g)) + cf_t.dbar(cf_t.del(g))).is_zero());
    }
}

TEST_CASE("polarisation check on the torus") {
    Rig torus("torus3");
    SktContext ctx = SktContext::build(torus.mc);

    // a tangent direction stays polarised at finite t
    auto ds_good = deform(torus.input.coframe, V("1*(|1)Z1"), S("1/2"));
    auto check_good = polarisation_check(ds_good, ctx);
    REQUIRE(check_good.applicable);
    CHECK(check_good.polarised);

    // the symmetric combination stays polarised too
    auto ds_sym = deform(torus.input.coframe, V("1*(|1)Z2") + V("1*(|2)Z1"), S("1/2"));
    auto check_sym = polarisation_check(ds_sym, ctx);
    REQUIRE(check_sym.applicable);
    CHECK(check_sym.polarised);

    // an obstructed direction fails at finite t
    auto ds_bad = deform(torus.input.coframe, V("1*(|2)Z1"), S("1/2"));
    auto check_bad = polarisation_check(ds_bad, ctx);
    REQUIRE(check_bad.applicable);
    CHECK_FALSE(check_bad.polarised);
    CHECK_FALSE(all_zero(check_bad.class02));
    CHECK_FALSE(all_zero(check_bad.class20));

    // t = 0 is always polarised
    auto ds0 = deform(torus.input.coframe, V("1*(|2)Z1"), Scalar(0));
    auto check0 = polarisation_check(ds0, ctx);
    REQUIRE(check0.applicable);
    CHECK(check0.polarised);
}

TEST_CASE("deformed SKT metric from Theorem 2") {
    Rig torus("torus3");
    SktContext ctx = SktContext::build(torus.mc);

    // t = 0 returns omega itself
    auto ds0 = deform(torus.input.coframe, V("1*(|1)Z1"), Scalar(0));
    auto m0 = deformed_skt_metric(ds0, ctx);
    CHECK(m0.positive);
    CHECK(m0.real);
    CHECK(m0.del_dbar_closed);
    CHECK(m0.coefficients == torus.input.metric.coefficients());

    // t = 1/4 along a diagonal direction: exact coefficient 1/(2(1-t^2))
    auto ds1 = deform(torus.input.coframe, V("1*(|1)Z1"), S("1/4"));
    auto m1 = deformed_skt_metric(ds1, ctx);
    CHECK(m1.positive);
    CHECK(m1.real);
    CHECK(m1.del_dbar_closed);
    CHECK(m1.coefficients.at(0, 0) == S("8/15"));  // 1/(2(1-1/16))
    CHECK(m1.coefficients.at(1, 1) == S("1/2"));

    // t = 9/10: still positive for this direction, verified exactly
    auto ds2 = deform(torus.input.coframe, V("1*(|1)Z1"), S("9/10"));
    auto m2 = deformed_skt_metric(ds2, ctx);
    CHECK(m2.positive);
    CHECK(m2.coefficients.at(0, 0) == S("50/19"));  // 1/(2(1-81/100))
}

TEST_CASE("first-order law: linear coefficient equals the contraction class") {
    Rig torus("torus3");
    SktContext ctx = SktContext::build(torus.mc);
    const Coframe& cf = torus.input.coframe;

    // spot value: theta = (|2)Z1 has linear coefficient [theta .| omega]_A
    auto tc = polarised_tangent_consistency(ctx, torus.ring, V("1*(|2)Z1"));
    CHECK(tc.matches);
    CHECK(tc.linear_coefficient == cf.contract(V("1*(|2)Z1"), *ctx.zeta));
    CHECK(tc.linear_coefficient == F("1/2i*(|12)"));
    CHECK_FALSE(all_zero(tc.linear_class));

    // a tangent direction has vanishing linear coefficient
    auto tc2 = polarised_tangent_consistency(ctx, torus.ring, V("1*(|1)Z1"));
    CHECK(tc2.matches);
    CHECK(tc2.linear_coefficient.is_zero());

    // the zero direction
    auto tc3 = polarised_tangent_consistency(ctx, torus.ring, VectorForm());
    CHECK(tc3.matches);
    CHECK(tc3.linear_coefficient.is_zero());
}

TEST_CASE("first-order law holds for all nine basis directions") {
    Rig torus("torus3");
    SktContext ctx = SktContext::build(torus.mc);
    int zero_count = 0;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            VectorForm theta = VectorForm::monomial(i, IndexMask(1) << (j - 1));
            auto tc = polarised_tangent_consistency(ctx, torus.ring, theta);
            CHECK(tc.matches);
            if (all_zero(tc.linear_class)) ++zero_count;
        }
    // exactly the three diagonal directions are unobstructed among monomials
    CHECK(zero_count == 3);
}

TEST_CASE("first-order obstruction agrees with tangent-space membership") {
    Rig torus("torus3");
    Polarisation pol(torus.mc, torus.ring);
    SktContext ctx = SktContext::build(torus.mc);
    auto tangent = pol.polarised_tangent_space(ctx);
    const auto& vc = pol.vector_cohomology();

    Matrix span = Matrix::from_columns(vc.dimension(), tangent.class_coords);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            VectorForm theta = VectorForm::monomial(i, IndexMask(1) << (j - 1));
            auto tc = polarised_tangent_consistency(ctx, torus.ring, theta);
            bool member = static_cast<bool>(solve_affine(span, vc.reduce(theta)));
            CHECK(all_zero(tc.linear_class) == member);
        }
}

TEST_CASE("deformed fibres of the torus are still ddbar with the same Hodge numbers") {
    Rig torus("torus3");
    auto ds = deform(torus.input.coframe, V("1*(|1)Z2"), S("1/2"));
    CohomologyRing ring_t(ds.deformed());
    CHECK(ring_t.group(Model::BottChern, {1, 1}).dimension() == 9);
    CHECK(ring_t.group(Model::Aeppli, {0, 2}).dimension() == 3);
    CHECK(ring_t.ddbar_test().is_ddbar);
}

TEST_CASE("every tangent-basis direction is polarised to first order") {
    Rig torus("torus3");
    Polarisation pol(torus.mc, torus.ring);
    SktContext ctx = SktContext::build(torus.mc);
    auto tangent = pol.polarised_tangent_space(ctx);
    REQUIRE(tangent.dimension() == 6);
    for (const VectorForm& theta : tangent.basis) {
        auto tc = polarised_tangent_consistency(ctx, torus.ring, theta);
        CHECK(tc.matches);
        CHECK(tc.linear_coefficient.is_zero());
    }
}

TEST_CASE("fibrewise metrics at a deformed fibre") {
    // deform the torus along a tangent direction, rebuild the whole stack on
    // the deformed presentation with the Theorem-2 metric and a re-solved
    // holomorphic volume, and compare the metrics there
    Rig torus("torus3");
    SktContext ctx = SktContext::build(torus.mc);
    auto ds = deform(torus.input.coframe, V("1*(|1)Z1"), S("1/4"));
    auto dm = deformed_skt_metric(ds, ctx);
    REQUIRE(dm.positive);

    const Coframe& cf_t = ds.deformed();
    MetricContext mc_t(cf_t, HermitianMetric(3, dm.coefficients));
    CohomologyRing ring_t(cf_t, &mc_t);
    CHECK(skt_check(mc_t));

    // re-solve dbar_t u_t = 0 on (3,0): on the deformed torus the monomial
    // eta^123 is holomorphic
    auto basis30 = cf_t.basis({3, 0});
    Matrix dbar30 = matrix_of([&](const Form& f) { return cf_t.dbar(f); }, basis30,
                              cf_t.basis({3, 1}));
    auto hol = kernel_basis(dbar30);
    REQUIRE(hol.size() == 1);
    HolomorphicVolume u_t(cf_t, form_from_coords(hol[0], basis30));

    Polarisation pol_t(mc_t, ring_t);
    SktContext ctx_t = SktContext::build(mc_t);
    REQUIRE(ctx_t.has_alpha());
    auto tangent_t = pol_t.polarised_tangent_space(ctx_t);
    CHECK(tangent_t.dimension() == 6);
    auto rep = metrics_report(pol_t, ctx_t, u_t, tangent_t.basis);
    CHECK(rep.identity_holds);
    CHECK(rep.g2 == rep.gamma);  // the deformed fibre is still Kaehler-like
}
