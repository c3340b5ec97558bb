#pragma once

#include "skt/polarisation.hpp"

namespace skt {

/// Q({a},{b}) = (-1)^{n(n-1)/2} integral of a /\ b on degree-n forms.
Scalar pairing_q(const MetricContext& mc, const Form& a, const Form& b);
/// H({a},{b}) = (-1)^{n(n+1)/2} i^n integral of a /\ conj(b).
Scalar pairing_h(const MetricContext& mc, const Form& a, const Form& b);

struct HnSplit {
    std::vector<Form> plus, minus;  // star eigenbases of harmonic degree-n forms
    Scalar eigen_plus, eigen_minus;
};
HnSplit hn_split(const MetricContext& mc);

struct PeriodVerdict {
    Vec de_rham_coords;
    Scalar q, h;
    bool in_domain = false;
    std::string reason;
};
/// De Rham class of a holomorphic volume and its period-domain membership:
/// Q(u,u) = 0 together with H(u,u) > 0 for n even, H(u,u) < 0 for n odd.
PeriodVerdict period_point(const MetricContext& mc, const CohomologyRing& ring,
                           const HolomorphicVolume& u);

/// Same membership test for an arbitrary d-closed degree-n form.
PeriodVerdict period_membership(const MetricContext& mc, const CohomologyRing& ring,
                                const Form& rep);

struct MetricsReport {
    struct Entry {
        VectorForm theta;           // input representative
        VectorForm theta_adjusted;  // representative with minimal d-closed contraction
        Form contraction;           // theta_adjusted .| u (the omega-minimal d-closed rep)
        Form primitive_part, zeta;  // Lefschetz split of the contraction
        bool feasible = true;
        std::string detail;
    };
    std::vector<Entry> entries;
    Matrix g1, g2, gamma;   // Gram matrices on the given basis
    Scalar normalisation;   // i^{n^2} integral of u /\ conj(u)
    std::vector<Scalar> difference;  // (G2 - gamma) diagonal
    std::vector<Scalar> zeta_norms;  // 4 |zeta|^2 / normalisation, equals difference
    bool identity_holds = false;     // (G2-gamma) = 4 Gram(zeta)/normalisation, entrywise
    bool difference_psd = false;
};
/// Weil-Petersson metrics G^(1), G^(2) and the period metric gamma on the
/// span of the given tangent classes, with the split diagnostics.
MetricsReport metrics_report(const Polarisation& pol, const SktContext& ctx,
                             const HolomorphicVolume& u,
                             const std::vector<VectorForm>& tangent_basis);

}  // namespace skt
