#pragma once

#include "skt/polarisation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skt {

/// Finite deformation of the bigrading along a (0,1) direction theta:
/// deformed coframe eta^i = phi^i - t sum_j theta^i_{jbar} conj(phi)^j.
/// d is unchanged as a real operator; only the bigrading moves.
class DeformedStructure {
public:
    const Coframe& base() const { return *base_; }
    const VectorForm& direction() const { return theta_; }
    const Scalar& parameter() const { return t_; }

    /// Change of basis [eta; conj(eta)] = fwd [phi; conj(phi)].
    const Matrix& forward() const { return fwd_; }
    const Matrix& backward() const { return bwd_; }
    Scalar basis_determinant() const { return det_; }

    /// Rewrites a form given in the phi-coframe in eta-coordinates and back.
    Form to_deformed(const Form& f) const;
    Form from_deformed(const Form& f) const;

    /// (0,2)_t components of d eta^i; all zero iff integrable.
    const std::vector<Form>& integrability_defect() const { return defect_; }
    bool integrable() const;

    /// The deformed presentation; only available when integrable.
    const Coframe& deformed() const;

private:
    friend std::optional<DeformedStructure> build_deformation(const Coframe&, const VectorForm&,
                                                              const Scalar&, std::string*);
    const Coframe* base_ = nullptr;
    VectorForm theta_;
    Scalar t_;
    Matrix fwd_, bwd_;
    Scalar det_;
    std::vector<Form> gen_images_;      // phi-generators in eta-coordinates (2n forms)
    std::vector<Form> gen_preimages_;   // eta-generators in phi-coordinates
    std::vector<Form> defect_;
    std::optional<Coframe> deformed_;
};

/// Builds the deformed coframe data; std::nullopt (with *err set) iff the
/// deformed coframe is degenerate. Integrability is NOT required here; use
/// deform() for the validating entry point.
std::optional<DeformedStructure> build_deformation(const Coframe& base, const VectorForm& theta,
                                                   const Scalar& t, std::string* err = nullptr);

/// Validating variant: requires dbar theta = 0, a nondegenerate coframe and
/// an integrable deformed structure; throws std::invalid_argument otherwise.
DeformedStructure deform(const Coframe& base, const VectorForm& theta, const Scalar& t);

struct PolarisationCheck {
    bool applicable = false;   // Hodge decomposition feasible and unique
    bool polarised = false;    // the (0,2)_t Aeppli class of omega_tilde vanishes
    Vec class02, class20;      // Aeppli coordinates of both projections
    std::string detail;
};
/// Definition-1 check at the deformed fibre: decomposes the d-closed
/// representative of [omega]_A in the deformed bigrading and tests the
/// vanishing of its (0,2)_t Aeppli class (and of the conjugate (2,0)_t one).
PolarisationCheck polarisation_check(const DeformedStructure& ds, const SktContext& ctx);

struct DeformedMetric {
    Form omega_t;              // (1,1)_t component of omega_hat, in eta-coordinates
    Matrix coefficients;       // omega_t = i sum m_{j kbar} eta^j /\ conj(eta)^k
    bool positive = false;     // exact leading-minor test
    bool del_dbar_closed = false;
    bool real = false;
};
/// Theorem-2 construction: the (1,1)_t part of omega_hat on an integrable
/// fibre. Positivity can legitimately fail away from t = 0 and is reported.
DeformedMetric deformed_skt_metric(const DeformedStructure& ds, const SktContext& ctx);

struct TangentConsistency {
    Form linear_coefficient;   // exact d/dt at 0 of the (0,2)_t component of omega_tilde
    Vec linear_class;          // its Aeppli (0,2) class at t = 0
    Vec contraction_class;     // [theta .| zeta]_A at t = 0
    bool matches = false;
};
/// First-order law: the linear-in-t coefficient of the (0,2)_t Aeppli class
/// of omega_tilde along t*theta equals [theta .| zeta]_A. The coefficient is
/// reconstructed exactly from finite samples (the dependence is a rational
/// function with known denominator; samples are interpolated with a degree
/// bound and re-verified at a spare point).
TangentConsistency polarised_tangent_consistency(const SktContext& ctx,
                                                 const CohomologyRing& ring,
                                                 const VectorForm& theta);

}  // namespace skt
