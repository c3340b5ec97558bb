#pragma once

#include "skt/cohomology.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace skt {

/// True iff del dbar omega = 0 exactly (the metric itself was certified
/// positive definite at construction).
bool skt_check(const MetricContext& mc);

/// Minimal-norm solution alpha of dbar omega = del dbar alpha over invariant
/// (0,1)-forms; std::nullopt when no invariant solution exists.
std::optional<Form> solve_alpha(const MetricContext& mc);

/// An SKT metric together with the alpha-equation data:
///   omega_tilde = omega + del alpha + dbar conj(alpha)   (d-closed, (1,1))
///   omega_hat   = -del conj(alpha) + omega - dbar alpha  (real, d-closed)
///   zeta        = omega + del alpha                      (dbar-closed)
struct SktContext {
    const MetricContext* mc = nullptr;
    bool skt = false;
    std::optional<Form> alpha;
    std::optional<Form> omega_tilde, omega_hat, zeta;

    static SktContext build(const MetricContext& mc);
    bool has_alpha() const { return alpha.has_value(); }
};

/// Nonvanishing holomorphic (n,0)-form; dbar u = 0 is checked, not assumed.
class HolomorphicVolume {
public:
    HolomorphicVolume(const Coframe& cf, Form u);
    const Form& form() const { return u_; }

private:
    Form u_;
};

struct Infeasible {
    std::string reason;
};

/// The SKT polarisation machinery over one metric context.
class Polarisation {
public:
    Polarisation(const MetricContext& mc, const CohomologyRing& ring);

    const MetricContext& metric_context() const { return *mc_; }
    const CohomologyRing& ring() const { return *ring_; }

    /// [gamma]_BC of bidegree (p,q) -> [omega /\ gamma]_A of (p+1,q+1).
    /// Returns the wedge form and the Aeppli coordinates.
    struct LValue {
        Form wedge_form;
        Vec aeppli_coords;
        bool zero_class() const {
            for (const Scalar& s : aeppli_coords)
                if (!s.is_zero()) return false;
            return true;
        }
    };
    LValue l_omega(const Form& gamma_bc_rep, Bidegree b) const;

    /// Matrix of L_[omega] on the Bott-Chern representative basis.
    Matrix l_matrix(Bidegree b) const;

    struct PrimitiveSpace {
        int dimension = 0;
        std::vector<Vec> class_coords;  // in the BC representative basis
        std::vector<Form> reps;
    };
    /// Kernel of L_[omega] on the antidiagonal bidegree (p, n-p).
    PrimitiveSpace primitive_class_space(int p) const;

    struct NotPrimitive {
        Vec l_coords;  // the nonzero Aeppli class of omega /\ gamma
    };
    /// Searches gamma + del dbar beta for a Lefschetz-primitive witness;
    /// with dolbeault_orbit the search runs over gamma + dbar w with the
    /// extra d-closedness constraint (the d-closed-and-primitive variant).
    std::variant<Form, Infeasible, NotPrimitive> primitive_representative(
        const Form& gamma_bc_rep, Bidegree b, bool dolbeault_orbit = false) const;

    /// T~_[u]: theta -> [theta .| u + dbar eta]_BC with del(theta .| u + dbar
    /// eta) = 0 and eta of minimal norm. Infeasible when no eta exists.
    struct CyClass {
        Form rep;     // theta .| u + dbar eta
        Form eta;
        Vec bc_coords;
    };
    std::variant<CyClass, Infeasible> calabi_yau_map(const VectorForm& theta,
                                                     const HolomorphicVolume& u) const;

    /// f_[u]: Dolbeault (0,q) -> (n,q), [xi] -> [u /\ xi], as a matrix on
    /// the representative bases.
    Matrix wedge_u_matrix(int q, const HolomorphicVolume& u) const;

    struct VectorCohomology {
        std::vector<VMono> ambient;       // (0,1) vector monomial basis
        std::vector<VectorForm> reps;     // classes of H^{0,1}(X, T^{1,0}X)
        Matrix rep_cols, denom_cols;
        int dimension() const { return static_cast<int>(reps.size()); }
        Vec reduce(const VectorForm& theta) const;  // throws if not dbar-closed
        Matrix dbar_matrix;                          // (0,1) -> (0,2)
    };
    const VectorCohomology& vector_cohomology() const;

    struct TangentSpace {
        std::vector<VectorForm> basis;  // representatives of the kernel classes
        std::vector<Vec> class_coords;  // in the vector-cohomology basis
        int dimension() const { return static_cast<int>(basis.size()); }
    };
    /// H^{0,1}(X, T^{1,0}X)_[omega] = ker([theta] -> [theta .| zeta]_dbar).
    /// Requires ctx.zeta (throws std::invalid_argument otherwise).
    TangentSpace polarised_tangent_space(const SktContext& ctx) const;

    /// Unique split v = v_prim + omega /\ zeta on bidegree (n-1, 1).
    struct LefschetzSplit {
        Form primitive, zeta;
    };
    LefschetzSplit lefschetz_split(const Form& v) const;

private:
    void require_skt() const;
    const MetricContext* mc_;
    const CohomologyRing* ring_;
    mutable std::optional<VectorCohomology> vcoh_;
    mutable std::mutex mu_;
};

}  // namespace skt
