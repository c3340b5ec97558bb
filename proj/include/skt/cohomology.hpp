#pragma once

#include "skt/metric.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace skt {

enum class Model { DeRham, Dolbeault, BottChern, Aeppli };

std::string model_name(Model m);

struct CohClass {
    Model model;
    Bidegree bidegree;  // for de Rham classes p holds the total degree, q = -1
    Form rep;
};

/// One cohomology group as an exact quotient: a numerator subspace cut out
/// by operator kernels and a denominator spanned by operator images, with a
/// canonical representative basis (harmonic when a metric is available).
class CohomologyGroup {
public:
    int dimension() const { return static_cast<int>(reps_.size()); }
    const std::vector<Form>& representatives() const { return reps_; }
    const std::vector<Mono>& ambient_basis() const { return ambient_; }

    bool is_in_numerator(const Form& u) const;
    /// Coordinates w.r.t. the representative basis; zero vector iff the
    /// class vanishes. Throws std::invalid_argument if u is outside the
    /// numerator subspace.
    Vec reduce(const Form& u) const;
    bool is_zero_class(const Form& u) const;
    Form class_representative(const Vec& coords) const;

private:
    friend class CohomologyRing;
    Model model_;
    std::vector<Mono> ambient_;
    std::vector<std::pair<std::string, Matrix>> numerator_ops_;  // must annihilate members
    Matrix rep_cols_;    // representative basis as columns
    Matrix denom_cols_;  // canonical spanning columns of the denominator
    std::vector<Form> reps_;
};

/// All four cohomologies of one presentation, cached per (model, bidegree).
/// The metric is optional: with a metric, representatives are harmonic and
/// the quotient dimension is cross-checked against the harmonic dimension.
class CohomologyRing {
public:
    explicit CohomologyRing(const Coframe& cf, const MetricContext* mc = nullptr);

    const Coframe& coframe() const { return *cf_; }
    const MetricContext* metric_context() const { return mc_; }

    const CohomologyGroup& group(Model m, Bidegree b) const;
    const CohomologyGroup& de_rham(int degree) const;

    /// Matrix of the induced map on the chosen representative bases.
    /// Models must be ordered BottChern -> Dolbeault -> Aeppli.
    Matrix canonical_map(Model src, Model tgt, Bidegree b) const;

    struct DdbarReport {
        bool is_ddbar = false;
        struct Entry {
            Bidegree bidegree;
            int dim_bc, dim_dolbeault, dim_aeppli;
            bool bc_to_dolbeault_iso, dolbeault_to_aeppli_iso;
        };
        std::vector<Entry> entries;
    };
    /// True iff both canonical maps are isomorphisms in every bidegree.
    DdbarReport ddbar_test() const;

    struct Hodge2 {
        bool feasible = false;
        bool unique = false;
        Form alpha20, alpha11, alpha02;  // d-closed pure-type pieces
        Vec class20, class11, class02;   // Aeppli coordinates of the pieces
        std::string detail;
    };
    /// Decomposition rho = alpha^{2,0} + alpha^{1,1} + alpha^{0,2} + d beta
    /// with d-closed pure-type alphas; returns the three Aeppli classes.
    /// Throws std::invalid_argument unless d rho = 0.
    Hodge2 hodge_decompose_2form(const Form& rho) const;

    struct MinimalRep {
        bool feasible = false;
        Form rep;    // beta + dbar v_min, exactly d-closed when feasible
        Form v_min;
        std::string detail;
    };
    /// The omega-minimal d-closed representative of a Dolbeault class.
    /// Requires a metric context.
    MinimalRep minimal_d_closed_rep(const CohClass& c) const;

private:
    CohomologyGroup build_group(Model m, Bidegree b) const;
    CohomologyGroup build_de_rham(int degree) const;
    CohomologyGroup finish_group(Model m, std::vector<Mono> ambient,
                                 std::vector<std::pair<std::string, Matrix>> numerator_ops,
                                 const std::vector<Vec>& numerator_kernel,
                                 std::vector<Vec> denom_gens,
                                 const std::vector<Form>* harmonic) const;

    const Coframe* cf_;
    const MetricContext* mc_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, int, int>, std::unique_ptr<CohomologyGroup>> cache_;
};

/// Canonical column-space basis (reduced echelon, transposed back).
std::vector<Vec> canonical_span(const std::vector<Vec>& gens, int dim);

}  // namespace skt
