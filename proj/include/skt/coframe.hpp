#pragma once

#include "skt/form.hpp"

#include <functional>
#include <string>
#include <vector>

namespace skt {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;  // offending generator and residual on failure
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    std::string summary() const;
};

/// Invariant coframe presentation of a complex structure: n, the labels
/// phi^1..phi^n and the differential table d phi^i. The table may carry a
/// (0,2) part so that validate() can report integrability failures; all
/// other operations assume a validated presentation.
class Coframe {
public:
    Coframe(int n, std::vector<std::string> names, std::vector<Form> dtable);

    int dim() const { return n_; }
    const std::string& name(int i1) const { return names_.at(i1 - 1); }
    const std::vector<std::string>& names() const { return names_; }
    /// d phi^i, 1-based.
    const Form& d_generator(int i1) const { return dtable_.at(i1 - 1); }

    /// Checks d^2 = 0 on every generator, integrability (no (0,2) part in
    /// any d phi^i) and unimodularity (top coefficient of d gamma vanishes
    /// for every basis (2n-1)-monomial gamma).
    ValidationReport validate() const;
    void require_valid() const;

    Form d(const Form& u) const;
    /// Bidegree (p+1, q) part of d, per input monomial.
    Form del(const Form& u) const;
    /// Bidegree (p, q+1) part of d, per input monomial.
    Form dbar(const Form& u) const;

    /// dbar on T^{1,0}-valued (0,q)-forms via the frame formula
    ///   dbar theta = sum dbar(theta^i_J conj(phi)^J) (x) Z_i
    ///              + (-1)^q sum theta^i_J conj(phi)^J wedge dbar Z_i,
    /// with dbar Z_i read off the structure constants.
    VectorForm dbar(const VectorForm& theta) const;

    /// theta .| u: interior product by the frame component, then left wedge
    /// by the (0,q)-form component.
    Form contract(const VectorForm& theta, const Form& u) const;

    std::vector<Mono> basis(Bidegree b) const;
    /// Basis of total degree k, bidegrees ordered by descending p.
    std::vector<Mono> basis_total(int k) const;
    std::vector<VMono> vector_basis(int q) const;

    bool same_table(const Coframe& o) const { return n_ == o.n_ && dtable_ == o.dtable_; }

private:
    Form d_mono(const Mono& m) const;
    Form dbar_frame(int i1) const;  // dbar Z_i as scalar-level data, see .cpp

    int n_;
    std::vector<std::string> names_;
    std::vector<Form> dtable_;
};

/// Matrix of a linear operator in the given monomial bases.
Matrix matrix_of(const std::function<Form(const Form&)>& op, const std::vector<Mono>& src,
                 const std::vector<Mono>& dst);
Matrix matrix_of_vec(const std::function<VectorForm(const VectorForm&)>& op,
                     const std::vector<VMono>& src, const std::vector<VMono>& dst);
/// Operator from vector forms to forms (e.g. contraction against a fixed form).
Matrix matrix_of_vec_to_form(const std::function<Form(const VectorForm&)>& op,
                             const std::vector<VMono>& src, const std::vector<Mono>& dst);

}  // namespace skt
