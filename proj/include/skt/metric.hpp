#pragma once

#include "skt/coframe.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace skt {

/// Positive definite Hermitian matrix (omega_{j kbar}); the associated
/// fundamental form is omega = i sum omega_{j kbar} (j|k).
class HermitianMetric {
public:
    HermitianMetric(int n, Matrix coefficients);
    static HermitianMetric diagonal(int n, const Scalar& value);

    int dim() const { return n_; }
    const Matrix& coefficients() const { return h_; }
    Form fundamental_form() const;

private:
    int n_;
    Matrix h_;
};

enum class LaplacianKind { DeRham, Del, Dbar, BottChern, Aeppli };

/// A validated coframe bound to a Hermitian metric. Provides the inner
/// products, the Hodge star, the adjoint operators and the five Laplacians,
/// with write-once caches per bidegree.
class MetricContext {
public:
    MetricContext(const Coframe& cf, HermitianMetric metric);

    const Coframe& coframe() const { return *cf_; }
    const HermitianMetric& metric() const { return h_; }
    int n() const { return cf_->dim(); }

    const Form& omega() const { return omega_; }
    /// dV = omega^n / n!.
    const Form& volume_form() const { return dV_; }

    /// Coefficient of dV in the top-degree component ("integration" with the
    /// total volume normalised to 1).
    Scalar integrate(const Form& u) const;

    /// Pointwise Hermitian product, conjugate-linear in the second slot.
    /// Distinct bidegrees are orthogonal; arguments must share total degree.
    Scalar inner(const Form& a, const Form& b) const;

    /// <theta, eta> on T^{1,0}-valued (0,q)-forms, via the frame metric
    /// omega_{j kbar} and the induced metric on (0,q)-forms.
    Scalar inner_vec(const VectorForm& a, const VectorForm& b) const;

    /// Unique form with a /\ conjugate(star(b)) = <a,b> dV; maps (p,q) to
    /// (n-q, n-p).
    Form star(const Form& u) const;

    Form d(const Form& u) const { return cf_->d(u); }
    Form del(const Form& u) const { return cf_->del(u); }
    Form dbar(const Form& u) const { return cf_->dbar(u); }
    Form d_star(const Form& u) const;     // -star d star
    Form del_star(const Form& u) const;   // -star dbar star
    Form dbar_star(const Form& u) const;  // -star del star

    Form laplacian(LaplacianKind kind, const Form& u) const;

    Matrix laplacian_matrix(LaplacianKind kind, Bidegree b) const;
    /// Kernel of the Laplacian on the bidegree, canonical echelon basis.
    const std::vector<Form>& harmonic_basis(LaplacianKind kind, Bidegree b) const;
    /// Kernel of the de Rham Laplacian on total degree k.
    const std::vector<Form>& harmonic_basis_total(int k) const;

    const GramForm& gram(Bidegree b) const;
    const GramForm& gram_total(int k) const;
    const GramForm& vector_gram(int q) const;

private:
    Matrix star_matrix(Bidegree b) const;
    Scalar mono_inner(const Mono& a, const Mono& b) const;

    const Coframe* cf_;
    HermitianMetric h_;
    Matrix dual_;  // inverse of the coefficient matrix
    Form omega_, dV_;
    Scalar dV_top_;

    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, Matrix> star_cache_;
    mutable std::map<std::tuple<int, int, int>, std::vector<Form>> harmonic_cache_;
    mutable std::map<int, std::vector<Form>> harmonic_total_cache_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<GramForm>> gram_cache_;
    mutable std::map<int, std::unique_ptr<GramForm>> gram_total_cache_;
    mutable std::map<int, std::unique_ptr<GramForm>> vgram_cache_;
};

}  // namespace skt
