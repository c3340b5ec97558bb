#include "skt/metric.hpp"

#include <stdexcept>

namespace skt {

HermitianMetric::HermitianMetric(int n, Matrix coefficients)
    : n_(n), h_(std::move(coefficients)) {
    if (h_.rows() != n_ || h_.cols() != n_)
        throw std::invalid_argument("HermitianMetric: coefficient matrix has wrong shape");
    // GramForm certifies Hermitian + positive definite exactly.
    GramForm check(h_);
}

HermitianMetric HermitianMetric::diagonal(int n, const Scalar& value) {
    Matrix h(n, n);
    for (int i = 0; i < n; ++i) h.set(i, i, value);
    return HermitianMetric(n, std::move(h));
}

Form HermitianMetric::fundamental_form() const {
    Form out;
    for (int j = 1; j <= n_; ++j)
        for (int k = 1; k <= n_; ++k) {
            Scalar c = h_.at(j - 1, k - 1);
            if (c.is_zero()) continue;
            out.add_term(Mono{IndexMask(1) << (j - 1), IndexMask(1) << (k - 1)},
                         Scalar::i() * c);
        }
    return out;
}

MetricContext::MetricContext(const Coframe& cf, HermitianMetric metric)
    : cf_(&cf), h_(std::move(metric)) {
    if (h_.dim() != cf.dim())
        throw std::invalid_argument("MetricContext: metric dimension mismatch");
    cf.require_valid();
    auto inv = inverse(h_.coefficients());
    if (!inv) throw std::logic_error("MetricContext: metric matrix not invertible");
    dual_ = *inv;
    omega_ = h_.fundamental_form();
    Form pow = wedge_pow(omega_, cf.dim());
    Scalar fact(1);
    for (int k = 2; k <= cf.dim(); ++k) fact *= Scalar(k);
    dV_ = pow.scaled(fact.inverse());
    dV_top_ = dV_.coeff(Mono{full_mask(cf.dim()), full_mask(cf.dim())});
    if (dV_top_.is_zero()) throw std::logic_error("MetricContext: degenerate volume form");
}

Scalar MetricContext::integrate(const Form& u) const {
    return u.coeff(Mono{full_mask(n()), full_mask(n())}) / dV_top_;
}

Scalar MetricContext::mono_inner(const Mono& a, const Mono& b) const {
    // <phi^j, phi^k> = (H^{-1})[k][j], <conj(phi)^j, conj(phi)^k> = (H^{-1})[j][k];
    // Gram determinants on the index blocks.
    auto det_block = [&](IndexMask ma, IndexMask mb, bool anti) {
        std::vector<int> ia = indices_of_mask(ma), ib = indices_of_mask(mb);
        int k = static_cast<int>(ia.size());
        Matrix sub(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                sub.set(r, c, anti ? dual_.at(ia[r] - 1, ib[c] - 1)
                                   : dual_.at(ib[c] - 1, ia[r] - 1));
        return determinant(sub);
    };
    if (mask_count(a.hol) != mask_count(b.hol) || mask_count(a.anti) != mask_count(b.anti))
        return Scalar();
    return det_block(a.hol, b.hol, false) * det_block(a.anti, b.anti, true);
}

Scalar MetricContext::inner(const Form& a, const Form& b) const {
    if (a.is_zero() || b.is_zero()) return Scalar();
    int da = -1, db = -1;
    for (const auto& [m, c] : a.terms()) {
        if (da < 0) da = m.degree();
        if (m.degree() != da) throw std::invalid_argument("inner: mixed total degree");
    }
    for (const auto& [m, c] : b.terms()) {
        if (db < 0) db = m.degree();
        if (m.degree() != db) throw std::invalid_argument("inner: mixed total degree");
    }
    if (da != db) throw std::invalid_argument("inner: degree mismatch");
    Scalar out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (!(ma.bidegree() == mb.bidegree())) continue;
            Scalar g = mono_inner(ma, mb);
            if (!g.is_zero()) out += ca * cb.conj() * g;
        }
    return out;
}

Scalar MetricContext::inner_vec(const VectorForm& a, const VectorForm& b) const {
    Scalar out;
    const Matrix& h = h_.coefficients();
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Scalar frame = h.at(ma.frame - 1, mb.frame - 1);
            if (frame.is_zero()) continue;
            Scalar g = mono_inner(Mono{0, ma.anti}, Mono{0, mb.anti});
            if (g.is_zero()) continue;
            out += ca * cb.conj() * frame * g;
        }
    return out;
}

Matrix MetricContext::star_matrix(Bidegree b) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = star_cache_.find({b.p, b.q});
        if (it != star_cache_.end()) return it->second;
    }
    auto src = cf_->basis(b);
    auto dst = cf_->basis({n() - b.q, n() - b.p});
    int s = static_cast<int>(src.size()), t = static_cast<int>(dst.size());
    if (s != t) throw std::logic_error("star_matrix: pairing is not square");
    // P[alpha][beta] = integral of m_alpha /\ conjugate(w_beta); the star of
    // m_gamma solves  P conj(c) = Gram column of m_gamma.
    Matrix p(s, t);
    for (int al = 0; al < s; ++al)
        for (int be = 0; be < t; ++be)
            p.set(al, be,
                  integrate(wedge(Form::monomial(src[al]), conjugate(Form::monomial(dst[be])))));
    auto pinv = inverse(p);
    if (!pinv) throw std::logic_error("star_matrix: degenerate pairing");
    Matrix gram_m(s, s);
    for (int al = 0; al < s; ++al)
        for (int ga = 0; ga < s; ++ga) gram_m.set(al, ga, mono_inner(src[al], src[ga]));
    Matrix conj_c = *pinv * gram_m;
    Matrix star(t, s);
    for (const auto& [rc, v] : conj_c.entries()) star.set(rc.first, rc.second, v.conj());
    std::lock_guard<std::mutex> lock(mu_);
    return star_cache_.emplace(std::make_pair(b.p, b.q), std::move(star)).first->second;
}

Form MetricContext::star(const Form& u) const {
    Form out;
    for (const Bidegree& b : u.bidegrees()) {
        Form comp = u.component(b);
        auto src = cf_->basis(b);
        auto dst = cf_->basis({n() - b.q, n() - b.p});
        Vec coords = form_coords(comp, src);
        out += form_from_coords(star_matrix(b).apply(coords), dst);
    }
    return out;
}

Form MetricContext::d_star(const Form& u) const { return star(d(star(u))).scaled(Scalar(-1)); }
Form MetricContext::del_star(const Form& u) const {
    return star(dbar(star(u))).scaled(Scalar(-1));
}
Form MetricContext::dbar_star(const Form& u) const {
    return star(del(star(u))).scaled(Scalar(-1));
}

Form MetricContext::laplacian(LaplacianKind kind, const Form& u) const {
    auto dd = [&](const Form& f) { return del(dbar(f)); };
    auto dd_star = [&](const Form& f) { return dbar_star(del_star(f)); };
    switch (kind) {
        case LaplacianKind::DeRham:
            return d(d_star(u)) + d_star(d(u));
        case LaplacianKind::Del:
            return del(del_star(u)) + del_star(del(u));
        case LaplacianKind::Dbar:
            return dbar(dbar_star(u)) + dbar_star(dbar(u));
        case LaplacianKind::BottChern:
            // del* del + dbar* dbar + (del dbar)(del dbar)* + (del dbar)*(del dbar)
            //   + (del* dbar)(del* dbar)* + (del* dbar)*(del* dbar)
            return del_star(del(u)) + dbar_star(dbar(u)) + dd(dd_star(u)) + dd_star(dd(u)) +
                   del_star(dbar(dbar_star(del(u)))) + dbar_star(del(del_star(dbar(u))));
        case LaplacianKind::Aeppli:
            // del del* + dbar dbar* + (del dbar)(del dbar)* + (del dbar)*(del dbar)
            //   + (del dbar*)(del dbar*)* + (del dbar*)*(del dbar*)
            return del(del_star(u)) + dbar(dbar_star(u)) + dd(dd_star(u)) + dd_star(dd(u)) +
                   del(dbar_star(dbar(del_star(u)))) + dbar(del_star(del(dbar_star(u))));
    }
    throw std::logic_error("laplacian: unknown kind");
}

Matrix MetricContext::laplacian_matrix(LaplacianKind kind, Bidegree b) const {
    auto basis = cf_->basis(b);
    return matrix_of([&](const Form& f) { return laplacian(kind, f); }, basis, basis);
}

const std::vector<Form>& MetricContext::harmonic_basis(LaplacianKind kind, Bidegree b) const {
    std::tuple<int, int, int> key{static_cast<int>(kind), b.p, b.q};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = harmonic_cache_.find(key);
        if (it != harmonic_cache_.end()) return it->second;
    }
    auto basis = cf_->basis(b);
    Matrix lap = laplacian_matrix(kind, b);
    std::vector<Form> out;
    for (const Vec& v : kernel_basis(lap)) out.push_back(form_from_coords(v, basis));
    std::lock_guard<std::mutex> lock(mu_);
    return harmonic_cache_.emplace(key, std::move(out)).first->second;
}

const std::vector<Form>& MetricContext::harmonic_basis_total(int k) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = harmonic_total_cache_.find(k);
        if (it != harmonic_total_cache_.end()) return it->second;
    }
    auto basis = cf_->basis_total(k);
    Matrix lap = matrix_of([&](const Form& f) { return laplacian(LaplacianKind::DeRham, f); },
                           basis, basis);
    std::vector<Form> out;
    for (const Vec& v : kernel_basis(lap)) out.push_back(form_from_coords(v, basis));
    std::lock_guard<std::mutex> lock(mu_);
    return harmonic_total_cache_.emplace(k, std::move(out)).first->second;
}

const GramForm& MetricContext::gram(Bidegree b) const {
    std::pair<int, int> key{b.p, b.q};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = gram_cache_.find(key);
        if (it != gram_cache_.end()) return *it->second;
    }
    auto basis = cf_->basis(b);
    int s = static_cast<int>(basis.size());
    Matrix g(s, s);
    for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) g.set(r, c, mono_inner(basis[r], basis[c]));
    auto gram = std::make_unique<GramForm>(std::move(g));
    std::lock_guard<std::mutex> lock(mu_);
    return *gram_cache_.emplace(key, std::move(gram)).first->second;
}

const GramForm& MetricContext::gram_total(int k) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = gram_total_cache_.find(k);
        if (it != gram_total_cache_.end()) return *it->second;
    }
    auto basis = cf_->basis_total(k);
    int s = static_cast<int>(basis.size());
    Matrix g(s, s);
    for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) g.set(r, c, mono_inner(basis[r], basis[c]));
    auto gram = std::make_unique<GramForm>(std::move(g));
    std::lock_guard<std::mutex> lock(mu_);
    return *gram_total_cache_.emplace(k, std::move(gram)).first->second;
}

const GramForm& MetricContext::vector_gram(int q) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = vgram_cache_.find(q);
        if (it != vgram_cache_.end()) return *it->second;
    }
    auto basis = cf_->vector_basis(q);
    int s = static_cast<int>(basis.size());
    const Matrix& h = h_.coefficients();
    Matrix g(s, s);
    for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) {
            Scalar v = h.at(basis[r].frame - 1, basis[c].frame - 1) *
                       mono_inner(Mono{0, basis[r].anti}, Mono{0, basis[c].anti});
            g.set(r, c, v);
        }
    auto gram = std::make_unique<GramForm>(std::move(g));
    std::lock_guard<std::mutex> lock(mu_);
    return *vgram_cache_.emplace(q, std::move(gram)).first->second;
}

}  // namespace skt
