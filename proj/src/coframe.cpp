#include "skt/coframe.hpp"

#include <stdexcept>

namespace skt {

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& c : checks) {
        out += (c.passed ? "[ok]   " : "[FAIL] ") + c.name;
        if (!c.detail.empty()) out += ": " + c.detail;
        out += "\n";
    }
    return out;
}

Coframe::Coframe(int n, std::vector<std::string> names, std::vector<Form> dtable)
    : n_(n), names_(std::move(names)), dtable_(std::move(dtable)) {
    if (n_ < 1 || n_ > 9) throw std::invalid_argument("Coframe: dimension must be in 1..9");
    if (static_cast<int>(names_.size()) != n_ || static_cast<int>(dtable_.size()) != n_)
        throw std::invalid_argument("Coframe: table size mismatch");
    for (const Form& f : dtable_)
        for (const auto& [m, c] : f.terms())
            if (m.degree() != 2 || (m.hol | m.anti) & ~full_mask(n_))
                throw std::invalid_argument("Coframe: differential table entry is not a 2-form");
}

Form Coframe::d_mono(const Mono& m) const {
    Form out;
    int pos = 0;
    for (int i : indices_of_mask(m.hol)) {
        IndexMask below = m.hol & ((IndexMask(1) << (i - 1)) - 1);
        IndexMask above = m.hol & ~((IndexMask(1) << i) - 1);
        Form term = wedge(wedge(Form::monomial(Mono{below, 0}), dtable_[i - 1]),
                          Form::monomial(Mono{above, m.anti}));
        out += term.scaled(Scalar::sign_pow(pos));
        ++pos;
    }
    for (int j : indices_of_mask(m.anti)) {
        IndexMask below = m.anti & ((IndexMask(1) << (j - 1)) - 1);
        IndexMask above = m.anti & ~((IndexMask(1) << j) - 1);
        Form term = wedge(wedge(Form::monomial(Mono{m.hol, below}), conjugate(dtable_[j - 1])),
                          Form::monomial(Mono{0, above}));
        out += term.scaled(Scalar::sign_pow(pos));
        ++pos;
    }
    return out;
}

Form Coframe::d(const Form& u) const {
    Form out;
    for (const auto& [m, c] : u.terms()) out += d_mono(m).scaled(c);
    return out;
}

Form Coframe::del(const Form& u) const {
    Form out;
    for (const auto& [m, c] : u.terms()) {
        Bidegree b = m.bidegree();
        out += d_mono(m).component({b.p + 1, b.q}).scaled(c);
    }
    return out;
}

Form Coframe::dbar(const Form& u) const {
    Form out;
    for (const auto& [m, c] : u.terms()) {
        Bidegree b = m.bidegree();
        out += d_mono(m).component({b.p, b.q + 1}).scaled(c);
    }
    return out;
}

VectorForm Coframe::dbar(const VectorForm& theta) const {
    VectorForm out;
    for (const auto& [vm, c] : theta.terms()) {
        int q = mask_count(vm.anti);
        // scalar part: dbar(c conj(phi)^J) (x) Z_i
        Form scalar_part = dbar(Form::monomial(Mono{0, vm.anti}, c));
        for (const auto& [m, cc] : scalar_part.terms()) {
            if (m.hol != 0) throw std::logic_error("Coframe::dbar(vector): non-(0,q) term");
            out.add_term(VMono{vm.frame, m.anti}, cc);
        }
        // frame part: (-1)^q c conj(phi)^J wedge dbar Z_i, with
        // dbar Z_i = sum_j conj(phi)^j (x) pr^{1,0}[conj(Z_j), Z_i] and
        // pr^{1,0}[conj(Z_j), Z_i] = sum_k (d phi^k)_{i jbar} Z_k.
        for (int j = 1; j <= n_; ++j) {
            Mono mixed{IndexMask(1) << (vm.frame - 1), IndexMask(1) << (j - 1)};
            Form wedged = wedge(Form::monomial(Mono{0, vm.anti}),
                                Form::monomial(Mono{0, IndexMask(1) << (j - 1)}));
            if (wedged.is_zero()) continue;
            for (int k = 1; k <= n_; ++k) {
                Scalar e = dtable_[k - 1].coeff(mixed);
                if (e.is_zero()) continue;
                for (const auto& [wm, wc] : wedged.terms())
                    out.add_term(VMono{k, wm.anti}, c * e * wc * Scalar::sign_pow(q));
            }
        }
    }
    return out;
}

Form Coframe::contract(const VectorForm& theta, const Form& u) const {
    // The frame vector is inserted in the last slot: on a degree-k monomial
    // the interior product picks up (-1)^{k-1} relative to first-slot
    // insertion. This is the convention under which the Leibniz rule
    // dbar(theta .| beta) = dbar(theta) .| beta + (-1)^q theta .| dbar(beta)
    // holds exactly.
    Form out;
    for (const auto& [vm, c] : theta.terms()) {
        IndexMask bit = IndexMask(1) << (vm.frame - 1);
        for (const auto& [m, cu] : u.terms()) {
            if (!(m.hol & bit)) continue;
            int pos = mask_count(m.hol & (bit - 1));
            Form inner = Form::monomial(Mono{m.hol & ~bit, m.anti},
                                        cu * Scalar::sign_pow(pos + m.degree() - 1));
            out += wedge(Form::monomial(Mono{0, vm.anti}, c), inner);
        }
    }
    return out;
}

ValidationReport Coframe::validate() const {
    ValidationReport rep;
    // integrability: no (0,2) component in any d phi^i
    for (int i = 1; i <= n_; ++i) {
        Form bad = dtable_[i - 1].component({0, 2});
        ValidationCheck c;
        c.name = "integrability d" + names_[i - 1];
        c.passed = bad.is_zero();
        if (!c.passed) c.detail = "(0,2) part of d" + names_[i - 1] + " = " + bad.str();
        rep.checks.push_back(std::move(c));
    }
    // d^2 = 0 on every generator (extends to all forms by Leibniz)
    for (int i = 1; i <= n_; ++i) {
        Form dd = d(dtable_[i - 1]);
        ValidationCheck c;
        c.name = "d^2 " + names_[i - 1];
        c.passed = dd.is_zero();
        if (!c.passed) c.detail = "d(d" + names_[i - 1] + ") = " + dd.str();
        rep.checks.push_back(std::move(c));
    }
    // unimodularity: the coefficient of the top-degree monomial in d gamma
    // vanishes for every basis (2n-1)-monomial gamma
    Mono top{full_mask(n_), full_mask(n_)};
    bool uni = true;
    std::string detail;
    for (int k = 2 * n_ - 1, p = std::max(0, k - n_); p <= std::min(n_, k); ++p) {
        for (const Mono& m : basis({p, k - p})) {
            Scalar c = d_mono(m).coeff(top);
            if (!c.is_zero()) {
                uni = false;
                detail = "d" + mono_str(m) + " has top coefficient " + c.str();
            }
        }
    }
    rep.checks.push_back({"unimodularity", uni, detail});
    return rep;
}

void Coframe::require_valid() const {
    ValidationReport rep = validate();
    if (!rep.ok()) throw std::runtime_error("invalid coframe presentation:\n" + rep.summary());
}

std::vector<Mono> Coframe::basis(Bidegree b) const {
    std::vector<Mono> out;
    if (b.p < 0 || b.q < 0 || b.p > n_ || b.q > n_) return out;
    for (IndexMask h = 0; h <= full_mask(n_); ++h) {
        if (mask_count(h) != b.p) continue;
        for (IndexMask a = 0; a <= full_mask(n_); ++a) {
            if (mask_count(a) != b.q) continue;
            out.push_back(Mono{h, a});
        }
    }
    return out;
}

std::vector<Mono> Coframe::basis_total(int k) const {
    std::vector<Mono> out;
    for (int p = std::min(n_, k); p >= std::max(0, k - n_); --p) {
        auto part = basis({p, k - p});
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::vector<VMono> Coframe::vector_basis(int q) const {
    std::vector<VMono> out;
    for (int i = 1; i <= n_; ++i)
        for (IndexMask a = 0; a <= full_mask(n_); ++a)
            if (mask_count(a) == q) out.push_back(VMono{i, a});
    return out;
}

Matrix matrix_of(const std::function<Form(const Form&)>& op, const std::vector<Mono>& src,
                 const std::vector<Mono>& dst) {
    std::vector<Vec> cols;
    cols.reserve(src.size());
    for (const Mono& m : src) cols.push_back(form_coords(op(Form::monomial(m)), dst));
    return Matrix::from_columns(static_cast<int>(dst.size()), cols);
}

Matrix matrix_of_vec(const std::function<VectorForm(const VectorForm&)>& op,
                     const std::vector<VMono>& src, const std::vector<VMono>& dst) {
    std::vector<Vec> cols;
    cols.reserve(src.size());
    for (const VMono& m : src)
        cols.push_back(vform_coords(op(VectorForm::monomial(m.frame, m.anti)), dst));
    return Matrix::from_columns(static_cast<int>(dst.size()), cols);
}

Matrix matrix_of_vec_to_form(const std::function<Form(const VectorForm&)>& op,
                             const std::vector<VMono>& src, const std::vector<Mono>& dst) {
    std::vector<Vec> cols;
    cols.reserve(src.size());
    for (const VMono& m : src)
        cols.push_back(form_coords(op(VectorForm::monomial(m.frame, m.anti)), dst));
    return Matrix::from_columns(static_cast<int>(dst.size()), cols);
}

}  // namespace skt
