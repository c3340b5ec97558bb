#include "skt/cohomology.hpp"

#include <stdexcept>

namespace skt {

std::string model_name(Model m) {
    switch (m) {
        case Model::DeRham: return "de-rham";
        case Model::Dolbeault: return "dolbeault";
        case Model::BottChern: return "bott-chern";
        case Model::Aeppli: return "aeppli";
    }
    return "?";
}

std::vector<Vec> canonical_span(const std::vector<Vec>& gens, int dim) {
    if (gens.empty()) return {};
    Matrix rows = Matrix::from_rows(gens);
    // reduced echelon rows of the generator matrix give the canonical basis
    std::vector<Vec> dense = rows.dense();
    Matrix m = Matrix::from_rows(dense);
    // rref via kernel machinery: reuse rank/eliminate by building from solve?
    // Simple: run Gauss-Jordan here.
    int nrows = m.rows(), ncols = dim;
    std::vector<Vec> a = m.dense();
    int row = 0;
    for (int col = 0; col < ncols && row < nrows; ++col) {
        int best = -1;
        std::size_t best_bits = 0;
        for (int r = row; r < nrows; ++r) {
            if (a[r][col].is_zero()) continue;
            std::size_t bits = a[r][col].bit_size();
            if (best < 0 || bits < best_bits) {
                best = r;
                best_bits = bits;
            }
        }
        if (best < 0) continue;
        std::swap(a[row], a[best]);
        Scalar inv = a[row][col].inverse();
        for (int c = 0; c < ncols; ++c)
            if (!a[row][c].is_zero()) a[row][c] *= inv;
        for (int r = 0; r < nrows; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            Scalar f = a[r][col];
            for (int c = 0; c < ncols; ++c)
                if (!a[row][c].is_zero()) a[r][c] -= f * a[row][c];
        }
        ++row;
    }
    a.resize(row);
    return a;
}

bool CohomologyGroup::is_in_numerator(const Form& u) const {
    Vec coords = form_coords(u, ambient_);
    for (const auto& [name, op] : numerator_ops_) {
        Vec img = op.apply(coords);
        for (const Scalar& s : img)
            if (!s.is_zero()) return false;
    }
    return true;
}

Vec CohomologyGroup::reduce(const Form& u) const {
    Vec coords = form_coords(u, ambient_);
    for (const auto& [name, op] : numerator_ops_) {
        Vec img = op.apply(coords);
        for (const Scalar& s : img)
            if (!s.is_zero())
                throw std::invalid_argument("reduce: form is not " + name +
                                            "-closed, not a " + model_name(model_) + " class");
    }
    Matrix sys = rep_cols_.hcat(denom_cols_);
    auto sol = solve_affine(sys, coords);
    if (!sol) throw std::logic_error("reduce: representatives do not span the quotient");
    Vec out(sol->particular.begin(), sol->particular.begin() + dimension());
    return out;
}

bool CohomologyGroup::is_zero_class(const Form& u) const {
    for (const Scalar& s : reduce(u))
        if (!s.is_zero()) return false;
    return true;
}

Form CohomologyGroup::class_representative(const Vec& coords) const {
    if (static_cast<int>(coords.size()) != dimension())
        throw std::invalid_argument("class_representative: coordinate size mismatch");
    Form out;
    for (int i = 0; i < dimension(); ++i) out += reps_[i].scaled(coords[i]);
    return out;
}

CohomologyRing::CohomologyRing(const Coframe& cf, const MetricContext* mc)
    : cf_(&cf), mc_(mc) {
    cf.require_valid();
    if (mc_ && &mc_->coframe() != cf_ && !mc_->coframe().same_table(*cf_))
        throw std::invalid_argument("CohomologyRing: metric context for a different coframe");
}

const CohomologyGroup& CohomologyRing::group(Model m, Bidegree b) const {
    if (m == Model::DeRham)
        throw std::invalid_argument("CohomologyRing::group: use de_rham(degree)");
    std::tuple<int, int, int> key{static_cast<int>(m), b.p, b.q};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    auto built = std::make_unique<CohomologyGroup>(build_group(m, b));
    std::lock_guard<std::mutex> lock(mu_);
    return *cache_.emplace(key, std::move(built)).first->second;
}

const CohomologyGroup& CohomologyRing::de_rham(int degree) const {
    std::tuple<int, int, int> key{static_cast<int>(Model::DeRham), degree, -1};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    auto built = std::make_unique<CohomologyGroup>(build_de_rham(degree));
    std::lock_guard<std::mutex> lock(mu_);
    return *cache_.emplace(key, std::move(built)).first->second;
}

CohomologyGroup CohomologyRing::finish_group(
    Model m, std::vector<Mono> ambient,
    std::vector<std::pair<std::string, Matrix>> numerator_ops,
    const std::vector<Vec>& numerator_kernel, std::vector<Vec> denom_gens,
    const std::vector<Form>* harmonic) const {
    CohomologyGroup g;
    g.model_ = m;
    g.ambient_ = std::move(ambient);
    g.numerator_ops_ = std::move(numerator_ops);
    int amb = static_cast<int>(g.ambient_.size());

    std::vector<Vec> denom = canonical_span(denom_gens, amb);
    g.denom_cols_ = Matrix::from_columns(amb, denom);
    int denom_rank = static_cast<int>(denom.size());

    Matrix num_cols = Matrix::from_columns(amb, numerator_kernel);
    int num_rank = static_cast<int>(numerator_kernel.size());
    if (rank(num_cols.hcat(g.denom_cols_)) != num_rank)
        throw std::logic_error("cohomology: denominator not contained in numerator");
    int dim = num_rank - denom_rank;

    std::vector<Vec> rep_vecs;
    if (harmonic) {
        if (static_cast<int>(harmonic->size()) != dim)
            throw std::logic_error(
                "cohomology: harmonic dimension disagrees with quotient dimension for " +
                model_name(m));
        for (const Form& h : *harmonic) {
            Vec coords = form_coords(h, g.ambient_);
            rep_vecs.push_back(coords);
            g.reps_.push_back(h);
        }
    } else {
        // deterministic completion of the denominator inside the numerator
        Matrix acc = g.denom_cols_;
        int r = denom_rank;
        for (const Vec& v : numerator_kernel) {
            if (static_cast<int>(rep_vecs.size()) == dim) break;
            Matrix cand = acc.hcat(Matrix::from_columns(amb, {v}));
            if (rank(cand) > r) {
                acc = cand;
                ++r;
                rep_vecs.push_back(v);
                g.reps_.push_back(form_from_coords(v, g.ambient_));
            }
        }
        if (static_cast<int>(rep_vecs.size()) != dim)
            throw std::logic_error("cohomology: failed to complete representative basis");
    }
    g.rep_cols_ = Matrix::from_columns(amb, rep_vecs);

    // representative classes must stay independent modulo the denominator
    if (rank(g.rep_cols_.hcat(g.denom_cols_)) != dim + denom_rank)
        throw std::logic_error("cohomology: representative classes are dependent");

    // numerator membership of every representative
    for (const Form& rf : g.reps_)
        if (!g.is_in_numerator(rf))
            throw std::logic_error("cohomology: representative outside numerator");
    return g;
}

CohomologyGroup CohomologyRing::build_group(Model m, Bidegree b) const {
    const Coframe& cf = *cf_;
    auto amb = cf.basis(b);
    auto del_op = [&](const Form& f) { return cf.del(f); };
    auto dbar_op = [&](const Form& f) { return cf.dbar(f); };
    auto deldbar_op = [&](const Form& f) { return cf.del(cf.dbar(f)); };

    std::vector<std::pair<std::string, Matrix>> nops;
    std::vector<Vec> denom;
    const std::vector<Form>* harmonic = nullptr;

    auto image_cols = [&](Bidegree src, const std::function<Form(const Form&)>& op) {
        std::vector<Vec> cols;
        for (const Mono& mono : cf.basis(src)) {
            Vec v = form_coords(op(Form::monomial(mono)), amb);
            bool zero = true;
            for (const Scalar& s : v) zero = zero && s.is_zero();
            if (!zero) cols.push_back(std::move(v));
        }
        return cols;
    };

    switch (m) {
        case Model::BottChern: {
            nops.emplace_back("del", matrix_of(del_op, amb, cf.basis({b.p + 1, b.q})));
            nops.emplace_back("dbar", matrix_of(dbar_op, amb, cf.basis({b.p, b.q + 1})));
            denom = image_cols({b.p - 1, b.q - 1}, deldbar_op);
            if (mc_) harmonic = &mc_->harmonic_basis(LaplacianKind::BottChern, b);
            break;
        }
        case Model::Aeppli: {
            nops.emplace_back("del-dbar", matrix_of(deldbar_op, amb, cf.basis({b.p + 1, b.q + 1})));
            denom = image_cols({b.p - 1, b.q}, del_op);
            for (Vec& v : image_cols({b.p, b.q - 1}, dbar_op)) denom.push_back(std::move(v));
            if (mc_) harmonic = &mc_->harmonic_basis(LaplacianKind::Aeppli, b);
            break;
        }
        case Model::Dolbeault: {
            nops.emplace_back("dbar", matrix_of(dbar_op, amb, cf.basis({b.p, b.q + 1})));
            denom = image_cols({b.p, b.q - 1}, dbar_op);
            if (mc_) harmonic = &mc_->harmonic_basis(LaplacianKind::Dbar, b);
            break;
        }
        case Model::DeRham:
            throw std::logic_error("build_group: de Rham handled separately");
    }

    Matrix stacked;
    bool first = true;
    for (const auto& [name, op] : nops) {
        stacked = first ? op : stacked.vcat(op);
        first = false;
    }
    std::vector<Vec> num_kernel = kernel_basis(stacked);
    return finish_group(m, amb, std::move(nops), num_kernel, std::move(denom), harmonic);
}

CohomologyGroup CohomologyRing::build_de_rham(int degree) const {
    const Coframe& cf = *cf_;
    auto amb = cf.basis_total(degree);
    auto d_op = [&](const Form& f) { return cf.d(f); };
    std::vector<std::pair<std::string, Matrix>> nops;
    nops.emplace_back("d", matrix_of(d_op, amb, cf.basis_total(degree + 1)));
    std::vector<Vec> denom;
    for (const Mono& mono : cf.basis_total(degree - 1)) {
        Vec v = form_coords(cf.d(Form::monomial(mono)), amb);
        bool zero = true;
        for (const Scalar& s : v) zero = zero && s.is_zero();
        if (!zero) denom.push_back(std::move(v));
    }
    const std::vector<Form>* harmonic = nullptr;
    if (mc_) harmonic = &mc_->harmonic_basis_total(degree);
    std::vector<Vec> num_kernel = kernel_basis(nops[0].second);
    return finish_group(Model::DeRham, amb, std::move(nops), num_kernel, std::move(denom),
                        harmonic);
}

Matrix CohomologyRing::canonical_map(Model src, Model tgt, Bidegree b) const {
    bool ok = (src == Model::BottChern && tgt == Model::Dolbeault) ||
              (src == Model::Dolbeault && tgt == Model::Aeppli) ||
              (src == Model::BottChern && tgt == Model::Aeppli);
    if (!ok)
        throw std::invalid_argument(
            "canonical_map: models must follow bott-chern -> dolbeault -> aeppli");
    const CohomologyGroup& s = group(src, b);
    const CohomologyGroup& t = group(tgt, b);
    std::vector<Vec> cols;
    for (const Form& r : s.representatives()) cols.push_back(t.reduce(r));
    return Matrix::from_columns(t.dimension(), cols);
}

CohomologyRing::DdbarReport CohomologyRing::ddbar_test() const {
    DdbarReport rep;
    rep.is_ddbar = true;
    int n = cf_->dim();
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            Bidegree b{p, q};
            DdbarReport::Entry e;
            e.bidegree = b;
            e.dim_bc = group(Model::BottChern, b).dimension();
            e.dim_dolbeault = group(Model::Dolbeault, b).dimension();
            e.dim_aeppli = group(Model::Aeppli, b).dimension();
            Matrix m1 = canonical_map(Model::BottChern, Model::Dolbeault, b);
            Matrix m2 = canonical_map(Model::Dolbeault, Model::Aeppli, b);
            e.bc_to_dolbeault_iso = (e.dim_bc == e.dim_dolbeault) && rank(m1) == e.dim_bc;
            e.dolbeault_to_aeppli_iso =
                (e.dim_dolbeault == e.dim_aeppli) && rank(m2) == e.dim_dolbeault;
            rep.is_ddbar = rep.is_ddbar && e.bc_to_dolbeault_iso && e.dolbeault_to_aeppli_iso;
            rep.entries.push_back(e);
        }
    return rep;
}

CohomologyRing::Hodge2 CohomologyRing::hodge_decompose_2form(const Form& rho) const {
    const Coframe& cf = *cf_;
    for (const auto& [m, c] : rho.terms())
        if (m.degree() != 2)
            throw std::invalid_argument("hodge_decompose_2form: input is not a 2-form");
    if (!cf.d(rho).is_zero())
        throw std::invalid_argument("hodge_decompose_2form: input is not d-closed");

    auto amb2 = cf.basis_total(2);
    auto amb1 = cf.basis_total(1);
    int dim2 = static_cast<int>(amb2.size());

    // d-closed subspaces of each pure type
    std::vector<Bidegree> types{{2, 0}, {1, 1}, {0, 2}};
    std::vector<std::vector<Vec>> zbases;  // coords in amb2
    for (Bidegree t : types) {
        auto tb = cf.basis(t);
        Matrix dmat = matrix_of([&](const Form& f) { return cf.d(f); }, tb, cf.basis_total(3));
        std::vector<Vec> z;
        for (const Vec& k : kernel_basis(dmat)) {
            Form f = form_from_coords(k, tb);
            z.push_back(form_coords(f, amb2));
        }
        zbases.push_back(std::move(z));
    }

    std::vector<Vec> cols;
    std::vector<int> offsets;  // start of each variable block
    for (const auto& z : zbases) {
        offsets.push_back(static_cast<int>(cols.size()));
        for (const Vec& v : z) cols.push_back(v);
    }
    offsets.push_back(static_cast<int>(cols.size()));
    for (const Mono& m : amb1)
        cols.push_back(form_coords(cf.d(Form::monomial(m)), amb2));

    Matrix sys = Matrix::from_columns(dim2, cols);
    Vec target = form_coords(rho, amb2);
    auto sol = solve_affine(sys, target);

    Hodge2 out;
    if (!sol) {
        out.feasible = false;
        out.detail = "no decomposition into d-closed pure-type pieces over invariant forms";
        return out;
    }
    out.feasible = true;

    auto alpha_of = [&](const Vec& x, int which) {
        Form f;
        const auto& z = zbases[which];
        for (int i = 0; i < static_cast<int>(z.size()); ++i) {
            Scalar c = x[offsets[which] + i];
            if (c.is_zero()) continue;
            f += form_from_coords(z[i], amb2).scaled(c);
        }
        return f;
    };
    out.alpha20 = alpha_of(sol->particular, 0);
    out.alpha11 = alpha_of(sol->particular, 1);
    out.alpha02 = alpha_of(sol->particular, 2);
    out.class20 = group(Model::Aeppli, {2, 0}).reduce(out.alpha20.is_zero()
                                                          ? Form()
                                                          : out.alpha20);
    out.class11 = group(Model::Aeppli, {1, 1}).reduce(out.alpha11);
    out.class02 = group(Model::Aeppli, {0, 2}).reduce(out.alpha02);

    // the triple of classes is unique iff no homogeneous solution moves them
    out.unique = true;
    for (const Vec& k : sol->kernel) {
        for (int which = 0; which < 3; ++which) {
            Form f = alpha_of(k, which);
            if (f.is_zero()) continue;
            Vec cls = group(Model::Aeppli, types[which]).reduce(f);
            for (const Scalar& s : cls)
                if (!s.is_zero()) {
                    out.unique = false;
                    out.detail = "Aeppli classes of the decomposition are not unique";
                }
        }
        if (!out.unique) break;
    }
    return out;
}

CohomologyRing::MinimalRep CohomologyRing::minimal_d_closed_rep(const CohClass& c) const {
    if (!mc_)
        throw std::invalid_argument("minimal_d_closed_rep: metric context required");
    if (c.model != Model::Dolbeault)
        throw std::invalid_argument("minimal_d_closed_rep: expects a Dolbeault class");
    const Coframe& cf = *cf_;
    Bidegree b = c.bidegree;
    const CohomologyGroup& g = group(Model::Dolbeault, b);
    Form beta = g.class_representative(g.reduce(c.rep));  // Dbar-harmonic representative

    MinimalRep out;
    Form del_beta = cf.del(beta);
    if (b.q == 0) {
        if (del_beta.is_zero()) {
            out.feasible = true;
            out.rep = beta;
        } else {
            out.feasible = false;
            out.detail = "del(beta) is nonzero and there is no (p,-1) source space";
        }
        return out;
    }
    Bidegree src{b.p, b.q - 1};
    auto src_basis = cf.basis(src);
    Matrix a = matrix_of([&](const Form& f) { return cf.del(cf.dbar(f)); }, src_basis,
                         cf.basis({b.p + 1, b.q}));
    Vec rhs = form_coords(del_beta.scaled(Scalar(-1)), cf.basis({b.p + 1, b.q}));
    auto v = min_norm_solution(a, rhs, mc_->gram(src));
    if (!v) {
        out.feasible = false;
        out.detail = "class admits no d-closed representative in invariant forms";
        return out;
    }
    out.feasible = true;
    out.v_min = form_from_coords(*v, src_basis);
    out.rep = beta + cf.dbar(out.v_min);
    if (!cf.d(out.rep).is_zero())
        throw std::logic_error("minimal_d_closed_rep: output is not d-closed");
    Vec check = g.reduce(out.rep);
    Vec want = g.reduce(c.rep);
    if (check != want)
        throw std::logic_error("minimal_d_closed_rep: output left the Dolbeault class");
    return out;
}

}  // namespace skt
