#pragma once

#include "skt/manifold_io.hpp"

#include <random>

namespace skt::testing {

inline ManifoldInput builtin(const std::string& name) { return load_manifold(name); }

inline Form F(const std::string& expr, int n = 3) { return parse_form_expr(expr, n); }
inline VectorForm V(const std::string& expr, int n = 3) { return parse_vector_expr(expr, n); }

inline Scalar S(const std::string& s) { return Scalar::parse(s); }

/// Small random Gaussian rationals; numerators in [-4,4], denominators in
/// {1,2,3}, to keep elimination sizes small.
struct Rng {
    std::mt19937 gen;
    explicit Rng(unsigned seed) : gen(seed) {}

    Scalar scalar() {
        std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
        return Scalar(mpq_class(num(gen), den(gen)), mpq_class(num(gen), den(gen)));
    }
    Scalar nonzero_scalar() {
        Scalar s = scalar();
        while (s.is_zero()) s = scalar();
        return s;
    }
    Form form(const Coframe& cf, Bidegree b, int terms = 3) {
        auto basis = cf.basis(b);
        if (basis.empty()) return Form();
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        Form f;
        for (int i = 0; i < terms; ++i) f.add_term(basis[pick(gen)], scalar());
        return f;
    }
    Form mixed_form(const Coframe& cf, int degree, int terms = 3) {
        auto basis = cf.basis_total(degree);
        if (basis.empty()) return Form();
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        Form f;
        for (int i = 0; i < terms; ++i) f.add_term(basis[pick(gen)], scalar());
        return f;
    }
    VectorForm vector_form(const Coframe& cf, int q, int terms = 3) {
        auto basis = cf.vector_basis(q);
        if (basis.empty()) return VectorForm();
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        VectorForm f;
        for (int i = 0; i < terms; ++i) {
            const VMono& m = basis[pick(gen)];
            f.add_term(m, scalar());
        }
        return f;
    }
    /// Random element of the span of the given coordinate vectors.
    Vec combo(const std::vector<Vec>& basis, int dim) {
        Vec out(dim, Scalar());
        for (const Vec& v : basis) {
            Scalar c = scalar();
            for (int i = 0; i < dim; ++i) out[i] += c * v[i];
        }
        return out;
    }
};

}  // namespace skt::testing
