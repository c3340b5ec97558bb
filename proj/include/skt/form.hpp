#pragma once

#include "skt/linalg.hpp"
#include "skt/scalar.hpp"

#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace skt {

/// Index subset of {1..n} as a bitmask; index i occupies bit i-1.
using IndexMask = std::uint32_t;

inline int mask_count(IndexMask m) { return std::popcount(m); }

IndexMask mask_of_indices(const std::vector<int>& idx);
std::vector<int> indices_of_mask(IndexMask m);
inline IndexMask full_mask(int n) { return (IndexMask(1) << n) - 1; }

/// Number of pairs (a, b) with a in `left`, b in `right`, a > b: the
/// inversion count when the sorted block `left` is placed before `right`.
int crossings(IndexMask left, IndexMask right);

struct Bidegree {
    int p = 0, q = 0;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    int total() const { return p + q; }
};

/// Monomial phi^I wedge conj(phi)^J in normal form: holomorphic indices
/// ascending, then antiholomorphic ascending.
struct Mono {
    IndexMask hol = 0;
    IndexMask anti = 0;
    friend auto operator<=>(const Mono&, const Mono&) = default;
    Bidegree bidegree() const { return {mask_count(hol), mask_count(anti)}; }
    int degree() const { return mask_count(hol) + mask_count(anti); }
};

std::string mono_str(const Mono& m);
/// Parses "I|J" (both sides digit strings, possibly empty).
Mono mono_parse(const std::string& body);

/// Sparse invariant form with exact coefficients; stored coefficients are
/// nonzero and monomials are in normal form.
class Form {
public:
    Form() = default;
    static Form monomial(Mono m, Scalar c = Scalar(1)) {
        Form f;
        f.add_term(m, c);
        return f;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, Scalar>& terms() const { return terms_; }

    Scalar coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }

    void add_term(const Mono& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Form operator+(const Form& o) const {
        Form out = *this;
        for (const auto& [m, c] : o.terms_) out.add_term(m, c);
        return out;
    }
    Form operator-(const Form& o) const { return *this + o.scaled(Scalar(-1)); }
    Form scaled(const Scalar& c) const {
        Form out;
        if (c.is_zero()) return out;
        for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
        return out;
    }
    Form& operator+=(const Form& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend bool operator==(const Form& a, const Form& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    /// The part of the given bidegree.
    Form component(Bidegree b) const {
        Form out;
        for (const auto& [m, c] : terms_)
            if (m.bidegree() == b) out.terms_.emplace(m, c);
        return out;
    }
    /// The part of the given total degree.
    Form degree_component(int k) const {
        Form out;
        for (const auto& [m, c] : terms_)
            if (m.degree() == k) out.terms_.emplace(m, c);
        return out;
    }
    std::vector<Bidegree> bidegrees() const {
        std::vector<Bidegree> out;
        for (const auto& [m, c] : terms_) {
            Bidegree b = m.bidegree();
            if (out.empty() || !(out.back() == b)) {
                bool seen = false;
                for (const auto& x : out) seen = seen || x == b;
                if (!seen) out.push_back(b);
            }
        }
        return out;
    }
    bool is_pure(Bidegree b) const {
        for (const auto& [m, c] : terms_)
            if (!(m.bidegree() == b)) return false;
        return true;
    }

    std::string str() const;

private:
    std::map<Mono, Scalar> terms_;
};

inline Form operator*(const Scalar& c, const Form& f) { return f.scaled(c); }

/// Exterior product with deterministic sign normalisation.
Form wedge(const Form& a, const Form& b);
Form wedge_pow(const Form& a, int k);

/// Complex conjugation: swaps holomorphic and antiholomorphic blocks with
/// the reordering sign and conjugates coefficients. An involution.
Form conjugate(const Form& f);

/// Vector-valued (0,q)-form: theta = sum theta^i_J conj(phi)^J (x) Z_i with
/// Z_i the frame dual to phi^i. All stored terms share the same q.
struct VMono {
    int frame = 0;       // i in 1..n
    IndexMask anti = 0;  // J
    friend auto operator<=>(const VMono&, const VMono&) = default;
};

class VectorForm {
public:
    VectorForm() = default;
    static VectorForm monomial(int frame, IndexMask anti, Scalar c = Scalar(1)) {
        VectorForm v;
        v.add_term({frame, anti}, c);
        return v;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<VMono, Scalar>& terms() const { return terms_; }
    void add_term(const VMono& m, const Scalar& c);

    /// Common antiholomorphic degree q; requires a homogeneous nonzero form.
    int q() const;
    bool is_homogeneous() const;

    VectorForm operator+(const VectorForm& o) const {
        VectorForm out = *this;
        for (const auto& [m, c] : o.terms_) out.add_term(m, c);
        return out;
    }
    VectorForm operator-(const VectorForm& o) const { return *this + o.scaled(Scalar(-1)); }
    VectorForm scaled(const Scalar& c) const {
        VectorForm out;
        if (c.is_zero()) return out;
        for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
        return out;
    }
    friend bool operator==(const VectorForm& a, const VectorForm& b) {
        return a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    std::map<VMono, Scalar> terms_;
};

inline VectorForm operator*(const Scalar& c, const VectorForm& f) { return f.scaled(c); }

/// Coordinates of a form w.r.t. an ordered monomial basis; throws if the
/// form has terms outside the basis.
Vec form_coords(const Form& f, const std::vector<Mono>& basis);
Form form_from_coords(const Vec& coords, const std::vector<Mono>& basis);

Vec vform_coords(const VectorForm& f, const std::vector<VMono>& basis);
VectorForm vform_from_coords(const Vec& coords, const std::vector<VMono>& basis);

}  // namespace skt
