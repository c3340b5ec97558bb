#include "skt/form.hpp"

#include <algorithm>
#include <stdexcept>

namespace skt {

IndexMask mask_of_indices(const std::vector<int>& idx) {
    IndexMask m = 0;
    for (int i : idx) {
        if (i < 1 || i > 31) throw std::invalid_argument("index out of range");
        IndexMask bit = IndexMask(1) << (i - 1);
        if (m & bit) throw std::invalid_argument("repeated index");
        m |= bit;
    }
    return m;
}

std::vector<int> indices_of_mask(IndexMask m) {
    std::vector<int> out;
    for (int i = 1; m; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

int crossings(IndexMask left, IndexMask right) {
    int count = 0;
    for (IndexMask r = right; r;) {
        IndexMask low = r & (~r + 1);  // lowest set bit
        r ^= low;
        // elements of `left` strictly above this bit
        IndexMask above = left & ~((low << 1) - 1);
        count += mask_count(above);
    }
    return count;
}

std::string mono_str(const Mono& m) {
    std::string out = "(";
    for (int i : indices_of_mask(m.hol)) out += std::to_string(i);
    out += "|";
    for (int i : indices_of_mask(m.anti)) out += std::to_string(i);
    out += ")";
    return out;
}

Mono mono_parse(const std::string& body) {
    auto bar = body.find('|');
    if (bar == std::string::npos)
        throw std::invalid_argument("monomial '" + body + "' lacks '|'");
    Mono m;
    auto read = [&](const std::string& part) {
        IndexMask mask = 0;
        for (char c : part) {
            if (c < '1' || c > '9')
                throw std::invalid_argument("bad index '" + std::string(1, c) + "' in monomial");
            IndexMask bit = IndexMask(1) << (c - '1');
            if (mask & bit) throw std::invalid_argument("repeated index in monomial '" + body + "'");
            mask |= bit;
        }
        return mask;
    };
    m.hol = read(body.substr(0, bar));
    m.anti = read(body.substr(bar + 1));
    return m;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out += " + ";
        out += c.str() + "*" + mono_str(m);
        first = false;
    }
    return out;
}

Form wedge(const Form& a, const Form& b) {
    Form out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if ((ma.hol & mb.hol) || (ma.anti & mb.anti)) continue;
            long sgn = static_cast<long>(mask_count(ma.anti)) * mask_count(mb.hol) +
                       crossings(ma.hol, mb.hol) + crossings(ma.anti, mb.anti);
            Mono m{ma.hol | mb.hol, ma.anti | mb.anti};
            out.add_term(m, ca * cb * Scalar::sign_pow(sgn));
        }
    }
    return out;
}

Form wedge_pow(const Form& a, int k) {
    if (k < 0) throw std::invalid_argument("wedge_pow: negative power");
    Form out = Form::monomial(Mono{});
    for (int i = 0; i < k; ++i) out = wedge(out, a);
    return out;
}

Form conjugate(const Form& f) {
    Form out;
    for (const auto& [m, c] : f.terms()) {
        long sgn = static_cast<long>(mask_count(m.hol)) * mask_count(m.anti);
        out.add_term(Mono{m.anti, m.hol}, c.conj() * Scalar::sign_pow(sgn));
    }
    return out;
}

void VectorForm::add_term(const VMono& m, const Scalar& c) {
    if (c.is_zero()) return;
    if (m.frame < 1) throw std::invalid_argument("VectorForm: bad frame index");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int VectorForm::q() const {
    if (terms_.empty()) throw std::invalid_argument("VectorForm::q: zero form");
    int q = mask_count(terms_.begin()->first.anti);
    for (const auto& [m, c] : terms_)
        if (mask_count(m.anti) != q)
            throw std::invalid_argument("VectorForm::q: mixed antiholomorphic degree");
    return q;
}

bool VectorForm::is_homogeneous() const {
    if (terms_.empty()) return true;
    int q = mask_count(terms_.begin()->first.anti);
    for (const auto& [m, c] : terms_)
        if (mask_count(m.anti) != q) return false;
    return true;
}

std::string VectorForm::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out += " + ";
        out += c.str() + "*(|";
        for (int i : indices_of_mask(m.anti)) out += std::to_string(i);
        out += ")Z" + std::to_string(m.frame);
        first = false;
    }
    return out;
}

Vec form_coords(const Form& f, const std::vector<Mono>& basis) {
    std::map<Mono, int> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) index[basis[i]] = i;
    Vec out(basis.size(), Scalar());
    for (const auto& [m, c] : f.terms()) {
        auto it = index.find(m);
        if (it == index.end())
            throw std::invalid_argument("form_coords: term " + mono_str(m) + " outside basis");
        out[it->second] = c;
    }
    return out;
}

Form form_from_coords(const Vec& coords, const std::vector<Mono>& basis) {
    if (coords.size() != basis.size())
        throw std::invalid_argument("form_from_coords: size mismatch");
    Form out;
    for (std::size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], coords[i]);
    return out;
}

Vec vform_coords(const VectorForm& f, const std::vector<VMono>& basis) {
    std::map<VMono, int> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) index[basis[i]] = i;
    Vec out(basis.size(), Scalar());
    for (const auto& [m, c] : f.terms()) {
        auto it = index.find(m);
        if (it == index.end())
            throw std::invalid_argument("vform_coords: term outside basis");
        out[it->second] = c;
    }
    return out;
}

VectorForm vform_from_coords(const Vec& coords, const std::vector<VMono>& basis) {
    if (coords.size() != basis.size())
        throw std::invalid_argument("vform_from_coords: size mismatch");
    VectorForm out;
    for (std::size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], coords[i]);
    return out;
}

}  // namespace skt
