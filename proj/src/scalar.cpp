#include "skt/scalar.hpp"

#include <cctype>

namespace skt {

namespace {

std::size_t rat_bits(const mpq_class& q) {
    return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
}

std::string rat_str(const mpq_class& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

// rational := ['-'|'+'] digits ['/' digits]
bool parse_rational(const std::string& s, std::size_t& pos, mpq_class& out) {
    std::size_t start = pos;
    std::string num;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        if (s[pos] == '-') num += '-';
        ++pos;
    }
    std::size_t digits = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        num += s[pos++];
        ++digits;
    }
    if (digits == 0) {
        pos = start;
        return false;
    }
    std::string den;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            den += s[pos++];
        if (den.empty()) {
            pos = start;
            return false;
        }
    }
    mpz_class n(num), d(den.empty() ? "1" : den);
    if (d == 0) throw std::invalid_argument("Scalar::parse: zero denominator in '" + s + "'");
    out = mpq_class(n, d);
    out.canonicalize();
    return true;
}

}  // namespace

std::size_t Scalar::bit_size() const { return rat_bits(re_) + rat_bits(im_); }

std::string Scalar::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out += rat_str(re_);
    if (im_ != 0) {
        if (re_ != 0 && im_ > 0) out += "+";
        out += rat_str(im_) + "i";
    }
    return out;
}

Scalar Scalar::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("Scalar::parse: empty input");
    if (s == "i") return Scalar::i();
    if (s == "-i") return -Scalar::i();
    if (s == "+i") return Scalar::i();

    std::size_t pos = 0;
    mpq_class first;
    if (!parse_rational(s, pos, first))
        throw std::invalid_argument("Scalar::parse: malformed scalar '" + text + "'");
    if (pos == s.size()) return Scalar(first);
    if (s[pos] == 'i') {
        ++pos;
        if (pos != s.size())
            throw std::invalid_argument("Scalar::parse: trailing characters in '" + text + "'");
        return Scalar(mpq_class(0), first);
    }
    // second part must be the imaginary one
    mpq_class second;
    if (!parse_rational(s, pos, second) || pos >= s.size() || s[pos] != 'i' || pos + 1 != s.size())
        throw std::invalid_argument("Scalar::parse: malformed scalar '" + text + "'");
    return Scalar(first, second);
}

}  // namespace skt
