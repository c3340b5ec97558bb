#include "skt/manifold_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace skt {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string remove_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

Scalar parse_coeff(const std::string& text) {
    if (text.empty()) return Scalar(1);
    return Scalar::parse(text);
}

void check_mask(IndexMask m, int n, const std::string& where) {
    if (m & ~full_mask(n))
        throw std::invalid_argument(where + ": index exceeds the dimension n=" +
                                    std::to_string(n));
}

}  // namespace

Form parse_form_expr(const std::string& text, int n) {
    std::string s = remove_spaces(text);
    if (s.empty()) throw std::invalid_argument("empty form expression");
    if (s == "0") return Form();
    Form out;
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        std::size_t lp = s.find('(', pos);
        if (lp == std::string::npos)
            throw std::invalid_argument("expected a monomial '(I|J)' in '" + text + "'");
        std::size_t rp = s.find(')', lp);
        if (rp == std::string::npos)
            throw std::invalid_argument("unclosed monomial in '" + text + "'");
        std::string pre = s.substr(pos, lp - pos);
        Scalar sign(1);
        if (!first) {
            if (pre.empty() || (pre[0] != '+' && pre[0] != '-'))
                throw std::invalid_argument("missing '+'/'-' between terms in '" + text + "'");
            if (pre[0] == '-') sign = Scalar(-1);
            pre = pre.substr(1);
        }
        if (!pre.empty() && pre.back() == '*') pre.pop_back();
        Scalar coeff = sign * parse_coeff(pre);
        Mono m = mono_parse(s.substr(lp + 1, rp - lp - 1));
        check_mask(m.hol | m.anti, n, "form expression");
        out.add_term(m, coeff);
        pos = rp + 1;
        first = false;
    }
    return out;
}

std::string print_form_expr(const Form& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) out += " + ";
        out += c.str() + "*" + mono_str(m);
        first = false;
    }
    return out;
}

VectorForm parse_vector_expr(const std::string& text, int n) {
    std::string s = remove_spaces(text);
    if (s.empty()) throw std::invalid_argument("empty vector form expression");
    if (s == "0") return VectorForm();
    VectorForm out;
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        std::size_t lp = s.find('(', pos);
        if (lp == std::string::npos)
            throw std::invalid_argument("expected '(|J)Zk' in '" + text + "'");
        std::size_t rp = s.find(')', lp);
        if (rp == std::string::npos)
            throw std::invalid_argument("unclosed monomial in '" + text + "'");
        std::string pre = s.substr(pos, lp - pos);
        Scalar sign(1);
        if (!first) {
            if (pre.empty() || (pre[0] != '+' && pre[0] != '-'))
                throw std::invalid_argument("missing '+'/'-' between terms in '" + text + "'");
            if (pre[0] == '-') sign = Scalar(-1);
            pre = pre.substr(1);
        }
        if (!pre.empty() && pre.back() == '*') pre.pop_back();
        Scalar coeff = sign * parse_coeff(pre);
        Mono m = mono_parse(s.substr(lp + 1, rp - lp - 1));
        if (m.hol != 0)
            throw std::invalid_argument("vector form monomial must be antiholomorphic '(|J)'");
        check_mask(m.anti, n, "vector form expression");
        if (rp + 1 >= s.size() || s[rp + 1] != 'Z')
            throw std::invalid_argument("expected 'Z<frame>' after monomial in '" + text + "'");
        std::size_t fp = rp + 2;
        std::string frame;
        while (fp < s.size() && std::isdigit(static_cast<unsigned char>(s[fp]))) frame += s[fp++];
        if (frame.empty()) throw std::invalid_argument("missing frame index after 'Z'");
        int fi = std::atoi(frame.c_str());
        if (fi < 1 || fi > n) throw std::invalid_argument("frame index out of range");
        out.add_term(VMono{fi, m.anti}, coeff);
        pos = fp;
        first = false;
    }
    return out;
}

std::string print_vector_expr(const VectorForm& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) out += " + ";
        out += c.str() + "*(|";
        for (int i : indices_of_mask(m.anti)) out += std::to_string(i);
        out += ")Z" + std::to_string(m.frame);
        first = false;
    }
    return out;
}

namespace {

struct RealBlock {
    std::vector<std::string> basis;
    // antisymmetric structure constants c[k][a][b] for a < b
    std::map<std::pair<int, int>, std::vector<Scalar>> brackets;
    std::vector<std::pair<int, int>> j_pairs;  // (v, Jv), 0-based
};

int find_name(const std::vector<std::string>& names, const std::string& s, int line) {
    for (int i = 0; i < static_cast<int>(names.size()); ++i)
        if (names[i] == s) return i;
    throw ParseError(line, "unknown basis element '" + s + "'");
}

// RHS of a bracket: rational combinations "c*name + c*name"
std::vector<Scalar> parse_bracket_rhs(const std::string& text, const RealBlock& blk, int line) {
    std::vector<Scalar> out(blk.basis.size(), Scalar());
    std::string s = remove_spaces(text);
    if (s == "0") return out;
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        Scalar sign(1);
        if (!first || s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-') sign = Scalar(-1);
            else if (s[pos] != '+')
                throw ParseError(line, "missing '+'/'-' between bracket terms");
            ++pos;
        }
        std::size_t star = s.find('*', pos);
        Scalar coeff(1);
        std::size_t name_start = pos;
        if (star != std::string::npos) {
            // a '*' belongs to this term only if it precedes the next sign
            std::size_t next_sign = s.find_first_of("+-", pos + 1);
            if (next_sign == std::string::npos || star < next_sign) {
                coeff = Scalar::parse(s.substr(pos, star - pos));
                name_start = star + 1;
            }
        }
        std::size_t name_end = s.find_first_of("+-", name_start);
        if (name_end == std::string::npos) name_end = s.size();
        std::string name = s.substr(name_start, name_end - name_start);
        if (name.empty()) throw ParseError(line, "missing basis name in bracket");
        int idx = find_name(blk.basis, name, line);
        Scalar c = sign * coeff;
        if (!c.is_real()) throw ParseError(line, "bracket coefficients must be real");
        out[idx] += c;
        pos = name_end;
        first = false;
    }
    return out;
}

// Real Chevalley-Eilenberg data to a complex coframe through the declared J.
Coframe real_to_complex(const RealBlock& blk, int n, int line) {
    int dim = static_cast<int>(blk.basis.size());
    if (dim != 2 * n) throw ParseError(line, "real basis must have 2n elements");
    if (static_cast<int>(blk.j_pairs.size()) != n)
        throw ParseError(line, "exactly n J-pair lines are required");
    std::vector<bool> used(dim, false);
    for (auto [a, b] : blk.j_pairs) {
        if (used[a] || used[b] || a == b) throw ParseError(line, "J pairs must partition the basis");
        used[a] = used[b] = true;
    }

    // covector images: x_{a_m}* = (phi^m + conj phi^m)/2,
    //                  x_{b_m}* = (phi^m - conj phi^m)/(2i)
    std::vector<Form> covector(dim);
    Scalar half = Scalar::of(1, 2);
    Scalar half_over_i = Scalar::of(1, 2) / Scalar::i();
    for (int m = 0; m < n; ++m) {
        auto [a, b] = blk.j_pairs[m];
        Mono hol{IndexMask(1) << m, 0}, anti{0, IndexMask(1) << m};
        Form fa, fb;
        fa.add_term(hol, half);
        fa.add_term(anti, half);
        fb.add_term(hol, half_over_i);
        fb.add_term(anti, -half_over_i);
        covector[a] = fa;
        covector[b] = fb;
    }

    // d x_k* = - sum_{a<b} c^k_{ab} x_a* /\ x_b*
    auto d_real = [&](int k) {
        Form out;
        for (const auto& [ab, coeffs] : blk.brackets) {
            const Scalar& c = coeffs[k];
            if (c.is_zero()) continue;
            out += wedge(covector[ab.first], covector[ab.second]).scaled(-c);
        }
        return out;
    };

    std::vector<std::string> names;
    std::vector<Form> dtable;
    for (int m = 0; m < n; ++m) {
        auto [a, b] = blk.j_pairs[m];
        dtable.push_back(d_real(a) + Scalar::i() * d_real(b));
        names.push_back("f" + std::to_string(m + 1));
    }
    return Coframe(n, std::move(names), std::move(dtable));
}

}  // namespace

ManifoldInput parse_manifold(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    int n = -1;
    std::optional<Coframe> coframe;
    std::optional<Matrix> metric_m;
    std::map<std::pair<int, int>, Scalar> metric_entries;
    bool have_metric = false;
    std::optional<Form> volume;

    enum class BlockState { None, Complex, Real, Metric };
    BlockState state = BlockState::None;
    std::vector<Form> dtable;
    std::vector<bool> dseen;
    RealBlock real_blk;
    int block_open_line = 0;

    auto next_line = [&](std::string& out) {
        if (!std::getline(in, raw)) return false;
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        out = strip(raw);
        return true;
    };

    std::string line;
    while (next_line(line)) {
        if (line.empty()) continue;

        if (state == BlockState::None) {
            if (line.rfind("n", 0) == 0 && line.find('=') != std::string::npos &&
                strip(line.substr(0, line.find('='))) == "n") {
                if (n > 0) throw ParseError(lineno, "duplicate 'n ='");
                std::string v = strip(line.substr(line.find('=') + 1));
                n = std::atoi(v.c_str());
                if (n < 1 || n > 9) throw ParseError(lineno, "n must be between 1 and 9");
                dtable.assign(n, Form());
                dseen.assign(n, false);
                continue;
            }
            if (n < 1) throw ParseError(lineno, "expected 'n = <dim>' first");
            if (line == "complex {") {
                if (coframe) throw ParseError(lineno, "duplicate structure block");
                state = BlockState::Complex;
                block_open_line = lineno;
                continue;
            }
            if (line == "real {") {
                if (coframe) throw ParseError(lineno, "duplicate structure block");
                state = BlockState::Real;
                block_open_line = lineno;
                continue;
            }
            if (line == "metric {") {
                if (have_metric) throw ParseError(lineno, "duplicate metric block");
                state = BlockState::Metric;
                block_open_line = lineno;
                continue;
            }
            if (line.rfind("volume", 0) == 0) {
                auto eq = line.find('=');
                if (eq == std::string::npos) throw ParseError(lineno, "expected 'volume = <form>'");
                try {
                    volume = parse_form_expr(strip(line.substr(eq + 1)), n);
                } catch (const std::exception& e) {
                    throw ParseError(lineno, e.what());
                }
                continue;
            }
            throw ParseError(lineno, "unrecognised line '" + line + "'");
        }

        if (line == "}") {
            if (state == BlockState::Complex) {
                for (int i = 0; i < n; ++i)
                    if (!dseen[i])
                        throw ParseError(block_open_line,
                                         "missing structure equation for f" + std::to_string(i + 1));
                std::vector<std::string> names;
                for (int i = 1; i <= n; ++i) names.push_back("f" + std::to_string(i));
                try {
                    coframe.emplace(n, std::move(names), dtable);
                } catch (const std::exception& e) {
                    throw ParseError(block_open_line, e.what());
                }
            } else if (state == BlockState::Real) {
                try {
                    coframe.emplace(real_to_complex(real_blk, n, block_open_line));
                } catch (const ParseError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw ParseError(block_open_line, e.what());
                }
            } else if (state == BlockState::Metric) {
                have_metric = true;
            }
            state = BlockState::None;
            continue;
        }

        switch (state) {
            case BlockState::Complex: {
                if (line.rfind("d ", 0) != 0)
                    throw ParseError(lineno, "expected 'd f<i> = <form>'");
                auto eq = line.find('=');
                if (eq == std::string::npos) throw ParseError(lineno, "missing '='");
                std::string gen = strip(line.substr(2, eq - 2));
                if (gen.size() < 2 || gen[0] != 'f')
                    throw ParseError(lineno, "generators are named f1..f" + std::to_string(n));
                int idx = std::atoi(gen.c_str() + 1);
                if (idx < 1 || idx > n) throw ParseError(lineno, "generator index out of range");
                if (dseen[idx - 1]) throw ParseError(lineno, "duplicate equation for " + gen);
                try {
                    dtable[idx - 1] = parse_form_expr(strip(line.substr(eq + 1)), n);
                } catch (const std::exception& e) {
                    throw ParseError(lineno, e.what());
                }
                dseen[idx - 1] = true;
                break;
            }
            case BlockState::Real: {
                if (line.rfind("basis", 0) == 0) {
                    std::istringstream ls(line.substr(5));
                    std::string w;
                    while (ls >> w) real_blk.basis.push_back(w);
                    if (static_cast<int>(real_blk.basis.size()) != 2 * n)
                        throw ParseError(lineno, "real basis must list 2n names");
                    break;
                }
                if (line[0] == '[') {
                    auto close = line.find(']');
                    auto comma = line.find(',');
                    auto eq = line.find('=');
                    if (close == std::string::npos || comma == std::string::npos ||
                        eq == std::string::npos || comma > close || eq < close)
                        throw ParseError(lineno, "expected '[a,b] = <combination>'");
                    std::string na = strip(line.substr(1, comma - 1));
                    std::string nb = strip(line.substr(comma + 1, close - comma - 1));
                    int a = find_name(real_blk.basis, na, lineno);
                    int b = find_name(real_blk.basis, nb, lineno);
                    if (a == b) throw ParseError(lineno, "bracket of an element with itself");
                    auto rhs = parse_bracket_rhs(strip(line.substr(eq + 1)), real_blk, lineno);
                    if (a > b) {
                        std::swap(a, b);
                        for (Scalar& s : rhs) s = -s;
                    }
                    if (real_blk.brackets.count({a, b}))
                        throw ParseError(lineno, "duplicate bracket");
                    real_blk.brackets[{a, b}] = std::move(rhs);
                    break;
                }
                if (line.rfind("J ", 0) == 0) {
                    auto eq = line.find('=');
                    if (eq == std::string::npos) throw ParseError(lineno, "expected 'J a = b'");
                    std::string va = strip(line.substr(2, eq - 2));
                    std::string vb = strip(line.substr(eq + 1));
                    real_blk.j_pairs.emplace_back(find_name(real_blk.basis, va, lineno),
                                                  find_name(real_blk.basis, vb, lineno));
                    break;
                }
                throw ParseError(lineno, "unrecognised real-block line '" + line + "'");
            }
            case BlockState::Metric: {
                if (line.rfind("w ", 0) != 0)
                    throw ParseError(lineno, "expected 'w <j> <k> = <scalar>'");
                std::istringstream ls(line.substr(2));
                int j = 0, k = 0;
                char eq = 0;
                std::string val;
                if (!(ls >> j >> k >> eq) || eq != '=' || !std::getline(ls, val))
                    throw ParseError(lineno, "expected 'w <j> <k> = <scalar>'");
                if (j < 1 || j > n || k < 1 || k > n)
                    throw ParseError(lineno, "metric index out of range");
                Scalar v;
                try {
                    v = Scalar::parse(strip(val));
                } catch (const std::exception& e) {
                    throw ParseError(lineno, e.what());
                }
                auto key = std::make_pair(j - 1, k - 1);
                if (metric_entries.count(key)) throw ParseError(lineno, "duplicate metric entry");
                metric_entries[key] = v;
                break;
            }
            case BlockState::None:
                break;
        }
    }
    if (state != BlockState::None) throw ParseError(block_open_line, "unclosed block");
    if (!coframe) throw ParseError(lineno, "missing structure block");
    if (!have_metric) throw ParseError(lineno, "missing metric block");

    Matrix h(n, n);
    for (const auto& [jk, v] : metric_entries) {
        auto mirror = std::make_pair(jk.second, jk.first);
        if (jk.first != jk.second && metric_entries.count(mirror)) {
            if (metric_entries.at(mirror) != v.conj())
                throw ParseError(0, "metric entries are not Hermitian-consistent");
        }
        h.set(jk.first, jk.second, v);
        if (jk.first != jk.second && !metric_entries.count(mirror))
            h.set(jk.second, jk.first, v.conj());
    }

    try {
        HermitianMetric metric(n, std::move(h));
        return ManifoldInput{name, std::move(*coframe), std::move(metric), std::move(volume)};
    } catch (const std::exception& e) {
        throw ParseError(0, std::string("metric: ") + e.what());
    }
}

std::string print_manifold(const ManifoldInput& input) {
    const Coframe& cf = input.coframe;
    int n = cf.dim();
    std::string out = "n = " + std::to_string(n) + "\n";
    out += "complex {\n";
    for (int i = 1; i <= n; ++i)
        out += "  d f" + std::to_string(i) + " = " + print_form_expr(cf.d_generator(i)) + "\n";
    out += "}\n";
    out += "metric {\n";
    const Matrix& h = input.metric.coefficients();
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            Scalar v = h.at(j, k);
            if (v.is_zero()) continue;
            out += "  w " + std::to_string(j + 1) + " " + std::to_string(k + 1) + " = " +
                   v.str() + "\n";
        }
    out += "}\n";
    if (input.volume) out += "volume = " + print_form_expr(*input.volume) + "\n";
    return out;
}

const std::map<std::string, std::string>& builtin_sources() {
    static const std::map<std::string, std::string> sources = {
        {"torus3",
         "# complex 3-torus: abelian, every structure equation vanishes\n"
         "n = 3\n"
         "complex {\n"
         "  d f1 = 0\n"
         "  d f2 = 0\n"
         "  d f3 = 0\n"
         "}\n"
         "metric {\n"
         "  w 1 1 = 1/2\n"
         "  w 2 2 = 1/2\n"
         "  w 3 3 = 1/2\n"
         "}\n"
         "volume = 1*(123|)\n"},
        {"iwasawa",
         "# Iwasawa manifold: complex Heisenberg structure equations\n"
         "n = 3\n"
         "complex {\n"
         "  d f1 = 0\n"
         "  d f2 = 0\n"
         "  d f3 = -1*(12|)\n"
         "}\n"
         "metric {\n"
         "  w 1 1 = 1/2\n"
         "  w 2 2 = 1/2\n"
         "  w 3 3 = 1/2\n"
         "}\n"
         "volume = 1*(123|)\n"},
        {"s3xs3-calabi-eckmann",
         "# S^3 x S^3 with the Calabi-Eckmann complex structure, presented by\n"
         "# two copies of su(2) and the pairing J e1 = e2, J f1 = f2, J e3 = f3\n"
         "n = 3\n"
         "real {\n"
         "  basis e1 e2 e3 f1 f2 f3\n"
         "  [e1,e2] = 2*e3\n"
         "  [e1,e3] = -2*e2\n"
         "  [e2,e3] = 2*e1\n"
         "  [f1,f2] = 2*f3\n"
         "  [f1,f3] = -2*f2\n"
         "  [f2,f3] = 2*f1\n"
         "  J e1 = e2\n"
         "  J f1 = f2\n"
         "  J e3 = f3\n"
         "}\n"
         "metric {\n"
         "  w 1 1 = 1/2\n"
         "  w 2 2 = 1/2\n"
         "  w 3 3 = 1/2\n"
         "}\n"},
    };
    return sources;
}

ManifoldInput load_manifold(const std::string& spec, const std::string& stdin_text) {
    const auto& builtins = builtin_sources();
    auto it = builtins.find(spec);
    if (it != builtins.end()) return parse_manifold(it->second, spec);
    if (spec == "-") return parse_manifold(stdin_text, "stdin");
    std::ifstream file(spec);
    if (!file) throw std::runtime_error("cannot open manifold file '" + spec + "'");
    std::ostringstream ss;
    ss << file.rdbuf();
    return parse_manifold(ss.str(), spec);
}

}  // namespace skt
