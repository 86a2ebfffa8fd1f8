#include "fint/io.hpp"

#include <cctype>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "fint/small_divisor.hpp"

namespace fint {

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

std::string EigenvalueSpec::str() const {
    if (is_zeta())
        return std::string(zeta_sign < 0 ? "-" : "") + "zeta(K=" +
               std::to_string(zeta_k) + ")";
    return value.str();
}

namespace {

struct Token {
    std::string text;
    int column = 0;
};

struct ContentLine {
    int no = 0;
    std::vector<Token> toks;
};

std::vector<ContentLine> content_lines(const std::string& text) {
    std::vector<ContentLine> out;
    int no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(
            pos, eol == std::string::npos ? std::string::npos : eol - pos);
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        ContentLine cl;
        cl.no = no;
        for (std::size_t i = 0; i < line.size();) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() &&
                   !std::isspace(static_cast<unsigned char>(line[j])))
                ++j;
            cl.toks.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
            i = j;
        }
        if (!cl.toks.empty()) out.push_back(std::move(cl));
        if (eol == std::string::npos) break;
        pos = eol + 1;
    }
    return out;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

int parse_int(const Token& t, int line) {
    std::string body = t.text;
    if (!body.empty() && body[0] == '-') body.erase(0, 1);
    if (!all_digits(body))
        throw SyntaxError("expected an integer, got '" + t.text + "'", line,
                          t.column);
    try {
        return std::stoi(t.text);
    } catch (const std::exception&) {
        throw SyntaxError("integer out of range '" + t.text + "'", line,
                          t.column);
    }
}

Rational parse_rational(const Token& t, int line) {
    try {
        return Rational::parse(t.text);
    } catch (const Error&) {
        throw SyntaxError("bad rational '" + t.text + "'", line, t.column);
    }
}

EigenvalueSpec parse_eigenvalue(const Token& t, int line) {
    std::string body = t.text;
    int sign = 1;
    if (!body.empty() && body[0] == '-') {
        sign = -1;
        body.erase(0, 1);
    }
    if (body.rfind("zeta(K=", 0) == 0) {
        if (body.back() != ')')
            throw SyntaxError("malformed zeta token '" + t.text + "'", line,
                              t.column);
        std::string k = body.substr(7, body.size() - 8);
        if (!all_digits(k) || k.size() > 3)
            throw SyntaxError("malformed zeta token '" + t.text + "'", line,
                              t.column);
        return EigenvalueSpec(sign, std::stoi(k));
    }
    return EigenvalueSpec(parse_rational(t, line));
}

// Block token: eigenvalue with one ":1" per chain step, e.g. -1:1 for a
// size-two block.
JordanBlock parse_block(const Token& t, int line) {
    JordanBlock b;
    std::vector<std::string> pieces;
    std::size_t start = 0;
    // a zeta token contains no ':', so a plain split is safe
    for (std::size_t i = 0; i <= t.text.size(); ++i)
        if (i == t.text.size() || t.text[i] == ':') {
            pieces.push_back(t.text.substr(start, i - start));
            start = i + 1;
        }
    b.ev = parse_eigenvalue({pieces[0], t.column}, line);
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i] != "1")
            throw SyntaxError("malformed chain marker in '" + t.text + "'",
                              line, t.column);
        ++b.size;
    }
    return b;
}

SystemTerm parse_term(const std::vector<Token>& toks, std::size_t lo,
                      std::size_t hi, int n, int line) {
    SystemTerm term;
    term.coeff = parse_rational(toks[lo], line);
    term.ex = Exponent(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const std::string& s = toks[i].text;
        auto bad = [&]() -> SyntaxError {
            return SyntaxError("expected a factor xj^e, got '" + s + "'", line,
                               toks[i].column);
        };
        auto caret = s.find('^');
        if (s.size() < 4 || s[0] != 'x' || caret == std::string::npos)
            throw bad();
        std::string var = s.substr(1, caret - 1);
        std::string exp = s.substr(caret + 1);
        if (!all_digits(var) || !all_digits(exp)) throw bad();
        if (var.size() > 4 || exp.size() > 4) throw bad();
        int j = std::stoi(var);
        if (j < 1 || j > n)
            throw SyntaxError("variable x" + var + " out of range", line,
                              toks[i].column);
        if (seen[static_cast<std::size_t>(j - 1)])
            throw SyntaxError("variable x" + var + " listed twice", line,
                              toks[i].column);
        seen[static_cast<std::size_t>(j - 1)] = true;
        term.ex[static_cast<std::size_t>(j - 1)] =
            static_cast<std::uint32_t>(std::stoi(exp));
    }
    if (term.ex.degree() < 2)
        throw ValuationError("term of degree below two at line " +
                             std::to_string(line));
    return term;
}

// Field construction needs the setting's spectrum shape: a simple zero
// eigenvalue on x1, nonzero eigenvalues on the tail.  Files with other
// spectra still parse (the nonintegrability scan reads them), they just
// cannot be turned into a VectorField.
template <class K, class EvFn>
VectorField<K> build_field(const SystemFile& sf, EvFn ev) {
    if (sf.blocks.empty() || !sf.blocks[0].ev.is_zero() ||
        sf.blocks[0].size != 1)
        throw NotJordanForm("field needs a leading simple zero eigenvalue");
    for (std::size_t b = 1; b < sf.blocks.size(); ++b)
        if (sf.blocks[b].ev.is_zero())
            throw NotJordanForm("tail block with zero eigenvalue");
    std::vector<K> diag;
    std::vector<std::size_t> chains;
    for (std::size_t b = 1; b < sf.blocks.size(); ++b) {
        for (int s = 0; s < sf.blocks[b].size; ++s) {
            if (s > 0) chains.push_back(diag.size() - 1);
            diag.push_back(ev(sf.blocks[b].ev));
        }
    }
    JordanForm<K> B(std::move(diag));
    for (auto i : chains) B.set_chain(i);
    std::vector<TruncSeries<K>> f;
    for (int i = 0; i < sf.n; ++i) {
        TruncSeries<K> fi(sf.n, sf.trunc);
        for (const auto& t : sf.f[static_cast<std::size_t>(i)]) {
            if (t.ex.degree() > sf.trunc) continue;  // working truncation
            fi.add_term(t.ex, ScalarOps<K>::from_rational(t.coeff));
        }
        f.push_back(std::move(fi));
    }
    VectorField<K> vf(sf.n, B, std::move(f));
    vf.straightened = vf.vanishes_on_axis();
    return vf;
}

}  // namespace

SystemFile parse_system(const std::string& text) {
    auto lines = content_lines(text);
    std::size_t cur = 0;
    int last_no = lines.empty() ? 1 : lines.back().no + 1;

    auto next = [&](const std::string& what) -> const ContentLine& {
        if (cur >= lines.size())
            throw SyntaxError("expected " + what, last_no, 1);
        return lines[cur++];
    };

    {
        const auto& l = next("'system' header");
        if (l.toks.size() != 1 || l.toks[0].text != "system")
            throw SyntaxError("expected 'system' header", l.no,
                              l.toks[0].column);
    }

    SystemFile sf;
    {
        const auto& l = next("'vars' line");
        if (l.toks.size() != 2 || l.toks[0].text != "vars")
            throw SyntaxError("expected 'vars <n>'", l.no, l.toks[0].column);
        sf.n = parse_int(l.toks[1], l.no);
        if (sf.n < 2)
            throw SyntaxError("need at least two variables", l.no,
                              l.toks[1].column);
    }
    {
        const auto& l = next("'lambda' line");
        if (l.toks.empty() || l.toks[0].text != "lambda")
            throw SyntaxError("expected 'lambda' line", l.no,
                              l.toks[0].column);
        if (static_cast<int>(l.toks.size()) != sf.n + 1)
            throw SyntaxError("lambda needs " + std::to_string(sf.n) +
                                  " eigenvalues",
                              l.no, l.toks[0].column);
        for (int i = 1; i <= sf.n; ++i)
            sf.lambda.push_back(
                parse_eigenvalue(l.toks[static_cast<std::size_t>(i)], l.no));
    }
    {
        const auto& l = next("'jordan' line");
        if (l.toks.empty() || l.toks[0].text != "jordan")
            throw SyntaxError("expected 'jordan' line", l.no,
                              l.toks[0].column);
        // '|' separates blocks with or without surrounding spaces
        std::vector<Token> toks;
        for (std::size_t i = 1; i < l.toks.size(); ++i) {
            const Token& t = l.toks[i];
            std::size_t start = 0;
            for (std::size_t j = 0; j <= t.text.size(); ++j) {
                if (j < t.text.size() && t.text[j] != '|') continue;
                if (j > start)
                    toks.push_back({t.text.substr(start, j - start),
                                    t.column + static_cast<int>(start)});
                if (j < t.text.size())
                    toks.push_back({"|", t.column + static_cast<int>(j)});
                start = j + 1;
            }
        }
        bool want_block = true;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (toks[i].text == "|") {
                if (want_block)
                    throw SyntaxError("misplaced '|'", l.no, toks[i].column);
                want_block = true;
                continue;
            }
            if (!want_block)
                throw SyntaxError("blocks must be separated by '|'", l.no,
                                  toks[i].column);
            sf.blocks.push_back(parse_block(toks[i], l.no));
            want_block = false;
        }
        if (sf.blocks.empty() || want_block)
            throw SyntaxError("jordan line needs at least one block", l.no,
                              l.toks[0].column);
    }
    for (int i = 1; i <= sf.n; ++i) {
        const auto& l = next("'f" + std::to_string(i) + "' line");
        std::string name = "f" + std::to_string(i);
        if (l.toks.size() < 3 || l.toks[0].text != name ||
            l.toks[1].text != "=")
            throw SyntaxError("expected '" + name + " = ...'", l.no,
                              l.toks[0].column);
        std::vector<SystemTerm> terms;
        if (l.toks.size() == 3 && l.toks[2].text == "0") {
            sf.f.push_back(std::move(terms));
            continue;
        }
        std::size_t lo = 2;
        for (std::size_t j = 2; j <= l.toks.size(); ++j) {
            if (j < l.toks.size() && l.toks[j].text != "+") continue;
            if (j == lo)
                throw SyntaxError("empty term", l.no,
                                  j < l.toks.size() ? l.toks[j].column : 1);
            terms.push_back(parse_term(l.toks, lo, j, sf.n, l.no));
            lo = j + 1;
        }
        sf.f.push_back(std::move(terms));
    }
    if (cur < lines.size()) {
        const auto& l = lines[cur++];
        if (l.toks[0].text != "options")
            throw SyntaxError("unexpected line", l.no, l.toks[0].column);
        sf.has_options = true;
        for (std::size_t i = 1; i < l.toks.size(); ++i) {
            const std::string& s = l.toks[i].text;
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw SyntaxError("expected key=value, got '" + s + "'", l.no,
                                  l.toks[i].column);
            std::string key = s.substr(0, eq);
            Token val{s.substr(eq + 1), l.toks[i].column};
            if (key == "backend") {
                if (val.text != "auto" && val.text != "rational" &&
                    val.text != "ball")
                    throw SyntaxError("unknown backend '" + val.text + "'",
                                      l.no, val.column);
                sf.backend = val.text;
            } else if (key == "N") {
                sf.trunc = parse_int(val, l.no);
                if (sf.trunc < 2)
                    throw SyntaxError("N must be at least 2", l.no,
                                      val.column);
            } else if (key == "precision") {
                sf.precision = parse_int(val, l.no);
                if (sf.precision < 64)
                    throw SyntaxError("precision must be at least 64 bits",
                                      l.no, val.column);
            } else {
                throw SyntaxError("unknown option '" + key + "'", l.no,
                                  l.toks[i].column);
            }
        }
    }
    if (cur < lines.size())
        throw SyntaxError("unexpected line", lines[cur].no,
                          lines[cur].toks[0].column);

    int total = 0;
    for (const auto& b : sf.blocks) total += b.size;
    if (total != sf.n)
        throw NotJordanForm("jordan blocks cover " + std::to_string(total) +
                            " variables, expected " + std::to_string(sf.n));
    std::size_t at = 0;
    for (const auto& b : sf.blocks)
        for (int s = 0; s < b.size; ++s, ++at)
            if (!(sf.lambda[at] == b.ev))
                throw NotJordanForm(
                    "eigenvalue list does not match the jordan blocks");
    return sf;
}

std::string serialize(const SystemFile& sf) {
    std::ostringstream os;
    os << "system\n";
    os << "vars " << sf.n << "\n";
    os << "lambda";
    for (const auto& ev : sf.lambda) os << " " << ev.str();
    os << "\n";
    os << "jordan";
    for (std::size_t b = 0; b < sf.blocks.size(); ++b) {
        if (b) os << " |";
        os << " " << sf.blocks[b].ev.str();
        for (int s = 1; s < sf.blocks[b].size; ++s) os << ":1";
    }
    os << "\n";
    for (int i = 0; i < sf.n; ++i) {
        os << "f" << i + 1 << " =";
        const auto& terms = sf.f[static_cast<std::size_t>(i)];
        if (terms.empty()) {
            os << " 0\n";
            continue;
        }
        for (std::size_t t = 0; t < terms.size(); ++t) {
            if (t) os << " +";
            os << " " << terms[t].coeff.str();
            for (std::size_t j = 0; j < terms[t].ex.size(); ++j)
                if (terms[t].ex[j])
                    os << " x" << j + 1 << "^" << terms[t].ex[j];
        }
        os << "\n";
    }
    if (sf.has_options)
        os << "options backend=" << sf.backend << " N=" << sf.trunc
           << " precision=" << sf.precision << "\n";
    return os.str();
}

std::string chosen_backend(const SystemFile& sf) {
    if (sf.backend != "auto") return sf.backend;
    for (const auto& ev : sf.lambda)
        if (ev.is_zeta()) return "ball";
    return "rational";
}

VectorField<Rational> field_rational(const SystemFile& sf) {
    return build_field<Rational>(sf, [](const EigenvalueSpec& ev) {
        if (ev.is_zeta())
            throw Error("certified eigenvalue needs the ball backend");
        return ev.value;
    });
}

VectorField<Ball> field_ball(const SystemFile& sf) {
    return build_field<Ball>(sf, [](const EigenvalueSpec& ev) {
        if (!ev.is_zeta()) return Ball::from_rational(ev.value);
        Ball z = liouville_zeta(ev.zeta_k).ball();
        return ev.zeta_sign < 0 ? -z : z;
    });
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(std::string_view s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(s)));
    return buf;
}

std::string Report::result_section() const {
    std::string out = "command = " + command + "\n";
    out += "input = " + input_digest + "\n";
    for (const auto& l : lines) out += l + "\n";
    return out;
}

std::string Report::str() const {
    std::string out = result_section();
    if (time_ms >= 0) out += "time_ms = " + std::to_string(time_ms) + "\n";
    return out;
}

}  // namespace fint
