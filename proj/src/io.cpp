#include "nullkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace nullkit {

namespace {

struct RawTerm {
    bool negative = false;
    std::uint64_t coef = 1;                  // residue form
    std::vector<std::uint64_t> coef_vec;     // bracket form, empty if unused
    std::vector<std::pair<int, std::uint32_t>> exps;  // (0-based index, exponent)
};

struct RawPoly {
    std::vector<RawTerm> terms;
    int max_index = 0;  // largest 1-based variable index seen
    int line = 0;
};

// character-level scanner for one polynomial
class PolyScanner {
public:
    PolyScanner(std::string_view text, int line, int col0, char var_prefix, std::uint64_t p)
        : text_(text), line_(line), col0_(col0), prefix_(var_prefix), p_(p) {}

    RawPoly run() {
        RawPoly out;
        out.line = line_;
        skip_ws();
        if (eof()) fail("expected a polynomial");
        while (!eof()) {
            RawTerm term;
            // sign chain
            bool saw_sign = false;
            while (!eof() && (peek() == '+' || peek() == '-')) {
                if (get() == '-') term.negative = !term.negative;
                saw_sign = true;
                skip_ws();
            }
            if (eof()) {
                if (saw_sign) fail("dangling sign at end of polynomial");
                break;
            }
            parse_term(term, out);
            out.terms.push_back(std::move(term));
            skip_ws();
            if (!eof() && peek() != '+' && peek() != '-')
                fail(std::string("unexpected character '") + peek() + "'");
        }
        return out;
    }

private:
    void parse_term(RawTerm& term, RawPoly& out) {
        bool saw_atom = false;
        bool want_atom = true;
        while (want_atom) {
            skip_ws();
            if (eof()) break;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::uint64_t v = read_uint();
                if (v >= p_) fail("coefficient out of range for the field modulus");
                term.coef = static_cast<std::uint64_t>(
                    (static_cast<unsigned __int128>(term.coef) * v) % p_);
                saw_atom = true;
            } else if (c == '[') {
                if (!term.coef_vec.empty()) fail("repeated coefficient vector in one term");
                term.coef_vec = read_bracket();
                saw_atom = true;
            } else if (c == prefix_) {
                get();
                if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                    fail("variable needs an index");
                std::uint64_t idx = read_uint();
                if (idx == 0) fail("unknown variable index 0 (variables are 1-based)");
                if (idx > 4096) fail("variable index too large");
                std::uint32_t exp = 1;
                if (!eof() && peek() == '^') {
                    get();
                    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                        fail("'^' needs an exponent");
                    std::uint64_t e = read_uint();
                    if (e > 1000000) fail("exponent too large");
                    exp = static_cast<std::uint32_t>(e);
                }
                term.exps.emplace_back(static_cast<int>(idx) - 1, exp);
                out.max_index = std::max(out.max_index, static_cast<int>(idx));
                saw_atom = true;
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            // another factor only after '*'
            skip_ws();
            if (!eof() && peek() == '*') {
                get();
                want_atom = true;
            } else {
                want_atom = false;
            }
        }
        if (!saw_atom) fail("expected a term");
    }

    std::uint64_t read_uint() {
        std::uint64_t v = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::uint64_t>(get() - '0');
            if (v > (std::uint64_t(1) << 62)) fail("number too large");
        }
        return v;
    }

    std::vector<std::uint64_t> read_bracket() {
        get();  // '['
        std::vector<std::uint64_t> out;
        while (true) {
            skip_ws();
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected a residue inside [...]");
            std::uint64_t v = read_uint();
            if (v >= p_) fail("coefficient out of range for the field modulus");
            out.push_back(v);
            skip_ws();
            if (eof()) fail("unterminated coefficient vector");
            char c = get();
            if (c == ']') return out;
            if (c != ',') fail("expected ',' or ']' in coefficient vector");
        }
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get() { return text_[pos_++]; }
    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col0_ + static_cast<int>(pos_) + 1);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int col0_;
    char prefix_;
    std::uint64_t p_;
};

MultiPoly build_poly(const RawPoly& raw, const FieldCtxPtr& ctx, int n) {
    MultiPoly p(ctx, n);
    for (const auto& t : raw.terms) {
        FieldElement c;
        if (!t.coef_vec.empty()) {
            if (t.coef_vec.size() != ctx->k())
                throw ParseError("coefficient vector length " + std::to_string(t.coef_vec.size()) +
                                     " does not match extension degree " + std::to_string(ctx->k()),
                                 raw.line, 1);
            c = ctx->from_coeffs(t.coef_vec) * ctx->from_residue(t.coef);
        } else {
            c = ctx->from_residue(t.coef);
        }
        if (t.negative) c = -c;
        Monomial m(n, 0);
        for (auto [idx, e] : t.exps) m[idx] += e;
        p.add_term(m, c);
    }
    return p;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

MultiPoly parse_poly(std::string_view text, const FieldCtxPtr& ctx, int n, char var_prefix) {
    PolyScanner sc(text, 1, 0, var_prefix, ctx->p());
    RawPoly raw = sc.run();
    if (raw.max_index > n)
        throw ParseError("unknown variable index " + std::to_string(raw.max_index) +
                             " (only " + std::to_string(n) + " variables)",
                         1, 1);
    return build_poly(raw, ctx, n);
}

ParsedInput parse_input_text(std::string_view text, const std::string& origin) {
    ParsedInput out;
    std::uint64_t p = 0;
    unsigned __int128 min_order = 2;
    bool have_field = false;

    std::vector<std::pair<RawPoly, char>> raw_f, raw_inner, raw_outer;  // poly + prefix tag
    std::optional<RawPoly> raw_g;

    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                                 : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::string_view body = trim(line);
        if (body.empty()) continue;

        if (!have_field) {
            // header: field p=<prime> [min_order=<int>]
            std::istringstream iss{std::string(body)};
            std::string kw;
            iss >> kw;
            if (kw != "field") throw ParseError("input must start with a 'field' header", lineno, 1);
            std::string item;
            while (iss >> item) {
                auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw ParseError("expected key=value in field header, got '" + item + "'",
                                     lineno, 1);
                std::string key = item.substr(0, eq);
                std::string val = item.substr(eq + 1);
                try {
                    if (key == "p") {
                        p = std::stoull(val);
                    } else if (key == "min_order") {
                        min_order = static_cast<unsigned __int128>(std::stoull(val));
                    } else {
                        throw ParseError("unknown field header key '" + key + "'", lineno, 1);
                    }
                } catch (const std::invalid_argument&) {
                    throw ParseError("bad number '" + val + "' in field header", lineno, 1);
                } catch (const std::out_of_range&) {
                    throw ParseError("number '" + val + "' out of range in field header", lineno, 1);
                }
            }
            if (p == 0) throw ParseError("field header needs p=<prime>", lineno, 1);
            if (!is_prime_u64(p)) throw ParseError("p = " + std::to_string(p) + " is not prime", lineno, 1);
            have_field = true;
            continue;
        }

        auto colon = body.find(':');
        if (colon == std::string_view::npos)
            throw ParseError("expected a '<tag>:' stanza", lineno, 1);
        std::string tag{trim(body.substr(0, colon))};
        std::string_view rest = body.substr(colon + 1);
        int col0 = static_cast<int>(body.data() - line.data() + colon + 1);
        char prefix = (tag == "outer") ? 'z' : 'x';
        PolyScanner sc(rest, lineno, col0, prefix, p);
        RawPoly raw = sc.run();
        if (tag == "f") {
            raw_f.emplace_back(std::move(raw), 'x');
        } else if (tag == "g") {
            if (raw_g) throw ParseError("repeated g stanza", lineno, 1);
            raw_g = std::move(raw);
        } else if (tag == "inner") {
            raw_inner.emplace_back(std::move(raw), 'x');
        } else if (tag == "outer") {
            raw_outer.emplace_back(std::move(raw), 'z');
        } else {
            throw ParseError("unknown stanza tag '" + tag + "'", lineno, 1);
        }
    }

    if (!have_field) throw ParseError("empty input: missing 'field' header in " + origin, 1, 1);
    if (!raw_f.empty() && (!raw_inner.empty() || !raw_outer.empty()))
        throw ParseError("mixing explicit f-stanzas with composed inner/outer stanzas", 1, 1);
    if (raw_inner.empty() != raw_outer.empty())
        throw ParseError("composed inputs need both inner and outer stanzas", 1, 1);
    if (raw_f.empty() && raw_inner.empty() && !raw_g)
        throw ParseError("no polynomials given", 1, 1);

    out.field = make_field(p, min_order);

    int n = 0;
    for (const auto& [raw, _] : raw_f) n = std::max(n, raw.max_index);
    for (const auto& [raw, _] : raw_inner) n = std::max(n, raw.max_index);
    if (raw_g) n = std::max(n, raw_g->max_index);
    if (n == 0) n = 1;  // constants still live somewhere
    out.n = n;

    const int r = static_cast<int>(raw_inner.size());
    for (const auto& [raw, _] : raw_outer) {
        if (raw.max_index > r)
            throw ParseError("outer polynomial uses z" + std::to_string(raw.max_index) +
                                 " but only " + std::to_string(r) + " inner polynomials exist",
                             raw.line, 1);
    }

    for (const auto& [raw, _] : raw_f) out.f_polys.push_back(build_poly(raw, out.field, n));
    for (const auto& [raw, _] : raw_inner) out.inner.push_back(build_poly(raw, out.field, n));
    for (const auto& [raw, _] : raw_outer) out.outer.push_back(build_poly(raw, out.field, r));
    if (raw_g) out.query = build_poly(*raw_g, out.field, n);
    return out;
}

ParsedInput parse_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_input_text(buf.str(), path);
}

BlackboxSystem ParsedInput::boxes() const {
    if (composed()) return bb_compose(outer, inner);
    return BlackboxSystem::from_polys(PolySystem(f_polys));
}

PolySystem ParsedInput::system() const {
    if (!composed()) return PolySystem(f_polys);
    std::vector<MultiPoly> expanded;
    expanded.reserve(outer.size());
    for (const auto& q : outer) expanded.push_back(compose(q, inner));
    return PolySystem(std::move(expanded));
}

}  // namespace nullkit
