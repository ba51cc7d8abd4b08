#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nullkit/blackbox.hpp"
#include "nullkit/poly.hpp"

namespace nullkit {

struct ParseError : Error {
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line;
    int col;
};

/// Parsed problem file. Explicit inputs carry f-stanzas; composed inputs
/// carry inner/outer stanzas instead (never both). The optional g stanza
/// is the radical-membership query.
struct ParsedInput {
    FieldCtxPtr field;
    std::vector<MultiPoly> f_polys;  // in x-variables
    std::optional<MultiPoly> query;  // g, in x-variables
    std::vector<MultiPoly> inner;    // in x-variables
    std::vector<MultiPoly> outer;    // in z-variables, arity = inner.size()
    int n = 0;                       // x-variable count

    bool composed() const { return !inner.empty(); }
    /// Oracle view: wraps f-stanzas or composes outer(inner).
    BlackboxSystem boxes() const;
    /// Explicit view; composed inputs are expanded.
    PolySystem system() const;
};

/// Grammar:
///   field p=<prime> [min_order=<int>]
///   f: <poly>        (repeatable)        g: <poly>       (optional)
///   inner: <poly>    (repeatable)        outer: <poly in z-vars> (repeatable)
/// Polynomials are sums of terms like 3*x1^2*x2; coefficients are residues
/// (or [c0,c1,...] coefficient vectors over an extension); '#' starts a
/// comment. Whitespace-insensitive.
ParsedInput parse_input_text(std::string_view text, const std::string& origin = "<input>");
ParsedInput parse_input_file(const std::string& path);

/// Standalone polynomial parser against a fixed field and variable count.
MultiPoly parse_poly(std::string_view text, const FieldCtxPtr& ctx, int n, char var_prefix = 'x');

}  // namespace nullkit
