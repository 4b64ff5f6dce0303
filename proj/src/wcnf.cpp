#include "fpsmax/wcnf.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace fpsmax {

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::MalformedHeader: return "malformed header";
        case ParseErrorKind::MalformedClause: return "malformed clause";
        case ParseErrorKind::LiteralZeroInBody: return "literal 0 inside clause body";
        case ParseErrorKind::VarOutOfRange: return "variable index out of range";
        case ParseErrorKind::NonPositiveWeight: return "soft weight must be positive";
        case ParseErrorKind::MissingTerminator: return "missing clause terminator 0";
        case ParseErrorKind::WeightAboveTop: return "weight greater than top";
        case ParseErrorKind::WeightOverflow: return "weight does not fit in 64 bits";
    }
    return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + fpsmax::to_string(kind) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

namespace {

class LineTokens {
public:
    explicit LineTokens(std::string_view line) : rest_(line) {}

    std::optional<std::string_view> next() {
        std::size_t b = rest_.find_first_not_of(" \t\r\f\v");
        if (b == std::string_view::npos) {
            rest_ = {};
            return std::nullopt;
        }
        rest_.remove_prefix(b);
        std::size_t e = rest_.find_first_of(" \t\r\f\v");
        std::string_view tok = rest_.substr(0, e);
        rest_.remove_prefix(e == std::string_view::npos ? rest_.size() : e);
        return tok;
    }

private:
    std::string_view rest_;
};

template <typename Int>
std::optional<Int> to_int(std::string_view tok) {
    Int v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return v;
}

struct Header {
    Var num_vars = 0;
    std::optional<Weight> top;
};

Header parse_header(std::string_view line, std::size_t lineno) {
    LineTokens toks(line);
    auto fail = [&](const char* why) { throw ParseError(ParseErrorKind::MalformedHeader, lineno, why); };
    if (toks.next() != "p") fail("expected 'p'");
    if (toks.next() != "wcnf") fail("expected 'wcnf'");
    Header h;
    auto nv = toks.next();
    auto nc = toks.next();
    if (!nv || !nc) fail("expected variable and clause counts");
    auto nv_value = to_int<std::uint32_t>(*nv);
    if (!nv_value || !to_int<std::uint64_t>(*nc)) fail("counts must be nonnegative integers");
    h.num_vars = *nv_value;
    if (auto top = toks.next()) {
        auto top_value = to_int<Weight>(*top);
        if (!top_value || *top_value == 0) fail("top must be a positive integer");
        h.top = top_value;
    }
    if (toks.next()) fail("trailing tokens");
    return h;
}

}  // namespace

Formula parse_wcnf(std::string_view text) {
    std::optional<Header> header;
    std::vector<Clause> clauses;
    Var max_var = 0;
    std::size_t lineno = 0;

    while (!text.empty()) {
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++lineno;

        std::size_t b = line.find_first_not_of(" \t\r\f\v");
        if (b == std::string_view::npos) continue;
        line.remove_prefix(b);
        if (line.front() == 'c') continue;
        if (line.front() == 'p') {
            if (header || !clauses.empty()) {
                throw ParseError(ParseErrorKind::MalformedHeader, lineno, "header must precede all clauses");
            }
            header = parse_header(line, lineno);
            continue;
        }

        LineTokens toks(line);
        std::string_view first = *toks.next();
        Clause clause;
        if (first == "h") {
            if (header) throw ParseError(ParseErrorKind::MalformedClause, lineno, "'h' clause in a headed file");
            clause.kind = ClauseKind::Hard;
        } else {
            if (first.front() == '-' || first == "0") {
                throw ParseError(ParseErrorKind::NonPositiveWeight, lineno, std::string(first));
            }
            auto w = to_int<Weight>(first);
            if (!w) {
                bool digits = first.find_first_not_of("+0123456789") == std::string_view::npos;
                throw ParseError(digits ? ParseErrorKind::WeightOverflow : ParseErrorKind::MalformedClause, lineno,
                                 std::string(first));
            }
            if (*w == 0) throw ParseError(ParseErrorKind::NonPositiveWeight, lineno, std::string(first));
            if (header && header->top) {
                if (*w > *header->top) {
                    throw ParseError(ParseErrorKind::WeightAboveTop, lineno,
                                     std::to_string(*w) + " > " + std::to_string(*header->top));
                }
                if (*w == *header->top) clause.kind = ClauseKind::Hard;
            }
            clause.weight = *w;
        }

        bool terminated = false;
        while (auto tok = toks.next()) {
            if (terminated) throw ParseError(ParseErrorKind::LiteralZeroInBody, lineno, "0 before end of clause");
            auto lit = to_int<std::int64_t>(*tok);
            if (!lit) throw ParseError(ParseErrorKind::MalformedClause, lineno, "bad literal '" + std::string(*tok) + "'");
            if (*lit == 0) {
                terminated = true;
                continue;
            }
            std::uint64_t mag = *lit < 0 ? 0 - static_cast<std::uint64_t>(*lit) : static_cast<std::uint64_t>(*lit);
            if (mag > UINT32_MAX || (header && mag > header->num_vars)) {
                throw ParseError(ParseErrorKind::VarOutOfRange, lineno, std::string(*tok));
            }
            clause.literals.push_back(Literal::from_dimacs(*lit));
            max_var = std::max(max_var, static_cast<Var>(mag));
        }
        if (!terminated) throw ParseError(ParseErrorKind::MissingTerminator, lineno, "");
        clauses.push_back(std::move(clause));
    }

    try {
        return Formula(header ? header->num_vars : max_var, std::move(clauses));
    } catch (const FormulaError& e) {
        throw ParseError(ParseErrorKind::WeightOverflow, lineno, e.what());
    }
}

Formula load_wcnf(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_wcnf(buf.str());
}

void write_wcnf(const Formula& f, std::ostream& out, WcnfDialect dialect) {
    const bool legacy = dialect == WcnfDialect::Legacy;
    Weight top = 0;
    if (legacy) {
        if (f.total_soft_weight() == UINT64_MAX) throw FormulaError("no representable top weight");
        top = f.total_soft_weight() + 1;
        std::size_t n = f.num_clauses() + f.empty_hard_clauses() + (f.cost_offset() > 0 ? 1 : 0);
        out << "p wcnf " << f.num_vars() << ' ' << n << ' ' << top << '\n';
    }
    auto hard_tag = [&]() -> std::string { return legacy ? std::to_string(top) : "h"; };
    for (std::size_t i = 0; i < f.empty_hard_clauses(); ++i) out << hard_tag() << " 0\n";
    if (f.cost_offset() > 0) out << f.cost_offset() << " 0\n";
    for (const Clause& c : f.clauses()) {
        if (c.is_hard()) {
            out << hard_tag();
        } else {
            out << c.weight;
        }
        for (const Literal& l : c.literals) out << ' ' << l.to_dimacs();
        out << " 0\n";
    }
}

std::string to_wcnf(const Formula& f, WcnfDialect dialect) {
    std::ostringstream out;
    write_wcnf(f, out, dialect);
    return out.str();
}

}  // namespace fpsmax
