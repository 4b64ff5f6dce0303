#ifndef FPSMAX_WCNF_HPP
#define FPSMAX_WCNF_HPP

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fpsmax/formula.hpp"

namespace fpsmax {

enum class WcnfDialect {
    Legacy,  // "p wcnf <nv> <nc> <top>", hard clauses carry weight top
    Mse2022  // no header, "h" marks hard clauses
};

enum class ParseErrorKind {
    MalformedHeader,
    MalformedClause,
    LiteralZeroInBody,
    VarOutOfRange,
    NonPositiveWeight,
    MissingTerminator,
    WeightAboveTop,
    WeightOverflow,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

    ParseErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

/// Parses either WCNF dialect; the dialect is detected from the presence of
/// a "p wcnf" header. One clause per line, terminated by 0.
Formula parse_wcnf(std::string_view text);
Formula load_wcnf(const std::string& path);

void write_wcnf(const Formula& f, std::ostream& out, WcnfDialect dialect = WcnfDialect::Mse2022);
std::string to_wcnf(const Formula& f, WcnfDialect dialect = WcnfDialect::Mse2022);

}  // namespace fpsmax

#endif
