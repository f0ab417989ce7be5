#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "strsat/term.hpp"

namespace strsat {

struct Token {
    enum class Kind { LParen, RParen, Symbol, String, Numeral, Keyword };
    Kind kind = Kind::Symbol;
    std::string text;  // symbol name (bars removed), numeral digits, keyword
    Word literal;      // decoded code points of a string literal
    int line = 1;
    int column = 1;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, Sort, Unsupported };

    ParseError(Kind kind, const std::string& message, int line = 0, int column = 0);

    Kind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    Kind kind_;
    int line_, column_;
};

enum class Sort { Bool, Int, String, RegLan };

std::string sort_name(Sort s);

struct Command {
    enum class Kind { DeclareFun, Assert, CheckSat, GetModel, SetLogic, SetInfo, SetOption, Exit };
    Kind kind = Kind::CheckSat;
    std::string name;  // declared symbol, logic name, option/info keyword
    Sort sort = Sort::String;
    FormulaPtr formula;  // Assert
};

struct Script {
    std::vector<Command> commands;

    std::vector<std::pair<std::string, Sort>> declarations() const;
    std::vector<FormulaPtr> assertions() const;
};

std::vector<Token> tokenize(const std::string& text);

/// Throws ParseError. `define-fun` of arity 0 is expanded in place and
/// `let` bindings are substituted, so neither appears in the result.
Script parse_script(const std::vector<Token>& tokens);

Script parse_script_text(const std::string& text);

std::string print_script(const Script& s);

/// Number of check-sat commands, found without full parsing (used to answer
/// `unknown` for scripts that use unsupported constructs).
std::size_t count_check_sat(const std::string& text);

}  // namespace strsat
