#include "strsat/smtlib.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>

namespace strsat {

ParseError::ParseError(Kind kind, const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? message + " at " + std::to_string(line) + ":" + std::to_string(column) : message),
      kind_(kind),
      line_(line),
      column_(column) {}

std::string sort_name(Sort s) {
    switch (s) {
        case Sort::Bool: return "Bool";
        case Sort::Int: return "Int";
        case Sort::String: return "String";
        case Sort::RegLan: return "RegLan";
    }
    return "?";
}

std::vector<std::pair<std::string, Sort>> Script::declarations() const {
    std::vector<std::pair<std::string, Sort>> out;
    for (const auto& c : commands)
        if (c.kind == Command::Kind::DeclareFun) out.emplace_back(c.name, c.sort);
    return out;
}

std::vector<FormulaPtr> Script::assertions() const {
    std::vector<FormulaPtr> out;
    for (const auto& c : commands)
        if (c.kind == Command::Kind::Assert) out.push_back(c.formula);
    return out;
}

namespace {

bool symbol_char(unsigned char c) {
    static const std::string extra = "~!@$%^&*_-+=<>.?/";
    return std::isalnum(c) || extra.find(static_cast<char>(c)) != std::string::npos;
}

// Decodes one UTF-8 sequence starting at s[i]; advances i.
CodePoint utf8_next(const std::string& s, std::size_t& i, int line, int col) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    int extra = 0;
    CodePoint cp = 0;
    if (c < 0x80) {
        cp = c;
    } else if ((c >> 5) == 6) {
        cp = c & 0x1f;
        extra = 1;
    } else if ((c >> 4) == 14) {
        cp = c & 0x0f;
        extra = 2;
    } else if ((c >> 3) == 30) {
        cp = c & 0x07;
        extra = 3;
    } else {
        throw ParseError(ParseError::Kind::Syntax, "invalid UTF-8 byte", line, col);
    }
    ++i;
    for (int k = 0; k < extra; ++k, ++i) {
        if (i >= s.size() || (static_cast<unsigned char>(s[i]) >> 6) != 2)
            throw ParseError(ParseError::Kind::Syntax, "invalid UTF-8 sequence", line, col);
        cp = (cp << 6) | (static_cast<unsigned char>(s[i]) & 0x3f);
    }
    return cp;
}

bool is_hex(CodePoint c) { return c < 128 && std::isxdigit(static_cast<int>(c)); }

// Applies the \u escapes of the string theory to raw literal content.
Word unescape(const Word& raw) {
    Word out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 1 < raw.size() && raw[i + 1] == 'u') {
            if (i + 2 < raw.size() && raw[i + 2] == '{') {
                std::size_t j = i + 3;
                std::string hex;
                while (j < raw.size() && is_hex(raw[j]) && hex.size() < 5) hex += static_cast<char>(raw[j++]);
                if (!hex.empty() && j < raw.size() && raw[j] == '}') {
                    CodePoint cp = static_cast<CodePoint>(std::stoul(hex, nullptr, 16));
                    if (cp <= SymbolTable::kMaxCodePoint) {
                        out.push_back(cp);
                        i = j;
                        continue;
                    }
                }
            } else if (i + 5 < raw.size() && is_hex(raw[i + 2]) && is_hex(raw[i + 3]) && is_hex(raw[i + 4]) &&
                       is_hex(raw[i + 5])) {
                std::string hex{static_cast<char>(raw[i + 2]), static_cast<char>(raw[i + 3]),
                                static_cast<char>(raw[i + 4]), static_cast<char>(raw[i + 5])};
                out.push_back(static_cast<CodePoint>(std::stoul(hex, nullptr, 16)));
                i += 5;
                continue;
            }
        }
        out.push_back(raw[i]);
    }
    return out;
}

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n = 1) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            advance();
            continue;
        }
        if (c == ';') {
            while (i < text.size() && text[i] != '\n') advance();
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (c == '(' || c == ')') {
            t.kind = c == '(' ? Token::Kind::LParen : Token::Kind::RParen;
            t.text = std::string(1, static_cast<char>(c));
            advance();
        } else if (c == '"') {
            t.kind = Token::Kind::String;
            advance();
            Word raw;
            while (true) {
                if (i >= text.size()) throw ParseError(ParseError::Kind::Syntax, "unterminated string literal", t.line, t.column);
                if (text[i] == '"') {
                    if (i + 1 < text.size() && text[i + 1] == '"') {
                        raw.push_back('"');
                        advance(2);
                        continue;
                    }
                    advance();
                    break;
                }
                std::size_t before = i;
                CodePoint cp = utf8_next(text, i, line, col);
                std::size_t len = i - before;
                i = before;
                advance(len);
                raw.push_back(cp);
            }
            t.literal = unescape(raw);
            t.text.clear();
        } else if (c == '|') {
            t.kind = Token::Kind::Symbol;
            advance();
            while (true) {
                if (i >= text.size()) throw ParseError(ParseError::Kind::Syntax, "unterminated quoted symbol", t.line, t.column);
                if (text[i] == '|') {
                    advance();
                    break;
                }
                t.text += text[i];
                advance();
            }
        } else if (c == ':') {
            t.kind = Token::Kind::Keyword;
            advance();
            while (i < text.size() && symbol_char(static_cast<unsigned char>(text[i]))) {
                t.text += text[i];
                advance();
            }
        } else if (std::isdigit(c)) {
            t.kind = Token::Kind::Numeral;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                t.text += text[i];
                advance();
            }
            if (i < text.size() && text[i] == '.')
                throw ParseError(ParseError::Kind::Unsupported, "decimal literal", t.line, t.column);
        } else if (symbol_char(c)) {
            t.kind = Token::Kind::Symbol;
            while (i < text.size() && symbol_char(static_cast<unsigned char>(text[i]))) {
                t.text += text[i];
                advance();
            }
        } else {
            throw ParseError(ParseError::Kind::Syntax, std::string("illegal character '") + static_cast<char>(c) + "'",
                             line, col);
        }
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

struct SExpr {
    bool is_list = false;
    Token tok;
    std::vector<SExpr> items;
    int line = 0, column = 0;

    bool is_symbol(const char* s) const { return !is_list && tok.kind == Token::Kind::Symbol && tok.text == s; }
};

std::vector<SExpr> read_sexprs(const std::vector<Token>& toks) {
    std::vector<SExpr> top;
    std::vector<SExpr> stack;
    for (const auto& t : toks) {
        if (t.kind == Token::Kind::LParen) {
            SExpr e;
            e.is_list = true;
            e.line = t.line;
            e.column = t.column;
            stack.push_back(std::move(e));
        } else if (t.kind == Token::Kind::RParen) {
            if (stack.empty()) throw ParseError(ParseError::Kind::Syntax, "unbalanced ')'", t.line, t.column);
            SExpr e = std::move(stack.back());
            stack.pop_back();
            if (stack.empty())
                top.push_back(std::move(e));
            else
                stack.back().items.push_back(std::move(e));
        } else {
            SExpr e;
            e.tok = t;
            e.line = t.line;
            e.column = t.column;
            if (stack.empty())
                top.push_back(std::move(e));
            else
                stack.back().items.push_back(std::move(e));
        }
    }
    if (!stack.empty()) throw ParseError(ParseError::Kind::Syntax, "unbalanced '('", stack.back().line, stack.back().column);
    return top;
}

struct Value {
    Sort sort = Sort::Bool;
    StrPtr s;
    LinTerm i;
    FormulaPtr f;
    RegexPtr r;
};

Value of_str(StrPtr s) {
    Value v;
    v.sort = Sort::String;
    v.s = std::move(s);
    return v;
}
Value of_int(LinTerm i) {
    Value v;
    v.sort = Sort::Int;
    v.i = std::move(i);
    return v;
}
Value of_bool(FormulaPtr f) {
    Value v;
    v.sort = Sort::Bool;
    v.f = std::move(f);
    return v;
}
Value of_re(RegexPtr r) {
    Value v;
    v.sort = Sort::RegLan;
    v.r = std::move(r);
    return v;
}

const std::set<std::string>& unsupported_ops() {
    static const std::set<std::string> ops = {
        "str.replace_all", "str.replace_re", "str.replace_re_all", "str.replaceall", "str.to_int", "str.to.int",
        "str.from_int", "int.to.str", "str.is_digit", "str.to_code", "str.from_code", "str.<", "str.<=", "str.rev",
        "div", "mod", "abs", "re.replace", "str.to-int", "str.from-int", "seq.++", "push", "pop"};
    return ops;
}

class Interpreter {
public:
    Script run(const std::vector<SExpr>& cmds) {
        Script script;
        for (const auto& c : cmds) command(c, script);
        return script;
    }

private:
    [[noreturn]] void fail(ParseError::Kind k, const std::string& msg, const SExpr& at) const {
        throw ParseError(k, msg, at.line, at.column);
    }

    const std::string& head_symbol(const SExpr& e) const {
        if (!e.is_list || e.items.empty() || e.items[0].is_list || e.items[0].tok.kind != Token::Kind::Symbol)
            fail(ParseError::Kind::Syntax, "expected a command", e);
        return e.items[0].tok.text;
    }

    Sort parse_sort(const SExpr& e) const {
        if (e.is_symbol("String")) return Sort::String;
        if (e.is_symbol("Int")) return Sort::Int;
        if (e.is_symbol("Bool")) return Sort::Bool;
        if (e.is_symbol("RegLan")) return Sort::RegLan;
        fail(ParseError::Kind::Unsupported, "sort", e);
    }

    void command(const SExpr& c, Script& script) {
        const std::string& h = head_symbol(c);
        Command cmd;
        if (h == "declare-fun" || h == "declare-const") {
            bool is_fun = h == "declare-fun";
            if (c.items.size() != (is_fun ? 4u : 3u) || c.items[1].is_list)
                fail(ParseError::Kind::Syntax, "malformed " + h, c);
            if (is_fun && (!c.items[2].is_list || !c.items[2].items.empty()))
                fail(ParseError::Kind::Unsupported, "declare-fun with arguments", c);
            cmd.kind = Command::Kind::DeclareFun;
            cmd.name = c.items[1].tok.text;
            cmd.sort = parse_sort(c.items.back());
            if (cmd.sort == Sort::RegLan) fail(ParseError::Kind::Unsupported, "RegLan constants", c);
            if (declared_.count(cmd.name) || macros_.count(cmd.name))
                fail(ParseError::Kind::Sort, "symbol declared twice: " + cmd.name, c);
            declared_[cmd.name] = cmd.sort;
            script.commands.push_back(cmd);
        } else if (h == "define-fun") {
            if (c.items.size() != 5 || c.items[1].is_list) fail(ParseError::Kind::Syntax, "malformed define-fun", c);
            if (!c.items[2].is_list || !c.items[2].items.empty())
                fail(ParseError::Kind::Unsupported, "define-fun with arguments", c);
            Sort s = parse_sort(c.items[3]);
            Value v = term(c.items[4]);
            if (v.sort != s) fail(ParseError::Kind::Sort, "define-fun body has the wrong sort", c);
            macros_[c.items[1].tok.text] = v;
        } else if (h == "assert") {
            if (c.items.size() != 2) fail(ParseError::Kind::Syntax, "malformed assert", c);
            Value v = term(c.items[1]);
            if (v.sort != Sort::Bool) fail(ParseError::Kind::Sort, "assert expects a Bool term", c);
            cmd.kind = Command::Kind::Assert;
            cmd.formula = v.f;
            script.commands.push_back(cmd);
        } else if (h == "check-sat") {
            cmd.kind = Command::Kind::CheckSat;
            script.commands.push_back(cmd);
        } else if (h == "get-model") {
            cmd.kind = Command::Kind::GetModel;
            script.commands.push_back(cmd);
        } else if (h == "set-logic") {
            cmd.kind = Command::Kind::SetLogic;
            if (c.items.size() == 2) cmd.name = c.items[1].tok.text;
            script.commands.push_back(cmd);
        } else if (h == "set-info" || h == "set-option") {
            cmd.kind = h == "set-info" ? Command::Kind::SetInfo : Command::Kind::SetOption;
            if (c.items.size() >= 2) cmd.name = c.items[1].tok.text;
            script.commands.push_back(cmd);
        } else if (h == "exit") {
            cmd.kind = Command::Kind::Exit;
            script.commands.push_back(cmd);
        } else if (h == "get-info" || h == "get-value" || h == "echo" || h == "get-assignment") {
            // Output-only commands with no effect on the answers.
        } else if (h == "push" || h == "pop" || h == "reset" || h == "check-sat-assuming") {
            fail(ParseError::Kind::Unsupported, h, c);
        } else {
            fail(ParseError::Kind::Unsupported, "command " + h, c);
        }
    }

    Value expect(const SExpr& e, Sort s) {
        Value v = term(e);
        if (v.sort != s) fail(ParseError::Kind::Sort, "expected " + sort_name(s) + ", got " + sort_name(v.sort), e);
        return v;
    }

    long small_numeral(const SExpr& e) const {
        if (e.is_list || e.tok.kind != Token::Kind::Numeral) fail(ParseError::Kind::Syntax, "expected a numeral", e);
        if (e.tok.text.size() > 9) fail(ParseError::Kind::Unsupported, "numeral too large here", e);
        return std::stol(e.tok.text);
    }

    Value term(const SExpr& e) {
        if (!e.is_list) return leaf(e);
        if (e.items.empty()) fail(ParseError::Kind::Syntax, "empty application", e);
        const SExpr& head = e.items[0];
        if (head.is_list) {
            // Indexed operators: ((_ re.loop a b) r), ((_ re.^ n) r).
            if (head.items.size() >= 3 && head.items[0].is_symbol("_")) {
                const SExpr& name = head.items[1];
                if (name.is_symbol("re.loop") && head.items.size() == 4 && e.items.size() == 2) {
                    long lo = small_numeral(head.items[2]), hi = small_numeral(head.items[3]);
                    return of_re(re::loop(expect(e.items[1], Sort::RegLan).r, static_cast<unsigned>(lo),
                                          static_cast<unsigned>(hi)));
                }
                if (name.is_symbol("re.^") && head.items.size() == 3 && e.items.size() == 2) {
                    long n = small_numeral(head.items[2]);
                    return of_re(re::loop(expect(e.items[1], Sort::RegLan).r, static_cast<unsigned>(n), static_cast<unsigned>(n)));
                }
                fail(ParseError::Kind::Unsupported, "indexed operator " + name.tok.text, e);
            }
            fail(ParseError::Kind::Syntax, "unexpected list in operator position", e);
        }
        if (head.tok.kind != Token::Kind::Symbol) fail(ParseError::Kind::Syntax, "expected an operator", e);
        const std::string& op = head.tok.text;
        std::vector<SExpr> args(e.items.begin() + 1, e.items.end());
        if (op == "let") return let(e);
        if (unsupported_ops().count(op)) fail(ParseError::Kind::Unsupported, op, e);
        return apply(op, args, e);
    }

    Value let(const SExpr& e) {
        if (e.items.size() != 3 || !e.items[1].is_list) fail(ParseError::Kind::Syntax, "malformed let", e);
        std::map<std::string, Value> frame;
        for (const auto& b : e.items[1].items) {
            if (!b.is_list || b.items.size() != 2 || b.items[0].is_list) fail(ParseError::Kind::Syntax, "malformed let binding", b);
            frame[b.items[0].tok.text] = term(b.items[1]);
        }
        scopes_.push_back(std::move(frame));
        Value v = term(e.items[2]);
        scopes_.pop_back();
        return v;
    }

    Value leaf(const SExpr& e) {
        const Token& t = e.tok;
        switch (t.kind) {
            case Token::Kind::String: return of_str(ir::lit(t.literal));
            case Token::Kind::Numeral: return of_int(LinTerm::of(mpz_class(t.text)));
            case Token::Kind::Symbol: break;
            default: fail(ParseError::Kind::Syntax, "unexpected token", e);
        }
        const std::string& n = t.text;
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto f = it->find(n);
            if (f != it->end()) return f->second;
        }
        if (auto m = macros_.find(n); m != macros_.end()) return m->second;
        if (auto d = declared_.find(n); d != declared_.end()) {
            switch (d->second) {
                case Sort::String: return of_str(ir::var(n));
                case Sort::Int: return of_int(ir::int_var(n));
                case Sort::Bool: return of_bool(ir::bool_var(n));
                case Sort::RegLan: break;
            }
        }
        if (n == "true") return of_bool(ir::truth());
        if (n == "false") return of_bool(ir::falsity());
        if (n == "re.none" || n == "re.nostr") return of_re(re::none());
        if (n == "re.all") return of_re(re::all());
        if (n == "re.allchar") return of_re(re::allchar());
        if (unsupported_ops().count(n)) fail(ParseError::Kind::Unsupported, n, e);
        fail(ParseError::Kind::Sort, "undeclared symbol " + n, e);
    }

    std::vector<Value> eval_all(const std::vector<SExpr>& args) {
        std::vector<Value> out;
        for (const auto& a : args) out.push_back(term(a));
        return out;
    }

    void arity(const std::string& op, const std::vector<SExpr>& args, std::size_t lo, std::size_t hi, const SExpr& at) const {
        if (args.size() < lo || args.size() > hi) fail(ParseError::Kind::Sort, "wrong number of arguments to " + op, at);
    }

    std::vector<FormulaPtr> bools(const std::vector<SExpr>& args) {
        std::vector<FormulaPtr> out;
        for (const auto& a : args) out.push_back(expect(a, Sort::Bool).f);
        return out;
    }

    static FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
        return ir::disj({ir::conj({a, b}), ir::conj({ir::neg(a), ir::neg(b)})});
    }

    FormulaPtr equality(const Value& a, const Value& b, const SExpr& at) {
        if (a.sort != b.sort) fail(ParseError::Kind::Sort, "= over different sorts", at);
        switch (a.sort) {
            case Sort::String: return ir::str_eq(a.s, b.s);
            case Sort::Int: return ir::int_eq(a.i, b.i);
            case Sort::Bool: return iff(a.f, b.f);
            case Sort::RegLan: return ir::regex_eq(a.r, b.r);
        }
        return ir::truth();
    }

    static FormulaPtr chain(std::vector<FormulaPtr> fs) { return ir::conj(std::move(fs)); }

    Value apply(const std::string& op, const std::vector<SExpr>& args, const SExpr& e) {
        // Boolean structure.
        if (op == "not") {
            arity(op, args, 1, 1, e);
            return of_bool(ir::neg(expect(args[0], Sort::Bool).f));
        }
        if (op == "and") return of_bool(ir::conj(bools(args)));
        if (op == "or") return of_bool(ir::disj(bools(args)));
        if (op == "=>") {
            arity(op, args, 2, 1000, e);
            auto bs = bools(args);
            FormulaPtr acc = bs.back();
            for (std::size_t i = bs.size() - 1; i-- > 0;) acc = ir::implies(bs[i], acc);
            return of_bool(acc);
        }
        if (op == "xor") {
            arity(op, args, 2, 1000, e);
            auto bs = bools(args);
            FormulaPtr acc = bs[0];
            for (std::size_t i = 1; i < bs.size(); ++i) acc = ir::neg(iff(acc, bs[i]));
            return of_bool(acc);
        }
        if (op == "=" || op == "distinct") {
            arity(op, args, 2, 1000, e);
            auto vs = eval_all(args);
            std::vector<FormulaPtr> parts;
            if (op == "=") {
                for (std::size_t i = 0; i + 1 < vs.size(); ++i) parts.push_back(equality(vs[i], vs[i + 1], e));
            } else {
                for (std::size_t i = 0; i < vs.size(); ++i)
                    for (std::size_t j = i + 1; j < vs.size(); ++j) parts.push_back(ir::neg(equality(vs[i], vs[j], e)));
            }
            return of_bool(chain(std::move(parts)));
        }
        if (op == "ite") {
            arity(op, args, 3, 3, e);
            FormulaPtr c = expect(args[0], Sort::Bool).f;
            Value a = term(args[1]), b = term(args[2]);
            if (a.sort != b.sort) fail(ParseError::Kind::Sort, "ite branches differ in sort", e);
            switch (a.sort) {
                case Sort::Bool: return of_bool(ir::disj({ir::conj({c, a.f}), ir::conj({ir::neg(c), b.f})}));
                case Sort::String: return of_str(ir::ite(c, a.s, b.s));
                case Sort::Int: return of_int(ir::int_ite(c, a.i, b.i));
                case Sort::RegLan: fail(ParseError::Kind::Unsupported, "ite over RegLan", e);
            }
        }
        // Integers.
        if (op == "+") {
            LinTerm acc;
            for (const auto& a : args) acc = acc + expect(a, Sort::Int).i;
            return of_int(acc);
        }
        if (op == "-") {
            arity(op, args, 1, 1000, e);
            LinTerm acc = expect(args[0], Sort::Int).i;
            if (args.size() == 1) return of_int(acc.scaled(-1));
            for (std::size_t k = 1; k < args.size(); ++k) acc = acc - expect(args[k], Sort::Int).i;
            return of_int(acc);
        }
        if (op == "*") {
            arity(op, args, 1, 1000, e);
            LinTerm acc = LinTerm::of(1);
            bool have_var = false;
            for (const auto& a : args) {
                LinTerm t = expect(a, Sort::Int).i;
                if (t.is_constant()) {
                    acc = acc.scaled(t.constant);
                } else {
                    if (have_var || !acc.is_constant()) fail(ParseError::Kind::Unsupported, "nonlinear multiplication", e);
                    acc = t.scaled(acc.constant);
                    have_var = true;
                }
            }
            return of_int(acc);
        }
        if (op == "<=" || op == "<" || op == ">=" || op == ">") {
            arity(op, args, 2, 1000, e);
            std::vector<LinTerm> ts;
            for (const auto& a : args) ts.push_back(expect(a, Sort::Int).i);
            std::vector<FormulaPtr> parts;
            for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
                const LinTerm &x = ts[k], &y = ts[k + 1];
                if (op == "<=") parts.push_back(ir::le(x, y));
                if (op == "<") parts.push_back(ir::lt(x, y));
                if (op == ">=") parts.push_back(ir::le(y, x));
                if (op == ">") parts.push_back(ir::lt(y, x));
            }
            return of_bool(chain(std::move(parts)));
        }
        if (op == "str.len") {
            arity(op, args, 1, 1, e);
            return of_int(ir::len(expect(args[0], Sort::String).s));
        }
        if (op == "str.indexof") {
            arity(op, args, 2, 3, e);
            StrPtr s = expect(args[0], Sort::String).s, t = expect(args[1], Sort::String).s;
            LinTerm i = args.size() == 3 ? expect(args[2], Sort::Int).i : LinTerm::of(0);
            return of_int(ir::indexof(s, t, i));
        }
        // Strings.
        if (op == "str.++") {
            std::vector<StrPtr> parts;
            for (const auto& a : args) parts.push_back(expect(a, Sort::String).s);
            return of_str(ir::concat(std::move(parts)));
        }
        if (op == "str.at") {
            arity(op, args, 2, 2, e);
            return of_str(ir::at(expect(args[0], Sort::String).s, expect(args[1], Sort::Int).i));
        }
        if (op == "str.substr") {
            arity(op, args, 3, 3, e);
            return of_str(ir::substr(expect(args[0], Sort::String).s, expect(args[1], Sort::Int).i,
                                     expect(args[2], Sort::Int).i));
        }
        if (op == "str.replace") {
            arity(op, args, 3, 3, e);
            return of_str(ir::replace(expect(args[0], Sort::String).s, expect(args[1], Sort::String).s,
                                      expect(args[2], Sort::String).s));
        }
        if (op == "str.contains" || op == "str.prefixof" || op == "str.suffixof") {
            arity(op, args, 2, 2, e);
            StrPtr a = expect(args[0], Sort::String).s, b = expect(args[1], Sort::String).s;
            if (op == "str.contains") return of_bool(ir::contains(a, b));
            if (op == "str.prefixof") return of_bool(ir::prefixof(a, b));
            return of_bool(ir::suffixof(a, b));
        }
        if (op == "str.in_re" || op == "str.in.re") {
            arity(op, args, 2, 2, e);
            return of_bool(ir::in_re(expect(args[0], Sort::String).s, expect(args[1], Sort::RegLan).r));
        }
        // Regular expressions.
        if (op == "str.to_re" || op == "str.to.re") {
            arity(op, args, 1, 1, e);
            StrPtr s = expect(args[0], Sort::String).s;
            if (s->kind != StrTerm::Kind::Lit) fail(ParseError::Kind::Unsupported, "str.to_re of a non-literal", e);
            return of_re(re::str(s->lit));
        }
        if (op == "re.range") {
            arity(op, args, 2, 2, e);
            StrPtr a = expect(args[0], Sort::String).s, b = expect(args[1], Sort::String).s;
            if (a->kind != StrTerm::Kind::Lit || b->kind != StrTerm::Kind::Lit)
                fail(ParseError::Kind::Unsupported, "re.range of a non-literal", e);
            if (a->lit.size() != 1 || b->lit.size() != 1 || a->lit[0] > b->lit[0]) return of_re(re::none());
            return of_re(re::range(a->lit[0], b->lit[0]));
        }
        if (op == "re.++" || op == "re.union" || op == "re.inter") {
            arity(op, args, 1, 100000, e);
            std::vector<RegexPtr> rs;
            for (const auto& a : args) rs.push_back(expect(a, Sort::RegLan).r);
            if (rs.size() == 1) return of_re(rs[0]);
            if (op == "re.++") return of_re(re::concat(std::move(rs)));
            if (op == "re.union") return of_re(re::unite(std::move(rs)));
            return of_re(re::inter(std::move(rs)));
        }
        if (op == "re.diff") {
            arity(op, args, 2, 2, e);
            return of_re(re::diff(expect(args[0], Sort::RegLan).r, expect(args[1], Sort::RegLan).r));
        }
        if (op == "re.comp" || op == "re.*" || op == "re.+" || op == "re.opt") {
            arity(op, args, 1, 1, e);
            RegexPtr r = expect(args[0], Sort::RegLan).r;
            if (op == "re.comp") return of_re(re::comp(r));
            if (op == "re.*") return of_re(re::star(r));
            if (op == "re.+") return of_re(re::plus(r));
            return of_re(re::opt(r));
        }
        if (op == "re.loop") {
            arity(op, args, 2, 3, e);
            RegexPtr r = expect(args[0], Sort::RegLan).r;
            long lo = small_numeral(args[1]);
            if (args.size() == 2) fail(ParseError::Kind::Unsupported, "unbounded legacy re.loop", e);
            long hi = small_numeral(args[2]);
            return of_re(re::loop(r, static_cast<unsigned>(lo), static_cast<unsigned>(hi)));
        }
        fail(ParseError::Kind::Sort, "unknown function " + op, e);
    }

    std::map<std::string, Sort> declared_;
    std::map<std::string, Value> macros_;
    std::vector<std::map<std::string, Value>> scopes_;
};

}  // namespace

Script parse_script(const std::vector<Token>& tokens) { return Interpreter().run(read_sexprs(tokens)); }

Script parse_script_text(const std::string& text) { return parse_script(tokenize(text)); }

std::string print_script(const Script& s) {
    std::string out;
    for (const auto& c : s.commands) {
        switch (c.kind) {
            case Command::Kind::DeclareFun:
                out += "(declare-fun " + to_smtlib(*ir::var(c.name)) + " () " + sort_name(c.sort) + ")\n";
                break;
            case Command::Kind::Assert: out += "(assert " + to_smtlib(*c.formula) + ")\n"; break;
            case Command::Kind::CheckSat: out += "(check-sat)\n"; break;
            case Command::Kind::GetModel: out += "(get-model)\n"; break;
            case Command::Kind::SetLogic: out += "(set-logic " + c.name + ")\n"; break;
            case Command::Kind::SetInfo: out += "(set-info :" + c.name + ")\n"; break;
            case Command::Kind::SetOption: out += "(set-option :" + c.name + ")\n"; break;
            case Command::Kind::Exit: out += "(exit)\n"; break;
        }
    }
    return out;
}

std::size_t count_check_sat(const std::string& text) {
    std::size_t n = 0;
    try {
        auto toks = tokenize(text);
        for (std::size_t i = 0; i + 1 < toks.size(); ++i)
            if (toks[i].kind == Token::Kind::LParen && toks[i + 1].kind == Token::Kind::Symbol &&
                toks[i + 1].text == "check-sat")
                ++n;
    } catch (const ParseError&) {
        std::size_t pos = 0;
        while ((pos = text.find("(check-sat)", pos)) != std::string::npos) {
            ++n;
            ++pos;
        }
    }
    return n;
}

}  // namespace strsat
