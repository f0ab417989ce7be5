#include <catch_amalgamated.hpp>

#include "strsat/eval.hpp"
#include "strsat/smtlib.hpp"

using namespace strsat;

namespace {

Word w(const std::string& s) { return Word(s.begin(), s.end()); }

FormulaPtr single_assert(const std::string& text) {
    auto s = parse_script_text(text);
    auto as = s.assertions();
    REQUIRE(as.size() == 1);
    return as[0];
}

ParseError::Kind error_kind(const std::string& text) {
    try {
        parse_script_text(text);
    } catch (const ParseError& e) {
        return e.kind();
    }
    FAIL("expected a parse error");
    return ParseError::Kind::Syntax;
}

}  // namespace

TEST_CASE("tokenize a small assertion") {
    auto toks = tokenize("(assert (= x \"a\"))");
    REQUIRE(toks.size() == 8);
    CHECK(toks[5].kind == Token::Kind::String);
    CHECK(toks[5].literal == Word{97});
}

TEST_CASE("doubled quote inside a literal") {
    auto toks = tokenize("\"\"\"\"");
    REQUIRE(toks.size() == 1);
    CHECK(toks[0].literal == Word{'"'});
}

TEST_CASE("comments produce no tokens") { CHECK(tokenize("(check-sat) ; tail comment").size() == 3); }

TEST_CASE("token positions") {
    auto toks = tokenize("(a\n  b)");
    REQUIRE(toks.size() == 4);
    CHECK(toks[2].line == 2);
    CHECK(toks[2].column == 3);
    for (std::size_t i = 1; i < toks.size(); ++i)
        CHECK((toks[i].line > toks[i - 1].line || (toks[i].line == toks[i - 1].line && toks[i].column >= toks[i - 1].column)));
}

TEST_CASE("unicode escapes and utf-8") {
    auto toks = tokenize("\"\\u{48}\\u0041\xc3\xa9\\x\"");
    REQUIRE(toks.size() == 1);
    CHECK(toks[0].literal == Word{0x48, 0x41, 0xe9, '\\', 'x'});
}

TEST_CASE("lexical errors carry positions") {
    try {
        tokenize("(assert\n \"abc");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Kind::Syntax);
        CHECK(e.line() == 2);
        CHECK(e.column() == 2);
    }
    CHECK_THROWS_AS(tokenize("(a # b)"), ParseError);
}

TEST_CASE("membership in a star") {
    auto f = single_assert("(declare-fun x () String)(assert (str.in_re x (re.* (str.to_re \"ab\"))))");
    REQUIRE(f->kind == Formula::Kind::Atom);
    CHECK(f->atom->kind == Atom::Kind::InRe);
    CHECK(f->atom->a->name == "x");
    CHECK(f->atom->r1->kind == Regex::Kind::Star);
    CHECK(to_smtlib(*f) == "(str.in_re x (re.* (str.to_re \"ab\")))");
}

TEST_CASE("contains atom") {
    auto f = single_assert("(declare-const s String)(assert (str.contains s \"abc\"))");
    REQUIRE(f->kind == Formula::Kind::Atom);
    CHECK(f->atom->kind == Atom::Kind::Contains);
    CHECK(f->atom->b->lit == w("abc"));
}

TEST_CASE("unsupported constructs are reported as such") {
    CHECK(error_kind("(declare-fun x () String)(assert (= (str.to_int x) 3))") == ParseError::Kind::Unsupported);
    try {
        parse_script_text("(declare-fun x () String)(assert (= (str.to_int x) 3))");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("str.to_int") != std::string::npos);
    }
    CHECK(error_kind("(declare-fun x () String)(assert (= x (str.replace_all x \"a\" \"b\")))") ==
          ParseError::Kind::Unsupported);
    CHECK(error_kind("(declare-fun f (String) String)") == ParseError::Kind::Unsupported);
    CHECK(error_kind("(push 1)") == ParseError::Kind::Unsupported);
}

TEST_CASE("sort and syntax errors") {
    CHECK(error_kind("(declare-fun x () String)(assert (str.++ x 1))") == ParseError::Kind::Sort);
    CHECK(error_kind("(assert (= y \"a\"))") == ParseError::Kind::Sort);
    CHECK(error_kind("(assert (= \"a\" \"a\")") == ParseError::Kind::Syntax);
    CHECK(error_kind("(declare-fun x () Int)(assert (= (* x x) 4))") == ParseError::Kind::Unsupported);
}

TEST_CASE("degenerate loops and ranges denote the empty language") {
    auto f = single_assert("(declare-fun x () String)(assert (str.in_re x (re.range \"z\" \"a\")))");
    CHECK(f->atom->r1->kind == Regex::Kind::None);
    auto g = single_assert("(declare-fun x () String)(assert (str.in_re x ((_ re.loop 3 1) re.allchar)))");
    CHECK_FALSE(regex_matches(*g->atom->r1, w("")));
    CHECK_FALSE(regex_matches(*g->atom->r1, w("aa")));
}

TEST_CASE("let, define-fun and legacy spellings") {
    auto f = single_assert(
        "(declare-fun x () String)(define-fun k () Int 2)"
        "(assert (let ((y (str.++ x \"a\"))) (and (str.in.re y (str.to.re \"ba\")) (= (str.len y) k))))");
    Assignment a;
    a.strings["x"] = w("b");
    CHECK(eval_formula(*f, a));
    a.strings["x"] = w("bb");
    CHECK_FALSE(eval_formula(*f, a));
}

TEST_CASE("integer comparisons normalize to linear atoms") {
    auto f = single_assert("(declare-fun i () Int)(declare-fun x () String)(assert (< (+ i 1) (* 2 (str.len x))))");
    Assignment a;
    a.ints["i"] = 2;
    a.strings["x"] = w("ab");
    CHECK(eval_formula(*f, a));
    a.ints["i"] = 3;
    CHECK_FALSE(eval_formula(*f, a));
}

TEST_CASE("printing and re-parsing is the identity", "[property]") {
    std::vector<std::string> scripts = {
        "(set-logic QF_SLIA)(declare-fun x () String)(declare-fun y () String)(declare-fun i () Int)"
        "(assert (= (str.++ x \"a\" y) (str.++ y \"\"\"q\" x)))(assert (>= (str.len x) (+ i 3)))(check-sat)(get-model)",
        "(declare-fun s () String)(assert (not (str.contains s \"ab\")))(assert (str.prefixof \"a\" s))"
        "(assert (str.suffixof s \"ba\"))(check-sat)",
        "(declare-fun s () String)(declare-fun b () Bool)(assert (=> b (= (str.at s 2) \"c\")))"
        "(assert (xor b (= (str.substr s 1 (- 3 1)) (str.replace s \"a\" \"\\u{10}\"))))(check-sat)(exit)",
        "(declare-fun s () String)(assert (str.in_re s (re.inter (re.* (re.range \"a\" \"c\")) (re.comp (re.++ "
        "re.all (str.to_re \"ab\") re.all)) (re.union re.allchar (re.opt re.none) ((_ re.loop 1 3) (re.+ "
        "(str.to_re \"b\")))) (re.diff re.all ((_ re.^ 2) re.allchar)))))(check-sat)",
        "(declare-fun s () String)(declare-fun i () Int)(assert (= (str.indexof s \"a\" i) (ite (= s \"\") (- 1) "
        "(str.len s))))(assert (distinct s \"a\" \"b\"))(check-sat)",
        "(assert (= (re.* (str.to_re \"ab\")) (re.++ (str.to_re \"a\") (re.* (str.to_re \"ba\")))))(check-sat)",
    };
    for (const auto& text : scripts) {
        Script a = parse_script_text(text);
        std::string printed = print_script(a);
        Script b = parse_script_text(printed);
        REQUIRE(a.commands.size() == b.commands.size());
        for (std::size_t i = 0; i < a.commands.size(); ++i) {
            CHECK(a.commands[i].kind == b.commands[i].kind);
            CHECK(a.commands[i].name == b.commands[i].name);
            if (a.commands[i].formula) CHECK(equal(*a.commands[i].formula, *b.commands[i].formula));
        }
        CHECK(print_script(b) == printed);
    }
}

TEST_CASE("reference string functions follow the SMT-LIB definitions") {
    CHECK(strfun::at(w("abc"), 1) == w("b"));
    CHECK(strfun::at(w("abc"), 3).empty());
    CHECK(strfun::at(w("abc"), -1).empty());
    CHECK(strfun::substr(w("abcde"), 1, 3) == w("bcd"));
    CHECK(strfun::substr(w("abcde"), 3, 10) == w("de"));
    CHECK(strfun::substr(w("abcde"), 2, 0).empty());
    CHECK(strfun::substr(w("abcde"), 5, 1).empty());
    CHECK(strfun::indexof(w("abcabc"), w("c"), 3) == 5);
    CHECK(strfun::indexof(w("abc"), w(""), 3) == 3);
    CHECK(strfun::indexof(w("abc"), w(""), 4) == -1);
    CHECK(strfun::indexof(w("abc"), w("d"), 0) == -1);
    CHECK(strfun::replace(w("abab"), w("b"), w("xy")) == w("axyab"));
    CHECK(strfun::replace(w("ab"), w(""), w("c")) == w("cab"));
    CHECK(strfun::replace(w("ab"), w("c"), w("d")) == w("ab"));
    CHECK(strfun::contains(w("abc"), w("")));
    CHECK(strfun::prefixof(w("ab"), w("abc")));
    CHECK_FALSE(strfun::suffixof(w("ab"), w("abc")));
}

TEST_CASE("count check-sat commands") {
    CHECK(count_check_sat("(check-sat)(assert true)(check-sat)") == 2);
}
