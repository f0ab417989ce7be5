#include <catch_amalgamated.hpp>

#include <random>

#include "nfa_support.hpp"
#include "strsat/eval.hpp"
#include "strsat/regex.hpp"
#include "system_support.hpp"

using namespace strsat;
using namespace testing_support;

namespace {

RegexPtr rstar(const std::string& w) { return re::star(re::str(W(w))); }

std::vector<SignedAtom> atoms_of(std::vector<std::pair<FormulaPtr, bool>> fs) {
    std::vector<SignedAtom> out;
    for (auto& [f, sign] : fs) out.push_back({f->atom, sign});
    return out;
}

bool flat_shape(const StrTerm& t) {
    if (t.kind != StrTerm::Kind::Concat) return true;
    if (t.args.size() < 2) return false;
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        const auto& a = *t.args[i];
        if (a.kind == StrTerm::Kind::Concat) return false;
        if (a.kind == StrTerm::Kind::Lit && a.lit.empty()) return false;
        if (i > 0 && a.kind == StrTerm::Kind::Lit && t.args[i - 1]->kind == StrTerm::Kind::Lit) return false;
    }
    return true;
}

// Random concatenation tree; `expected` receives its value under `values`.
StrPtr random_term(std::mt19937& rng, int depth, const Assignment& values, Word& expected) {
    int pick = static_cast<int>(rng() % (depth > 0 ? 4 : 2));
    if (pick == 0) {
        std::string v(1, "xyz"[rng() % 3]);
        auto it = values.strings.find(v);
        if (it != values.strings.end()) expected.insert(expected.end(), it->second.begin(), it->second.end());
        return ir::var(v);
    }
    if (pick == 1) {
        std::string s;
        for (std::size_t n = rng() % 3; n > 0; --n) s += "ab"[rng() % 2];
        expected.insert(expected.end(), s.begin(), s.end());
        return ir::lit(s);
    }
    std::vector<StrPtr> parts;
    for (std::size_t n = 1 + rng() % 3; n > 0; --n) parts.push_back(random_term(rng, depth - 1, values, expected));
    return ir::concat(parts);
}

}  // namespace

TEST_CASE("assignment to system collects literals") {
    auto t = ab_table();
    RegexCache cache(t);
    auto x = ir::var("x"), y = ir::var("y");
    auto sys = assignment_to_system(
        atoms_of({{ir::str_eq(x, ir::concat({ir::lit("ab"), y})), true}, {ir::in_re(x, rstar("a")), true}}), cache);
    REQUIRE(sys.equations.size() == 1);
    CHECK(to_string(sys.equations[0].rhs) == to_string(S("'ab' y")));
    CHECK(nfa::is_equivalent(sys.language("x"), cache.get(rstar("a"))));
    CHECK(nfa::is_universal(sys.language("y")));

    auto neg = assignment_to_system(atoms_of({{ir::in_re(x, rstar("a")), false}}), cache);
    CHECK(nfa::is_equivalent(neg.language("x"), nfa::complement(cache.get(rstar("a")))));

    auto both = assignment_to_system(
        atoms_of({{ir::in_re(x, rstar("a")), true}, {ir::in_re(x, rstar("aa")), true}}), cache);
    for (const auto& w : words_upto("ab", 8)) {
        bool even_a = w.size() % 2 == 0 && std::all_of(w.begin(), w.end(), [](CodePoint c) { return c == 'a'; });
        CHECK(both.language("x").accepts(t->encode(w)) == even_a);
    }

    auto dis = assignment_to_system(atoms_of({{ir::str_eq(x, y), false}}), cache);
    CHECK(dis.disequations.size() == 1);
    auto ground = assignment_to_system(atoms_of({{ir::str_eq(ir::lit("a"), ir::lit("b")), true}}), cache);
    CHECK(ground.conflict);
}

TEST_CASE("substitution examples") {
    auto s = empty_system();
    s.equations.push_back({S("x y"), S("'a' x")});
    substitute(s, "x", Side{});
    CHECK(to_string(s.equations[0].lhs) == to_string(S("y")));
    CHECK(to_string(s.equations[0].rhs) == to_string(S("'a'")));

    auto t = empty_system();
    t.equations.push_back({S("x y"), S("z w")});
    substitute(t, "x", S("z"));
    CHECK(to_string(t.equations[0].lhs) == to_string(S("z y")));

    auto u = empty_system();
    u.equations.push_back({S("x x"), S("t")});
    substitute(u, "x", S("'a' 'b'"));
    REQUIRE(u.equations[0].lhs.size() == 1);
    CHECK(u.equations[0].lhs[0].lit == W("abab"));
}

TEST_CASE("flattening is idempotent and preserves values", "[property]") {
    std::mt19937 rng(11);
    for (int round = 0; round < 500; ++round) {
        Assignment a;
        for (const char* v : {"x", "y"}) {
            std::string s;
            for (std::size_t n = rng() % 4; n > 0; --n) s += "ab"[rng() % 2];
            a.strings[v] = W(s);
        }
        Word expected;
        auto t = random_term(rng, 3, a, expected);
        CHECK(flat_shape(*t));
        CHECK(eval_str(*t, a) == expected);
        auto again = ir::concat({t});
        CHECK(to_smtlib(*again) == to_smtlib(*t));
        CHECK(side_value(side_of(*t), a.strings) == expected);
    }
}

TEST_CASE("system evaluation agrees with the atoms", "[property]") {
    auto table = ab_table();
    RegexCache cache(table);
    std::mt19937 rng(5);
    std::vector<RegexPtr> langs = {rstar("a"), rstar("ab"), re::concat({re::all(), re::str(W("b"))}),
                                   re::unite({re::str(W("a")), re::str(W("ba"))})};
    for (int round = 0; round < 400; ++round) {
        Assignment a;
        for (const char* v : {"x", "y", "z"}) {
            std::string s;
            for (std::size_t n = rng() % 4; n > 0; --n) s += "ab"[rng() % 2];
            a.strings[v] = W(s);
        }
        std::vector<std::pair<FormulaPtr, bool>> fs;
        for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
            Word dummy;
            FormulaPtr f;
            if (rng() % 2)
                f = ir::str_eq(random_term(rng, 2, a, dummy), random_term(rng, 2, a, dummy));
            else
                f = ir::in_re(random_term(rng, 1, a, dummy), langs[rng() % langs.size()]);
            fs.push_back({f, rng() % 3 != 0});
        }
        bool direct = true;
        for (auto& [f, sign] : fs) direct = direct && eval_formula(*f, a) == sign;
        auto sys = assignment_to_system(atoms_of(fs), cache);
        std::map<std::string, Word> values = a.strings;
        for (const auto& e : sys.equations)
            for (const auto& it : e.lhs)
                if (it.is_var && !values.count(it.var)) values[it.var] = {};
        // Fresh membership variables name the compound side they stand for.
        for (const auto& e : sys.equations)
            if (e.lhs.size() == 1 && e.lhs[0].is_var && e.lhs[0].var.rfind("!m", 0) == 0)
                values[e.lhs[0].var] = side_value(e.rhs, a.strings);
        bool by_system = !sys.conflict && satisfies(sys, values, {});
        CHECK(by_system == direct);
    }
}
