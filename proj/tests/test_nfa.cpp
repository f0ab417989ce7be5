#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "nfa_support.hpp"
#include "strsat/nfa.hpp"
#include "strsat/regex.hpp"
#include "strsat/symbols.hpp"

using namespace strsat;
using namespace testing_support;

namespace {

Word w(const std::string& s) { return Word(s.begin(), s.end()); }

}  // namespace

TEST_CASE("symbol table keeps mentioned points apart from the dummy class") {
    auto t = SymbolTable::build({'a', 'b', 'a'});
    REQUIRE(t.size() == 3);
    REQUIRE(t.dummy().has_value());
    CHECK(t.symbol_for('a') != t.symbol_for('b'));
    CHECK(t.symbol_for('z') == *t.dummy());
    CHECK(t.class_size(*t.dummy()) == SymbolTable::kMaxCodePoint + 1 - 2);
    CHECK(t.representative(*t.dummy()) != 'a');
    CHECK(t.representative(*t.dummy(), 0) != t.representative(*t.dummy(), 1));
    CHECK(t.decode(t.encode(w("abba"))) == w("abba"));
}

TEST_CASE("ranges split the unmentioned points by membership") {
    auto t = SymbolTable::build({'c'}, {{'a', 'f'}});
    // 'a' and 'f' are explicit, 'c' is explicit, b/d-e form one class, outside is dummy.
    auto in = t.symbols_in_range('a', 'f');
    std::set<Symbol> inside(in.begin(), in.end());
    CHECK(inside.count(t.symbol_for('b')) == 1);
    CHECK(inside.count(t.symbol_for('e')) == 1);
    CHECK(t.symbol_for('b') == t.symbol_for('d'));
    CHECK(inside.count(t.symbol_for('z')) == 0);
    CHECK(t.symbol_for('z') == *t.dummy());
}

TEST_CASE("re.none compiles to an empty automaton") {
    auto t = SymbolTable::build({});
    CHECK(nfa::is_empty(compile_regex(*re::none(), t)));
}

TEST_CASE("(ab)* agrees with the direct matcher up to length 6") {
    auto t = SymbolTable::build({'a', 'b'});
    auto r = re::star(re::str(w("ab")));
    Nfa a = compile_regex(*r, t);
    for (const auto& word : all_words(t.size(), 6)) CHECK(a.accepts(word) == regex_matches(*r, t.decode(word)));
    CHECK(a.accepts(t.encode(w("abab"))));
    CHECK_FALSE(a.accepts(t.encode(w("aba"))));
    CHECK_FALSE(a.accepts(t.encode(w("ba"))));
}

TEST_CASE("complement of allchar over {a, dummy}") {
    auto t = SymbolTable::build({'a'});
    REQUIRE(t.size() == 2);
    Nfa a = compile_regex(*re::comp(re::allchar()), t);
    for (const auto& word : all_words(2, 4)) CHECK(a.accepts(word) == (word.size() != 1));
}

TEST_CASE("compiled regexes agree with the matcher on a mixed set") {
    auto t = SymbolTable::build({'a', 'b'}, {{'a', 'c'}});
    std::vector<RegexPtr> rs = {
        re::inter({re::star(re::range('a', 'c')), re::comp(re::concat({re::all(), re::str(w("ab")), re::all()}))}),
        re::diff(re::plus(re::unite({re::str(w("a")), re::str(w("b"))})), re::star(re::str(w("ab")))),
        re::loop(re::opt(re::str(w("ba"))), 1, 3),
        re::loop(re::allchar(), 3, 1),
        re::range('c', 'a'),
        re::concat({re::str(w("")), re::allchar(), re::comp(re::none())}),
    };
    for (const auto& r : rs) {
        Nfa a = compile_regex(*r, t);
        for (const auto& word : all_words(t.size(), 5))
            for (std::size_t v = 0; v < 2; ++v) CHECK(a.accepts(word) == regex_matches(*r, t.decode(word, v)));
    }
}

TEST_CASE("intersection of a* and (aa)* is the even a-blocks") {
    auto t = SymbolTable::build({'a'});
    Nfa x = compile_regex(*re::star(re::str(w("a"))), t);
    Nfa y = compile_regex(*re::star(re::str(w("aa"))), t);
    Nfa z = nfa::intersect(x, y);
    for (const auto& word : all_words(2, 10)) {
        bool only_a = std::all_of(word.begin(), word.end(), [&](Symbol s) { return s == t.symbol_for('a'); });
        CHECK(z.accepts(word) == (only_a && word.size() % 2 == 0));
    }
}

TEST_CASE("union with empty and double complement are identities") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        Nfa a = random_nfa(rng, 5, 2);
        CHECK(nfa::is_equivalent(nfa::unite(a, nfa::empty_language(2)), a));
        Nfa cc = nfa::complement(nfa::complement(a));
        for (const auto& word : all_words(2, 6)) CHECK(cc.accepts(word) == oracle_accepts(a, word));
    }
}

TEST_CASE("simulation merges a duplicated state") {
    Nfa a(2, 3);
    a.add_initial(0);
    a.add_transition(0, 0, 1);
    a.add_transition(0, 0, 2);
    a.add_transition(1, 1, 1);
    a.add_transition(2, 1, 2);
    a.set_final(1);
    a.set_final(2);
    Nfa r = nfa::reduce_simulation(a);
    CHECK(r.num_states() <= 2);
    CHECK(nfa::is_equivalent(a, r));
}

TEST_CASE("simulation reduction of a minimal DFA") {
    auto t = SymbolTable::build({'a', 'b'});
    Nfa d = nfa::minimize_dfa(nfa::complete(nfa::determinize(compile_regex(*re::star(re::str(w("ab"))), t))));
    Nfa r = nfa::reduce_simulation(d);
    CHECK(r.num_states() <= d.num_states());
    CHECK(nfa::is_equivalent(d, r));
}

TEST_CASE("inclusion basics") {
    auto t = SymbolTable::build({'a'});
    Nfa astar = compile_regex(*re::star(re::str(w("a"))), t);
    Nfa all = nfa::universal(t.size());
    CHECK(nfa::is_included(astar, all));
    CHECK_FALSE(nfa::is_included(all, astar));
    CHECK(nfa::is_universal(all));
    CHECK_FALSE(nfa::is_universal(astar));
}

TEST_CASE("extract_word examples") {
    auto t = SymbolTable::build({'a', 'b'});
    auto ex = [&](RegexPtr r, std::size_t n) -> std::optional<Word> {
        auto got = nfa::extract_word(compile_regex(*r, t), n);
        if (!got) return std::nullopt;
        return t.decode(*got);
    };
    CHECK(ex(re::star(re::str(w("ab"))), 4) == w("abab"));
    CHECK(ex(re::star(re::str(w("a"))), 3) == w("aaa"));
    CHECK_FALSE(ex(re::unite({re::str(w("ab")), re::str(w("ba"))}), 3).has_value());
    auto two = ex(re::unite({re::str(w("ab")), re::str(w("ba"))}), 2);
    REQUIRE(two.has_value());
    CHECK((*two == w("ab") || *two == w("ba")));
}

TEST_CASE("length_set examples") {
    auto t = SymbolTable::build({'a'});
    auto ls = nfa::length_set(compile_regex(*re::concat({re::str(w("a")), re::star(re::str(w("aa")))}), t));
    REQUIRE(ls.progressions.size() == 1);
    CHECK(ls.progressions[0].offset == 1);
    CHECK(ls.progressions[0].period == 2);
    for (std::uint64_t n = 0; n <= 20; ++n) CHECK(ls.contains(n) == (n % 2 == 1));
    CHECK(nfa::length_set(nfa::empty_language(2)).empty());
    auto eps = nfa::length_set(nfa::epsilon(2));
    REQUIRE(eps.progressions.size() == 1);
    CHECK(eps.progressions[0].offset == 0);
    CHECK(eps.progressions[0].period == 0);
}

TEST_CASE("single_word and shortest_word") {
    auto t = SymbolTable::build({'a', 'b'});
    auto one = nfa::single_word(compile_regex(*re::concat({re::str(w("ab")), re::str(w("a"))}), t));
    REQUIRE(one.has_value());
    CHECK(t.decode(*one) == w("aba"));
    CHECK_FALSE(nfa::single_word(compile_regex(*re::star(re::str(w("a"))), t)).has_value());
    auto sh = nfa::shortest_word(compile_regex(*re::plus(re::str(w("ab"))), t));
    REQUIRE(sh.has_value());
    CHECK(t.decode(*sh) == w("ab"));
}

TEST_CASE("random automata: operations against enumeration", "[property]") {
    std::mt19937 rng(20240601);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t k = 1 + iter % 3;
        Nfa a = random_nfa(rng, 6, k), b = random_nfa(rng, 6, k);
        Nfa i = nfa::intersect(a, b), u = nfa::unite(a, b), c = nfa::concat(a, b), n = nfa::complement(a);
        Nfa s = nfa::star(a), r = nfa::reduce_simulation(a), d = nfa::determinize(a);
        Nfa m = nfa::minimize_dfa(nfa::complete(d));
        CHECK(r.num_states() <= a.num_states());
        CHECK(d.is_deterministic());
        for (const auto& word : all_words(k, k == 3 ? 6 : 8)) {
            bool in_a = oracle_accepts(a, word), in_b = oracle_accepts(b, word);
            REQUIRE(i.accepts(word) == (in_a && in_b));
            REQUIRE(u.accepts(word) == (in_a || in_b));
            REQUIRE(c.accepts(word) == oracle_concat(a, b, word));
            REQUIRE(n.accepts(word) == !in_a);
            REQUIRE(r.accepts(word) == in_a);
            REQUIRE(m.accepts(word) == in_a);
            if (word.size() <= 5) {
                bool starred = word.empty();
                // w ∈ a* iff some nonempty prefix is in a and the rest in a*.
                for (std::size_t p = 1; p <= word.size() && !starred; ++p) {
                    std::vector<Symbol> l(word.begin(), word.begin() + p), rest(word.begin() + p, word.end());
                    starred = oracle_accepts(a, l) && s.accepts(rest);
                }
                REQUIRE(s.accepts(word) == starred);
            }
        }
    }
}

TEST_CASE("random automata: inclusion and equivalence", "[property]") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 1000; ++iter) {
        std::size_t k = 1 + iter % 3;
        Nfa a = random_nfa(rng, 6, k), b = random_nfa(rng, 6, k);
        if (iter % 4 == 0) b = nfa::unite(b, a);
        bool expect = oracle_included(a, b);
        REQUIRE(nfa::is_included(a, b) == expect);
        REQUIRE(nfa::is_included_naive(a, b) == expect);
        REQUIRE(nfa::is_equivalent(a, b) == (expect && oracle_included(b, a)));
        bool witness = false;
        for (const auto& word : all_words(k, k == 3 ? 5 : 8))
            if (oracle_accepts(a, word) && !oracle_accepts(b, word)) witness = true;
        if (witness) REQUIRE_FALSE(expect);
    }
}

TEST_CASE("random automata: length sets and word extraction", "[property]") {
    std::mt19937 rng(5);
    for (int iter = 0; iter < 500; ++iter) {
        std::size_t k = 1 + iter % 3;
        Nfa a = random_nfa(rng, 6, k);
        auto ls = nfa::length_set(a);
        auto truth = lengths_by_steps(a, 40);
        for (std::size_t n = 0; n <= 40; ++n) {
            REQUIRE(ls.contains(n) == (truth.count(n) == 1));
            auto got = nfa::extract_word(a, n);
            REQUIRE(got.has_value() == ls.contains(n));
            if (got) {
                REQUIRE(got->size() == n);
                REQUIRE(oracle_accepts(a, *got));
            }
        }
    }
}
