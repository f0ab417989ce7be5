#include <catch_amalgamated.hpp>

#include <random>

#include "strsat/preprocess.hpp"
#include "system_support.hpp"

using namespace strsat;
using namespace testing_support;

namespace {

bool has_equation(const ConjunctiveSystem& s, const std::string& l, const std::string& r) {
    for (const auto& e : s.equations) {
        std::string a = to_string(e.lhs), b = to_string(e.rhs);
        if ((a == to_string(S(l)) && b == to_string(S(r))) || (a == to_string(S(r)) && b == to_string(S(l))))
            return true;
    }
    return false;
}

ConjunctiveSystem random_system(std::mt19937& rng) {
    auto side = [&]() {
        std::string out;
        for (std::size_t n = rng() % 4; n > 0; --n) {
            if (rng() % 3 == 0)
                out += std::string("'") + "ab"[rng() % 2] + "' ";
            else
                out += std::string(1, "xyz"[rng() % 3]) + " ";
        }
        return out;
    };
    auto s = empty_system();
    for (std::size_t n = 1 + rng() % 2; n > 0; --n) s.equations.push_back({S(side()), S(side())});
    if (rng() % 3 == 0) {
        std::string v(1, "xyz"[rng() % 3]);
        auto a = nfa::word(s.alphabet_size(), s.symbols->encode(W("a")));
        s.restrict(v, rng() % 2 ? nfa::star(a) : nfa::concat(a, nfa::universal(s.alphabet_size())));
    }
    if (rng() % 3 == 0) add_lia(s, lia::eq(len(std::string(1, "xyz"[rng() % 3])), LinExpr::of(rng() % 3)));
    return s;
}

}  // namespace

TEST_CASE("length-equal split of a two-sided equation") {
    auto s = empty_system();
    s.equations.push_back({S("x y"), S("z w")});
    add_lia(s, lia::eq(len("x"), len("z")));
    auto r = preprocess(s, ProcedureKind::Stabilization);
    REQUIRE(r.status == PreprocessResult::Status::Reduced);
    // Both halves are equated; variable propagation may then merge them.
    const auto& red = r.system;
    bool split = has_equation(red, "x", "z") || has_equation(red, "y", "w") || red.equations.empty();
    CHECK(split);
    for (const auto& e : red.equations) CHECK(e.lhs.size() + e.rhs.size() <= 2);
    std::map<std::string, Word> m{{"x", W("ab")}, {"z", W("ab")}, {"y", W("b")}, {"w", W("b")}};
    auto replayed = replay_trail(red, m);
    CHECK(satisfies(s, replayed, {}));
}

TEST_CASE("epsilon propagation then length conflict") {
    auto s = empty_system();
    s.equations.push_back({S("x"), Side{}});
    s.equations.push_back({S("x y"), S("'a' y")});
    auto r = preprocess(s, ProcedureKind::Stabilization);
    CHECK(r.status == PreprocessResult::Status::Unsat);
    CHECK_FALSE(brute_force(s, 6));
}

TEST_CASE("ground equation becomes a regular constraint") {
    auto s = empty_system();
    s.equations.push_back({S("x"), S("'ab'")});
    auto r = preprocess(s, ProcedureKind::Stabilization);
    REQUIRE(r.status == PreprocessResult::Status::Reduced);
    CHECK(r.system.equations.empty());
    auto ab = nfa::word(s.alphabet_size(), s.symbols->encode(W("ab")));
    bool as_language = r.system.regular.count("x") && nfa::is_equivalent(r.system.language("x"), ab);
    bool as_definition = false;
    for (const auto& step : r.system.trail)
        if (step.kind == ModelStep::Kind::Define && step.var == "x" && ground_word(step.value) == W("ab"))
            as_definition = true;
    CHECK((as_language || as_definition));
}

TEST_CASE("unsat patterns") {
    auto a = empty_system();
    a.equations.push_back({S("x 'a'"), S("x 'b'")});
    CHECK(preprocess(a, ProcedureKind::Stabilization).status == PreprocessResult::Status::Unsat);
    auto b = empty_system();
    b.equations.push_back({S("x"), S("y")});
    b.restrict("x", nfa::empty_language(b.alphabet_size()));
    CHECK(preprocess(b, ProcedureKind::Stabilization).status == PreprocessResult::Status::Unsat);
    auto c = empty_system();
    auto aa = nfa::star(nfa::word(c.alphabet_size(), c.symbols->encode(W("aa"))));
    c.equations.push_back({S("x"), S("y 'a'")});
    c.restrict("x", aa);
    c.restrict("y", aa);
    CHECK(preprocess(c, ProcedureKind::Stabilization).status == PreprocessResult::Status::Unsat);
    auto d = empty_system();
    d.disequations.push_back({S("'a'"), S("'a'")});
    CHECK(preprocess(d, ProcedureKind::Nielsen).status == PreprocessResult::Status::Unsat);
    auto e = empty_system();
    e.equations.push_back({S("x y"), S("y x")});
    e.disequations.push_back({S("x"), S("y")});
    add_lia(e, lia::eq(len("x"), len("y")));
    CHECK(preprocess(e, ProcedureKind::Stabilization).status == PreprocessResult::Status::Unsat);
}

TEST_CASE("ground definitions keep a system quadratic") {
    auto s = empty_system();
    s.equations.push_back({S("x y"), S("y x")});
    s.equations.push_back({S("x"), S("'ab'")});
    auto r = preprocess(s, ProcedureKind::Nielsen);
    REQUIRE(r.status == PreprocessResult::Status::Reduced);
    CHECK(r.system.occurrences().count("x") == 0);
    CHECK(r.system.regular.empty());
    auto single = empty_system();
    single.equations.push_back({S("x"), S("'ab'")});
    auto kept = preprocess(single, ProcedureKind::Nielsen);
    REQUIRE(kept.status == PreprocessResult::Status::Reduced);
    CHECK(kept.system.regular.empty());
}

TEST_CASE("regex-eq pipeline leaves the system alone") {
    auto s = empty_system();
    s.equations.push_back({S("x"), Side{}});
    auto r = preprocess(s, ProcedureKind::RegexEq);
    REQUIRE(r.status == PreprocessResult::Status::Reduced);
    CHECK(r.system.equations.size() == 1);
}

TEST_CASE("preprocessing preserves bounded satisfiability", "[property]") {
    std::mt19937 rng(3);
    for (int round = 0; round < 300; ++round) {
        auto s = random_system(rng);
        auto before = brute_force(s, 3);
        for (auto k : {ProcedureKind::Stabilization, ProcedureKind::Nielsen}) {
            auto r = preprocess(s, k);
            if (r.status == PreprocessResult::Status::Unsat) {
                CHECK_FALSE(before);
                continue;
            }
            auto after = brute_force(r.system, 3);
            if (after) CHECK(satisfies(s, replay_trail(r.system, *after), {}));
            if (before) CHECK(after);
        }
    }
}
