#include <catch_amalgamated.hpp>

#include <random>

#include "strsat/skeleton.hpp"

using namespace strsat;

namespace {

Prop random_prop(std::mt19937& rng, int atoms, int depth) {
    std::uniform_int_distribution<int> pick(0, 5);
    int k = depth == 0 ? 0 : pick(rng);
    if (k <= 1) return Prop::variable(std::uniform_int_distribution<int>(0, atoms - 1)(rng));
    if (k == 2) return Prop::negate(random_prop(rng, atoms, depth - 1));
    std::vector<Prop> kids;
    int n = std::uniform_int_distribution<int>(2, 3)(rng);
    for (int i = 0; i < n; ++i) kids.push_back(random_prop(rng, atoms, depth - 1));
    Prop p{k <= 3 ? Prop::Kind::And : Prop::Kind::Or, -1, std::move(kids)};
    return p;
}

bool cnf_sat_under(const Cnf& cnf, const std::vector<bool>& atoms) {
    Dpll d(cnf.num_vars);
    d.add_cnf(cnf);
    for (std::size_t v = 0; v < atoms.size(); ++v) d.add_clause({atoms[v] ? pos(static_cast<int>(v)) : negl(static_cast<int>(v))});
    return d.solve().has_value();
}

}  // namespace

TEST_CASE("single atom encodes to one unit clause") {
    Cnf c = tseitin_encode(Prop::variable(0), 1);
    REQUIRE(c.clauses.size() == 1);
    CHECK(c.clauses[0] == std::vector<Lit>{pos(0)});
}

TEST_CASE("conjunction of literals encodes to unit clauses") {
    Cnf c = tseitin_encode(Prop::all({Prop::variable(0), Prop::negate(Prop::variable(1))}), 2);
    REQUIRE(c.clauses.size() == 2);
    CHECK(c.clauses[0] == std::vector<Lit>{pos(0)});
    CHECK(c.clauses[1] == std::vector<Lit>{negl(1)});
}

TEST_CASE("A or (B and C) by truth table") {
    Prop p = Prop::any({Prop::variable(0), Prop::all({Prop::variable(1), Prop::variable(2)})});
    Cnf c = tseitin_encode(p, 3);
    for (int m = 0; m < 8; ++m) {
        std::vector<bool> a{(m & 1) != 0, (m & 2) != 0, (m & 4) != 0};
        CHECK(cnf_sat_under(c, a) == p.evaluate(a));
    }
}

TEST_CASE("random skeletons: encoding agrees with the truth table", "[property]") {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 120; ++iter) {
        int atoms = 1 + iter % 10;
        Prop p = random_prop(rng, atoms, 4);
        Cnf c = tseitin_encode(p, atoms);
        bool any = false;
        for (int m = 0; m < (1 << atoms); ++m) {
            std::vector<bool> a(atoms);
            for (int v = 0; v < atoms; ++v) a[v] = (m >> v) & 1;
            bool truth = p.evaluate(a);
            any = any || truth;
            REQUIRE(cnf_sat_under(c, a) == truth);
        }
        Dpll d(c.num_vars);
        d.add_cnf(c);
        auto model = d.solve();
        REQUIRE(model.has_value() == any);
        if (model) {
            std::vector<bool> proj(model->begin(), model->begin() + atoms);
            REQUIRE(p.evaluate(proj));
            auto rel = relevant_literals(p, proj);
            // Any completion of the relevant literals satisfies p.
            for (int m = 0; m < (1 << atoms); ++m) {
                std::vector<bool> a(atoms);
                for (int v = 0; v < atoms; ++v) a[v] = (m >> v) & 1;
                bool agrees = true;
                for (Lit l : rel) agrees = agrees && a[lit_var(l)] == lit_sign(l);
                if (agrees) REQUIRE(p.evaluate(a));
            }
        }
    }
}

TEST_CASE("dpll enumerates all models with blocking clauses") {
    // (a or b) and (not a or not c): 4 of the 8 assignments over a, b, c.
    Dpll d(3);
    d.add_clause({pos(0), pos(1)});
    d.add_clause({negl(0), negl(2)});
    int count = 0;
    while (auto m = d.solve()) {
        ++count;
        std::vector<Lit> block;
        for (int v = 0; v < 3; ++v) block.push_back((*m)[v] ? negl(v) : pos(v));
        d.add_clause(block);
        REQUIRE(count <= 8);
    }
    CHECK(count == 4);
}
