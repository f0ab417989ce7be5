#include <catch_amalgamated.hpp>

#include <random>

#include "strsat/lia.hpp"

using namespace strsat;

namespace {

LinExpr v(const std::string& n) { return LinExpr::var(n); }
LinExpr c(long k) { return LinExpr::of(k); }

bool model_satisfies(const LiaFormula& f, const LiaModel& m) { return lia::evaluate(f, m); }

}  // namespace

TEST_CASE("y = 1 and x >= 0") {
    auto f = lia::conj({lia::eq(v("y"), c(1)), lia::ge(v("x"), c(0))});
    auto r = lia_check(f);
    REQUIRE(r.status == LiaResult::Status::Sat);
    CHECK(r.model.at("x") == 0);
    CHECK(r.model.at("y") == 1);
}

TEST_CASE("contradictory bounds") {
    auto r = lia_check(lia::conj({lia::ge(v("x"), c(1)), lia::le(v("x"), c(0))}));
    CHECK(r.status == LiaResult::Status::Unsat);
}

TEST_CASE("odd progression excludes 6") {
    auto prog = lia::exists({"k"}, lia::conj({lia::ge(v("k"), c(0)), lia::eq(v("x"), c(1) + v("k").scaled(2))}));
    auto f = lia::conj({prog, lia::le(v("x"), c(6)), lia::ge(v("x"), c(6))});
    CHECK(lia_check(f).status == LiaResult::Status::Unsat);
    // Enumeration oracle for x in [0, 6].
    for (long x = 0; x <= 6; ++x) {
        auto fixed = lia::conj({prog, lia::eq(v("x"), c(x))});
        CHECK((lia_check(fixed).status == LiaResult::Status::Sat) == (x % 2 == 1));
    }
}

TEST_CASE("equivalence on boxes") {
    CHECK(lia_equiv_on_box(lia::ge(v("x"), c(0)), lia::gt(v("x"), c(-1)), {{"x", {-5, 5}}}));
    CHECK_FALSE(lia_equiv_on_box(lia::ge(v("x"), c(0)), lia::gt(v("x"), c(0)), {{"x", {0, 1}}}));
}

TEST_CASE("parity needs branching") {
    // 2x + 2y = 3 has rational but no integer solutions.
    CHECK(lia_check(lia::eq(v("x").scaled(2) + v("y").scaled(2), c(3))).status == LiaResult::Status::Unsat);
    // 3x - 2y = 1 with 0 <= x, y <= 10.
    auto f = lia::conj({lia::eq(v("x").scaled(3) - v("y").scaled(2), c(1)), lia::ge(v("x"), c(0)),
                        lia::ge(v("y"), c(0)), lia::le(v("x"), c(10)), lia::le(v("y"), c(10))});
    auto r = lia_check(f);
    REQUIRE(r.status == LiaResult::Status::Sat);
    CHECK(model_satisfies(f, r.model));
}

TEST_CASE("disjunctions and disequations") {
    auto f = lia::conj({lia::disj({lia::eq(v("x"), c(3)), lia::eq(v("x"), c(5))}), lia::ne(v("x"), c(3)),
                        lia::ne(v("x"), v("y")), lia::ge(v("y"), c(5)), lia::le(v("y"), c(5))});
    CHECK(lia_check(f).status == LiaResult::Status::Unsat);
    auto g = lia::conj({lia::disj({lia::eq(v("x"), c(3)), lia::eq(v("x"), c(5))}), lia::ne(v("x"), c(3))});
    auto r = lia_check(g);
    REQUIRE(r.status == LiaResult::Status::Sat);
    CHECK(r.model.at("x") == 5);
}

TEST_CASE("results are deterministic") {
    auto f = lia::conj({lia::disj({lia::ge(v("a") + v("b"), c(7)), lia::eq(v("a"), c(-2))}),
                        lia::le(v("a").scaled(3) - v("b"), c(4))});
    auto r1 = lia_check(f), r2 = lia_check(f);
    REQUIRE(r1.status == LiaResult::Status::Sat);
    CHECK(r1.model == r2.model);
}

TEST_CASE("random conjunctions against enumeration", "[property]") {
    std::mt19937 rng(314);
    std::uniform_int_distribution<long> coef(-5, 5), cons(-10, 10);
    const char* names[] = {"a", "b", "c", "d"};
    int sat_count = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        int nv = 1 + iter % 4;
        int m = 1 + static_cast<int>(rng() % 4);
        struct Row {
            std::vector<long> k;
            long b;
            int rel;  // 0: <=, 1: =, 2: >=
        };
        std::vector<Row> rows;
        std::vector<LiaFormula> parts;
        for (int i = 0; i < m; ++i) {
            Row r{std::vector<long>(4, 0), cons(rng), static_cast<int>(rng() % 3)};
            LinExpr e;
            for (int j = 0; j < nv; ++j) {
                r.k[j] = coef(rng);
                e = e + LinExpr::var(names[j], r.k[j]);
            }
            rows.push_back(r);
            parts.push_back(r.rel == 0 ? lia::le(e, c(r.b)) : r.rel == 1 ? lia::eq(e, c(r.b)) : lia::ge(e, c(r.b)));
        }
        for (int j = 0; j < nv; ++j) {
            parts.push_back(lia::ge(v(names[j]), c(-20)));
            parts.push_back(lia::le(v(names[j]), c(20)));
        }
        auto f = lia::conj(parts);
        // Oracle: enumerate all but the last variable, then solve the rows for it.
        bool exists = false;
        std::vector<long> x(4, 0);
        std::function<void(int)> rec = [&](int j) {
            if (exists) return;
            if (j == nv - 1) {
                long lo = -20, hi = 20;
                for (const auto& r : rows) {
                    long rest = 0;
                    for (int t = 0; t < nv - 1; ++t) rest += r.k[t] * x[t];
                    long a = r.k[nv - 1], rhs = r.b - rest;
                    auto fl = [](long p, long q) { return p / q - ((p % q != 0) && ((p < 0) != (q < 0))); };
                    auto cl = [&](long p, long q) { return -fl(-p, q); };
                    if (a == 0) {
                        bool ok = r.rel == 0 ? 0 <= rhs : r.rel == 1 ? rhs == 0 : 0 >= rhs;
                        if (!ok) return;
                        continue;
                    }
                    if (r.rel == 1) {
                        if (rhs % a != 0) return;
                        lo = std::max(lo, rhs / a);
                        hi = std::min(hi, rhs / a);
                    } else {
                        bool upper = (r.rel == 0) == (a > 0);
                        if (upper)
                            hi = std::min(hi, fl(rhs, a));
                        else
                            lo = std::max(lo, cl(rhs, a));
                    }
                }
                if (lo <= hi) exists = true;
                return;
            }
            for (long t = -20; t <= 20 && !exists; ++t) {
                x[j] = t;
                rec(j + 1);
            }
        };
        rec(0);
        auto r = lia_check(f);
        REQUIRE(r.status != LiaResult::Status::ResourceExceeded);
        REQUIRE((r.status == LiaResult::Status::Sat) == exists);
        if (exists) {
            ++sat_count;
            REQUIRE(model_satisfies(f, r.model));
        }
    }
    CHECK(sat_count > 100);
}
