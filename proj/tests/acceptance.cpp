// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "nfa_support.hpp"
#include "predicate_support.hpp"
#include "strsat/driver.hpp"
#include "strsat/nielsen.hpp"
#include "strsat/stabilization.hpp"
#include "system_support.hpp"

using namespace strsat;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
    if (!ok) ++failures;
}

// Sat verdicts seen anywhere below, and how many had a model satisfying the input.
int sat_seen = 0, sat_verified = 0;

Verdict solve_checked(const std::vector<FormulaPtr>& fs, double timeout = 120) {
    SolveOptions o;
    o.timeout_seconds = timeout;
    auto v = solve_assertions(fs, o);
    if (v.status == Verdict::Status::Sat) {
        ++sat_seen;
        sat_verified += eval_formula(*ir::conj(fs), v.model);
    }
    return v;
}

std::string fmt(double s) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << s << "s";
    return os.str();
}

StrPtr term_of(const Side& s) {
    std::vector<StrPtr> parts;
    for (const auto& it : s) parts.push_back(it.is_var ? ir::var(it.var) : ir::lit(it.lit));
    if (parts.empty()) return ir::lit("");
    return ir::concat(parts);
}

void xy_ax_lemma() {
    auto t0 = Clock::now();
    auto s = empty_system();
    s.equations.push_back({S("x y"), S("'a' x")});
    bool ok = true;
    std::string detail;
    auto n = initial_node(s);
    if (!n) {
        report(false, "xy-ax-length-lemma", "initial node is dead");
        return;
    }
    auto cs = build_counter_system(build_graph(*n));
    auto lemma = length_lemma(cs, flatten(cs));
    auto expected = lia::conj({lia::eq(len("y"), LinExpr::of(1)), lia::ge(len("x"), LinExpr::of(0))});
    bool equiv = lia_equiv_on_box(lemma, expected, {{length_var("x"), {0, 50}}, {length_var("y"), {0, 50}}});
    ok = ok && equiv;
    detail += std::string("lemma ") + (equiv ? "equivalent" : "differs") + " on [0,50]^2";

    auto x = ir::var("x"), y = ir::var("y");
    auto eq = ir::str_eq(ir::concat({x, y}), ir::concat({ir::lit("a"), x}));
    int verified_before = sat_verified;
    auto sat = solve_checked({eq});
    bool sat_ok = sat.status == Verdict::Status::Sat && sat_verified == verified_before + 1;
    ok = ok && sat_ok;
    detail += std::string(", plain ") + to_string(sat.status) + (sat_ok ? " (model verified)" : "");
    auto unsat = solve_checked({eq, ir::int_eq(ir::len(y), LinTerm::of(2))});
    ok = ok && unsat.status == Verdict::Status::Unsat;
    detail += ", with |y|=2 " + to_string(unsat.status);
    double t = seconds_since(t0);
    ok = ok && t < 1.0;
    report(ok, "xy-ax-length-lemma", detail + ", " + fmt(t));
}

void automata_suite() {
    auto t0 = Clock::now();
    std::mt19937 rng(20240);
    int instances = 0, bad = 0;
    std::string first;
    auto fail = [&](int iter, const std::string& what) {
        if (!bad++) first = "instance " + std::to_string(iter) + " " + what;
    };
    for (int iter = 0; iter < 500; ++iter) {
        std::size_t k = 1 + iter % 3;
        Nfa a = random_nfa(rng, 6, k), b = random_nfa(rng, 6, k);
        if (iter % 4 == 0) b = nfa::unite(b, a);
        ++instances;
        Nfa i = nfa::intersect(a, b), u = nfa::unite(a, b), c = nfa::concat(a, b), n = nfa::complement(a);
        for (const auto& w : all_words(k, k == 3 ? 6 : 8)) {
            bool in_a = oracle_accepts(a, w), in_b = oracle_accepts(b, w);
            if (i.accepts(w) != (in_a && in_b)) fail(iter, "intersect");
            if (u.accepts(w) != (in_a || in_b)) fail(iter, "unite");
            if (c.accepts(w) != oracle_concat(a, b, w)) fail(iter, "concat");
            if (n.accepts(w) != !in_a) fail(iter, "complement");
        }
        bool incl = oracle_included(a, b), back = oracle_included(b, a);
        if (nfa::is_included(a, b) != incl) fail(iter, "inclusion");
        if (nfa::is_equivalent(a, b) != (incl && back)) fail(iter, "equivalence");
        // Subset sequences repeat within 2^6 steps, so 140 covers the lasso.
        auto ls = nfa::length_set(a);
        auto truth = lengths_by_steps(a, 140);
        for (std::size_t len = 0; len <= 140; ++len)
            if (ls.contains(len) != (truth.count(len) == 1)) {
                fail(iter, "length_set");
                break;
            }
    }
    double t = seconds_since(t0);
    std::string detail = std::to_string(instances) + " instance pairs, " + std::to_string(bad) + " disagreements";
    if (bad) detail += " (first: " + first + ")";
    report(bad == 0 && instances >= 500 && t < 60, "automata-oracles", detail + ", " + fmt(t));
}

// Quadratic systems over x, y with letters a, b.
ConjunctiveSystem random_quadratic(std::mt19937& rng) {
    std::map<std::string, int> used;
    auto side = [&]() {
        std::string out;
        int n = static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) {
            if (rng() % 2) {
                std::string v(1, "xy"[rng() % 2]);
                if (used[v] < 2) {
                    ++used[v];
                    out += v + " ";
                    continue;
                }
            }
            out += std::string("'") + "ab"[rng() % 2] + "' ";
        }
        return out;
    };
    auto s = empty_system();
    int n = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n; ++i) {
        std::string l = side(), r = side();
        s.equations.push_back({S(l), S(r)});
    }
    return s;
}

void cross_procedure() {
    auto t0 = Clock::now();
    std::mt19937 rng(77);
    int agree = 0, sat = 0, unsat = 0, confirmed = 0, solver_agree = 0;
    std::string first;
    for (int round = 0; round < 300; ++round) {
        auto s = random_quadratic(rng);
        std::string text;
        for (const auto& e : s.equations) text += to_string(e.lhs) + " = " + to_string(e.rhs) + "; ";
        std::optional<bool> nielsen;
        if (auto n = initial_node(s)) {
            try {
                nielsen = decide_sat(build_graph(*n));
            } catch (const CapExceeded&) {
            }
        } else {
            nielsen = false;
        }
        auto st = solve(s);
        std::optional<bool> stab;
        if (st.status != StabilizationResult::Status::Unknown) stab = st.status == StabilizationResult::Status::Sat;
        if (nielsen && stab && *nielsen == *stab) {
            ++agree;
        } else if (first.empty()) {
            first = text;
        }
        if (nielsen && !*nielsen) {
            ++unsat;
            confirmed += !brute_force(s, 6).has_value();
        }
        if (nielsen && *nielsen) ++sat;

        std::vector<FormulaPtr> fs;
        for (const auto& e : s.equations) fs.push_back(ir::str_eq(term_of(e.lhs), term_of(e.rhs)));
        auto v = solve_checked(fs);
        if (nielsen && v.status == (*nielsen ? Verdict::Status::Sat : Verdict::Status::Unsat)) ++solver_agree;
    }
    double t = seconds_since(t0);
    std::string detail = std::to_string(agree) + "/300 agree (" + std::to_string(sat) + " sat, " +
                         std::to_string(unsat) + " unsat), " + std::to_string(confirmed) + "/" +
                         std::to_string(unsat) + " unsat confirmed at |var|<=6, solver agrees on " +
                         std::to_string(solver_agree) + "/300";
    if (!first.empty()) detail += " (first disagreement: " + first + ")";
    report(agree == 300 && confirmed == unsat, "cross-procedure", detail + ", " + fmt(t));
}

void predicate_conformance() {
    auto t0 = Clock::now();
    std::mt19937 rng(2024);
    int good = 0;
    std::string first;
    for (int round = 0; round < 1000; ++round) {
        auto inst = predicate_instance(rng, round);
        auto v = solve_checked(inst.assertions, 20);
        if (v.status == (inst.expected ? Verdict::Status::Sat : Verdict::Status::Unsat))
            ++good;
        else if (first.empty())
            first = to_smtlib(*ir::conj(inst.assertions));
    }
    std::string detail = std::to_string(good) + "/1000 instances match direct evaluation";
    if (!first.empty()) detail += " (first mismatch: " + first + ")";
    report(good == 1000, "predicate-conformance", detail + ", " + fmt(seconds_since(t0)));
}

void corpus() {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(STRSAT_CORPUS_DIR))
        if (e.path().extension() == ".smt2") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::set<std::string> groups;
    int correct = 0, fast = 0;
    std::string first;
    std::regex status_re(R"(\(set-info\s+:status\s+(sat|unsat)\))");
    for (const auto& p : files) {
        std::ifstream in(p);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        std::smatch m;
        std::string expected = std::regex_search(text, m, status_re) ? m[1].str() : "";
        groups.insert(p.parent_path().filename().string());
        auto t0 = Clock::now();
        std::string got;
        try {
            auto script = parse_script_text(text);
            got = to_string(solve_checked(script.assertions()).status);
        } catch (const std::exception& e) {
            got = std::string("error ") + e.what();
        }
        double t = seconds_since(t0);
        bool ok = !expected.empty() && got == expected && t < 120;
        correct += ok;
        fast += ok && t < 0.5;
        if (!ok && first.empty()) first = p.filename().string() + " expected " + expected + " got " + got;
    }
    int total = static_cast<int>(files.size());
    std::string detail = std::to_string(correct) + "/" + std::to_string(total) + " correct across " +
                         std::to_string(groups.size()) + " groups, " + std::to_string(fast) + " within 0.5s";
    if (!first.empty()) detail += " (first failure: " + first + ")";
    report(total >= 60 && correct == total && fast * 10 >= total * 9 && groups.size() >= 3, "handcrafted-corpus",
           detail);
}

}  // namespace

int main() {
    xy_ax_lemma();
    automata_suite();
    cross_procedure();
    predicate_conformance();
    corpus();
    report(sat_seen > 0 && sat_verified == sat_seen, "sat-model-verification",
           std::to_string(sat_verified) + "/" + std::to_string(sat_seen) +
               " sat verdicts carry a model satisfying the input");
    return failures == 0 ? 0 : 1;
}
