#include "strsat/driver.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "strsat/nielsen.hpp"
#include "strsat/saturation.hpp"
#include "strsat/skeleton.hpp"
#include "strsat/stabilization.hpp"

namespace strsat {

namespace {

using Clock = std::chrono::steady_clock;

class Log {
public:
    explicit Log(const SolveOptions& o) : o_(o) {}
    template <class F>
    void info(F&& f) const {
        if (o_.log_stream && o_.log != LogLevel::Off) *o_.log_stream << "; " << f() << '\n';
    }
    template <class F>
    void debug(F&& f) const {
        if (o_.log_stream && o_.log == LogLevel::Debug) *o_.log_stream << "; " << f() << '\n';
    }

private:
    const SolveOptions& o_;
};

bool expired(const std::optional<Clock::time_point>& deadline) {
    return deadline && Clock::now() >= *deadline;
}

TheoryResult unknown(std::string reason, ProcedureKind k) {
    TheoryResult r;
    r.reason = std::move(reason);
    r.procedure = k;
    return r;
}

TheoryResult unsat(ProcedureKind k) {
    TheoryResult r;
    r.status = TheoryResult::Status::Unsat;
    r.procedure = k;
    return r;
}

TheoryResult by_stabilization(const ConjunctiveSystem& sys, const SolveOptions& options,
                              std::optional<Clock::time_point> deadline) {
    StabilizationOptions so;
    so.step_budget = options.stabilization_steps;
    so.deadline = deadline;
    auto res = solve(sys, so);
    TheoryResult r;
    r.procedure = ProcedureKind::Stabilization;
    switch (res.status) {
    case StabilizationResult::Status::Sat:
        r.status = TheoryResult::Status::Sat;
        r.strings = std::move(res.model);
        r.ints = std::move(res.ints);
        break;
    case StabilizationResult::Status::Unsat: r.status = TheoryResult::Status::Unsat; break;
    case StabilizationResult::Status::Unknown: r.reason = res.reason.empty() ? "resource budget" : res.reason; break;
    }
    return r;
}

CodePoint filler_letter(const SymbolTable& t) { return t.representative(0); }

std::optional<TheoryResult> finish_nielsen(const ConjunctiveSystem& original, const ConjunctiveSystem& reduced,
                                           std::map<std::string, Word> values, const LiaModel& ints) {
    CodePoint fill = filler_letter(*original.symbols);
    for (const auto& v : reduced.len_vars)
        if (!values.count(v)) {
            auto it = ints.find(length_var(v));
            values[v] = Word(it == ints.end() ? 0 : it->second.get_ui(), fill);
        }
    values = replay_trail(reduced, std::move(values));
    LiaModel out;
    for (const auto& [k, val] : ints)
        if (k.empty() || k.front() != '|') out[k] = val;
    for (const auto& v : original.len_vars)
        if (!values.count(v)) {
            auto it = ints.find(length_var(v));
            values[v] = Word(it == ints.end() ? 0 : it->second.get_ui(), fill);
        }
    LiaModel check = out;
    for (const auto& [v, w] : values) check[length_var(v)] = static_cast<unsigned long>(w.size());
    if (!satisfies(original, values, check)) return std::nullopt;
    TheoryResult r;
    r.status = TheoryResult::Status::Sat;
    r.procedure = ProcedureKind::Nielsen;
    std::set<std::string> keep = original.variables();
    for (const auto& [v, _] : original.regular) keep.insert(v);
    keep.insert(original.len_vars.begin(), original.len_vars.end());
    for (const auto& v : keep) r.strings[v] = values[v];
    r.ints = std::move(out);
    return r;
}

/// nullopt: the procedure cannot answer and stabilization takes over.
std::optional<TheoryResult> by_nielsen(const ConjunctiveSystem& sys, const SolveOptions& options,
                                       std::optional<Clock::time_point> deadline, const Log& log) {
    auto pre = preprocess(sys, ProcedureKind::Nielsen);
    if (pre.status == PreprocessResult::Status::Unsat) return unsat(ProcedureKind::Nielsen);
    const ConjunctiveSystem& red = pre.system;
    if (red.conflict) return unsat(ProcedureKind::Nielsen);
    if (!is_quadratic(red)) return std::nullopt;
    auto init = initial_node(red);
    if (!init) return unsat(ProcedureKind::Nielsen);
    NielsenGraph g;
    try {
        g = build_graph(*init, options.nielsen_node_cap);
    } catch (const CapExceeded&) {
        log.info([] { return std::string("nielsen: node cap exceeded"); });
        return std::nullopt;
    }
    log.debug([&] { return "nielsen: " + std::to_string(g.nodes.size()) + " nodes"; });
    if (!decide_sat(g)) return unsat(ProcedureKind::Nielsen);

    std::vector<LiaFormula> arith = red.lia;
    if (arith.empty()) {
        auto w = nielsen_witness(g);
        if (w) {
            if (auto r = finish_nielsen(sys, red, *w, {})) return r;
        }
        return std::nullopt;
    }
    auto cs = build_counter_system(g);
    auto flat = flatten(cs, options.nielsen_schema_cap);
    bool exact = flat.exact;
    for (std::size_t i = 0; i < flat.automata.size(); ++i) {
        if (expired(deadline)) return unknown("resource budget", ProcedureKind::Nielsen);
        auto ff = flat_formula(cs, flat.automata[i], "n!" + std::to_string(i) + "!");
        auto res = lia_check(ff.body, arith);
        if (res.status == LiaResult::Status::ResourceExceeded) {
            exact = false;
            continue;
        }
        if (res.status != LiaResult::Status::Sat) continue;
        auto words = replay_walk(cs, flat.automata[i], ff, res.model, filler_letter(*sys.symbols));
        LiaModel ints;
        for (const auto& [k, v] : res.model)
            if (k.rfind("n!", 0) != 0) ints[k] = v;
        if (auto r = finish_nielsen(sys, red, std::move(words), ints)) return r;
        exact = false;
    }
    if (exact) return unsat(ProcedureKind::Nielsen);
    log.info([] { return std::string("nielsen: inexact lengths, falling back"); });
    return std::nullopt;
}

int atom_id(const AtomPtr& a, std::map<std::string, int>& ids, std::vector<AtomPtr>& atoms) {
    auto [it, inserted] = ids.try_emplace(atom_key(*a), static_cast<int>(atoms.size()));
    if (inserted) atoms.push_back(a);
    return it->second;
}

Prop to_prop(const Formula& f, std::map<std::string, int>& ids, std::vector<AtomPtr>& atoms) {
    switch (f.kind) {
    case Formula::Kind::True: return Prop::top();
    case Formula::Kind::False: return Prop::bottom();
    case Formula::Kind::Atom: return Prop::variable(atom_id(f.atom, ids, atoms));
    case Formula::Kind::Not: return Prop::negate(to_prop(*f.args[0], ids, atoms));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
        std::vector<Prop> kids;
        for (const auto& a : f.args) kids.push_back(to_prop(*a, ids, atoms));
        return f.kind == Formula::Kind::And ? Prop::all(std::move(kids)) : Prop::any(std::move(kids));
    }
    }
    return Prop::top();
}

bool is_theory_atom(const Atom& a) { return a.kind != Atom::Kind::BoolVar; }

std::string quote(const Word& w) { return to_smtlib(*ir::lit(w)); }

std::string int_text(const mpz_class& v) {
    if (v < 0) return "(- " + mpz_class(-v).get_str() + ")";
    return v.get_str();
}

}  // namespace

std::string to_string(Verdict::Status s) {
    switch (s) {
    case Verdict::Status::Sat: return "sat";
    case Verdict::Status::Unsat: return "unsat";
    case Verdict::Status::Unknown: return "unknown";
    }
    return "unknown";
}

ProcedureKind select_procedure(const ConjunctiveSystem& sys) {
    bool only_facts = sys.equations.empty() && sys.disequations.empty() && sys.regular.empty() && sys.lia.empty() &&
                      !sys.regex_facts.empty();
    if (only_facts) return ProcedureKind::RegexEq;
    if (is_quadratic(sys)) return ProcedureKind::Nielsen;
    return ProcedureKind::Stabilization;
}

bool decide_regex_eq(const RegexPtr& lhs, const RegexPtr& rhs, bool negated, RegexCache& cache) {
    return nfa::is_equivalent(cache.get(lhs), cache.get(rhs)) != negated;
}

TheoryResult theory_check(const ConjunctiveSystem& sys, const SolveOptions& options,
                          std::optional<Clock::time_point> deadline) {
    Log log(options);
    ProcedureKind kind = options.procedure ? *options.procedure : select_procedure(sys);
    if (sys.unsupported) return unknown("unsupported: " + *sys.unsupported, kind);
    if (sys.conflict) return unsat(kind);
    if (expired(deadline)) return unknown("resource budget", kind);

    if (kind == ProcedureKind::RegexEq) {
        if (select_procedure(sys) == ProcedureKind::RegexEq) {
            // Every fact was folded into `conflict` when the system was built.
            TheoryResult r;
            r.status = TheoryResult::Status::Sat;
            r.procedure = kind;
            return r;
        }
        log.info([] { return std::string("regex-eq: system has variables, using stabilization"); });
        kind = ProcedureKind::Stabilization;
    }
    if (kind == ProcedureKind::Nielsen) {
        if (is_quadratic(sys)) {
            if (auto r = by_nielsen(sys, options, deadline, log)) return *r;
        } else {
            log.info([] { return std::string("nielsen: system is not quadratic, using stabilization"); });
        }
    } else if (!options.procedure && sys.disequations.empty()) {
        // Substituting definitions can leave a quadratic system behind.
        if (auto r = by_nielsen(sys, options, deadline, log)) return *r;
    }
    return by_stabilization(sys, options, deadline);
}

Verdict solve_assertions(const std::vector<FormulaPtr>& assertions, const SolveOptions& options) {
    Log log(options);
    auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double>(options.timeout_seconds));
    Verdict v;
    FormulaPtr original = ir::conj(assertions);
    FreshNames names;
    Saturated sat = saturate(original, names);

    std::vector<CodePoint> points;
    std::vector<std::pair<CodePoint, CodePoint>> ranges;
    collect_alphabet(*original, points, ranges);
    collect_alphabet(*sat.formula, points, ranges);
    auto table = std::make_shared<const SymbolTable>(SymbolTable::build_separable(points, ranges));
    RegexCache cache(table);

    std::map<std::string, int> ids;
    std::vector<AtomPtr> atoms;
    Prop skeleton = to_prop(*sat.formula, ids, atoms);
    int n = static_cast<int>(atoms.size());
    Cnf cnf = tseitin_encode(skeleton, n);
    Dpll dpll(std::max(cnf.num_vars, n));
    dpll.add_cnf(cnf);
    if (options.seed != 0) {
        std::mt19937_64 rng(options.seed);
        for (int i = 0; i < n; ++i) dpll.set_phase(i, rng() & 1);
    }

    std::set<std::vector<Lit>> seen;
    std::optional<std::string> pending;  // reason of the first unknown check
    SolveOptions cheap = options;
    cheap.stabilization_steps = std::min<std::uint64_t>(options.stabilization_steps, 300);
    cheap.nielsen_node_cap = std::min<std::size_t>(options.nielsen_node_cap, 1024);
    cheap.log = LogLevel::Off;

    auto literals_of = [&](const std::vector<Lit>& lits) {
        std::vector<SignedAtom> out;
        for (Lit l : lits) out.push_back({atoms[lit_var(l)], lit_sign(l)});
        return out;
    };

    while (true) {
        if (expired(deadline)) {
            v.reason = "resource budget";
            return v;
        }
        auto model = dpll.solve();
        if (!model) {
            if (pending) {
                v.reason = *pending;
            } else {
                v.status = Verdict::Status::Unsat;
            }
            return v;
        }
        std::vector<Lit> relevant;
        for (Lit l : relevant_literals(skeleton, *model))
            if (lit_var(l) < n && is_theory_atom(*atoms[lit_var(l)])) relevant.push_back(l);
        std::sort(relevant.begin(), relevant.end());
        if (!seen.insert(relevant).second) throw std::logic_error("propositional assignment revisited");

        ++v.theory_checks;
        auto sys = assignment_to_system(literals_of(relevant), cache);
        auto res = theory_check(sys, options, deadline);
        log.debug([&] {
            return "theory check " + std::to_string(v.theory_checks) + " (" + procedure_name(res.procedure) +
                   ", " + std::to_string(relevant.size()) + " literals): " +
                   (res.status == TheoryResult::Status::Sat     ? "sat"
                    : res.status == TheoryResult::Status::Unsat ? "unsat"
                                                                : "unknown " + res.reason);
        });

        if (res.status == TheoryResult::Status::Sat) {
            Assignment a;
            a.strings = res.strings;
            for (const auto& [k, val] : res.ints)
                if (!k.empty() && k.front() != '|') a.ints[k] = val;
            for (int i = 0; i < n; ++i)
                if (atoms[i]->kind == Atom::Kind::BoolVar) a.bools[atoms[i]->name] = (*model)[i];
            if (eval_formula(*original, a)) {
                v.status = Verdict::Status::Sat;
                v.model = std::move(a);
                return v;
            }
            log.info([] { return std::string("theory model fails the input formula"); });
            res.status = TheoryResult::Status::Unknown;
            res.reason = "model check failed";
        }

        std::vector<Lit> block = relevant;
        if (res.status == TheoryResult::Status::Unsat && options.minimize_conflicts && block.size() <= 40) {
            auto until = std::min(deadline, Clock::now() + std::chrono::milliseconds(200));
            for (std::size_t i = 0; i < block.size() && !expired(until);) {
                std::vector<Lit> without = block;
                without.erase(without.begin() + static_cast<long>(i));
                auto r = theory_check(assignment_to_system(literals_of(without), cache), cheap, until);
                if (r.status == TheoryResult::Status::Unsat)
                    block = std::move(without);
                else
                    ++i;
            }
        }
        if (res.status == TheoryResult::Status::Unknown && !pending) pending = res.reason;
        std::vector<Lit> clause;
        for (Lit l : block) clause.push_back(-l);
        dpll.add_clause(std::move(clause));
    }
}

std::vector<Verdict> solve_script(const Script& script, const SolveOptions& options) {
    std::vector<Verdict> out;
    std::vector<FormulaPtr> asserted;
    for (const auto& c : script.commands) {
        if (c.kind == Command::Kind::Assert) asserted.push_back(c.formula);
        if (c.kind == Command::Kind::CheckSat) out.push_back(solve_assertions(asserted, options));
    }
    return out;
}

std::string format_model(const Verdict& v, const std::vector<std::pair<std::string, Sort>>& declarations) {
    std::ostringstream os;
    os << "(\n";
    for (const auto& [name, sort] : declarations) {
        os << "  (define-fun " << name << " () " << sort_name(sort) << ' ';
        switch (sort) {
        case Sort::String: {
            auto it = v.model.strings.find(name);
            os << quote(it == v.model.strings.end() ? Word{} : it->second);
            break;
        }
        case Sort::Int: {
            auto it = v.model.ints.find(name);
            os << int_text(it == v.model.ints.end() ? mpz_class(0) : it->second);
            break;
        }
        case Sort::Bool: {
            auto it = v.model.bools.find(name);
            os << ((it != v.model.bools.end() && it->second) ? "true" : "false");
            break;
        }
        case Sort::RegLan: os << "re.none"; break;
        }
        os << ")\n";
    }
    os << ")";
    return os.str();
}

}  // namespace strsat
