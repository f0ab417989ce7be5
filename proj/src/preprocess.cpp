#include "strsat/preprocess.hpp"

#include <numeric>

namespace strsat {

std::string procedure_name(ProcedureKind k) {
    switch (k) {
        case ProcedureKind::Stabilization: return "stabilization";
        case ProcedureKind::Nielsen: return "nielsen";
        case ProcedureKind::RegexEq: return "regex-eq";
    }
    return "?";
}

namespace {

// Removes the common prefix of two sides; false on a letter clash.
bool trim_front(Side& a, Side& b) {
    std::size_t i = 0, j = 0;
    Side ra, rb;
    while (i < a.size() && j < b.size()) {
        Item& x = a[i];
        Item& y = b[j];
        if (x.is_var || y.is_var) {
            if (x.is_var && y.is_var && x.var == y.var) {
                ++i, ++j;
                continue;
            }
            break;
        }
        std::size_t k = 0;
        while (k < x.lit.size() && k < y.lit.size() && x.lit[k] == y.lit[k]) ++k;
        if (k < x.lit.size() && k < y.lit.size()) return false;
        x.lit.erase(x.lit.begin(), x.lit.begin() + static_cast<long>(k));
        y.lit.erase(y.lit.begin(), y.lit.begin() + static_cast<long>(k));
        if (x.lit.empty()) ++i;
        if (y.lit.empty()) ++j;
    }
    a.erase(a.begin(), a.begin() + static_cast<long>(i));
    b.erase(b.begin(), b.begin() + static_cast<long>(j));
    return true;
}

Side reversed(Side s) {
    std::reverse(s.begin(), s.end());
    for (auto& it : s)
        if (!it.is_var) std::reverse(it.lit.begin(), it.lit.end());
    return s;
}

}  // namespace

bool trim_equation(Equation& e) {
    if (!trim_front(e.lhs, e.rhs)) return false;
    Side l = reversed(e.lhs), r = reversed(e.rhs);
    if (!trim_front(l, r)) return false;
    e.lhs = reversed(std::move(l));
    e.rhs = reversed(std::move(r));
    if (e.lhs.empty() != e.rhs.empty()) {
        const Side& other = e.lhs.empty() ? e.rhs : e.lhs;
        for (const auto& it : other)
            if (!it.is_var) return false;
    }
    return true;
}

bool disjoint(const SemilinearLengthSet& a, const SemilinearLengthSet& b) {
    for (const auto& p : a.progressions) {
        for (const auto& q : b.progressions) {
            if (p.period == 0 && q.period == 0) {
                if (p.offset == q.offset) return false;
            } else if (p.period == 0) {
                if (p.offset >= q.offset && (p.offset - q.offset) % q.period == 0) return false;
            } else if (q.period == 0) {
                if (q.offset >= p.offset && (q.offset - p.offset) % p.period == 0) return false;
            } else {
                std::uint64_t start = std::max(p.offset, q.offset);
                std::uint64_t l = std::lcm(p.period, q.period);
                for (std::uint64_t n = start; n < start + l; ++n)
                    if ((n - p.offset) % p.period == 0 && (n - q.offset) % q.period == 0) return false;
            }
        }
    }
    return true;
}

SemilinearLengthSet side_lengths(const ConjunctiveSystem& sys, const Side& s) {
    std::vector<Nfa> parts;
    std::uint64_t fixed = 0;
    for (const auto& it : s) {
        if (it.is_var)
            parts.push_back(sys.language(it.var));
        else
            fixed += it.lit.size();
    }
    parts.push_back(nfa::word(sys.alphabet_size(), std::vector<Symbol>(fixed, 0)));
    return nfa::length_set(nfa::reduce(nfa::concat(parts)));
}

namespace {

enum class Step { None, Changed, Unsat };

class Pipeline {
public:
    Pipeline(ConjunctiveSystem& sys, ProcedureKind target, const PreprocessOptions& options)
        : sys_(sys), full_(target == ProcedureKind::Stabilization), options_(options) {}

    PreprocessResult::Status run(std::string& reason) {
        for (int round = 0; round < options_.max_rounds; ++round) {
            Step s = once(reason);
            if (s == Step::Unsat) return PreprocessResult::Status::Unsat;
            if (s == Step::None) break;
        }
        return PreprocessResult::Status::Reduced;
    }

private:
    Step once(std::string& reason) {
        Step s;
        if ((s = normalize(reason)) != Step::None) return s;
        if ((s = empty_sides(reason)) != Step::None) return s;
        if ((s = var_var(reason)) != Step::None) return s;
        if ((s = ground_definition(reason)) != Step::None) return s;
        if ((s = unique_definition()) != Step::None) return s;
        if (full_ && (s = length_split()) != Step::None) return s;
        if ((s = disequations(reason)) != Step::None) return s;
        return unsat_patterns(reason);
    }

    void eliminate(const std::string& x, const Side& value) {
        substitute(sys_, x, value);
        sys_.trail.push_back({ModelStep::Kind::Define, x, value, {}, {}});
        define_length(sys_, x, value);
        sys_.regular.erase(x);
    }

    Step normalize(std::string& reason) {
        bool changed = false;
        std::vector<Equation> keep;
        for (auto& e : sys_.equations) {
            Equation t = e;
            if (!trim_equation(t)) {
                reason = "letter clash in " + to_string(e.lhs) + " = " + to_string(e.rhs);
                return Step::Unsat;
            }
            if (!(t.lhs == e.lhs && t.rhs == e.rhs)) changed = true;
            if (t.lhs.empty() && t.rhs.empty()) continue;
            keep.push_back(std::move(t));
        }
        sys_.equations = std::move(keep);
        std::vector<Equation> dkeep;
        for (auto& e : sys_.disequations) {
            Equation t = e;
            if (!trim_equation(t)) {
                changed = true;  // sides always differ
                continue;
            }
            if (t.lhs.empty() && t.rhs.empty()) {
                reason = "disequation between identical sides";
                return Step::Unsat;
            }
            if (!(t.lhs == e.lhs && t.rhs == e.rhs)) changed = true;
            dkeep.push_back(std::move(t));
        }
        sys_.disequations = std::move(dkeep);
        return changed ? Step::Changed : Step::None;
    }

    Step empty_sides(std::string& reason) {
        for (std::size_t k = 0; k < sys_.equations.size(); ++k) {
            const Equation& e = sys_.equations[k];
            if (!e.lhs.empty() && !e.rhs.empty()) continue;
            Side other = e.lhs.empty() ? e.rhs : e.lhs;
            sys_.equations.erase(sys_.equations.begin() + static_cast<long>(k));
            std::set<std::string> vars;
            collect_vars(other, vars);
            for (const auto& x : vars) {
                if (sys_.has_constraint(x) && !nfa::accepts_epsilon(sys_.language(x))) {
                    reason = "empty word outside the language of " + x;
                    return Step::Unsat;
                }
                eliminate(x, {});
            }
            return Step::Changed;
        }
        return Step::None;
    }

    Step var_var(std::string& reason) {
        for (std::size_t k = 0; k < sys_.equations.size(); ++k) {
            const Equation& e = sys_.equations[k];
            if (e.lhs.size() != 1 || e.rhs.size() != 1 || !e.lhs[0].is_var || !e.rhs[0].is_var) continue;
            std::string x = e.lhs[0].var, y = e.rhs[0].var;
            sys_.equations.erase(sys_.equations.begin() + static_cast<long>(k));
            if (x == y) return Step::Changed;
            if (sys_.has_constraint(x)) {
                Nfa lx = sys_.language(x);
                sys_.restrict(y, lx);
                if (nfa::is_empty(sys_.language(y))) {
                    reason = "disjoint languages of " + x + " and " + y;
                    return Step::Unsat;
                }
            }
            if (sys_.len_vars.count(x)) sys_.len_vars.insert(y);
            eliminate(x, {Item::variable(y)});
            return Step::Changed;
        }
        return Step::None;
    }

    Step ground_definition(std::string& reason) {
        auto occ = sys_.occurrences();
        for (std::size_t k = 0; k < sys_.equations.size(); ++k) {
            Equation e = sys_.equations[k];
            for (int side = 0; side < 2; ++side) {
                const Side& a = side ? e.rhs : e.lhs;
                const Side& b = side ? e.lhs : e.rhs;
                if (a.size() != 1 || !a[0].is_var || !is_ground(b)) continue;
                std::string x = a[0].var;
                if (!full_ && occ[x] <= 1) continue;
                Word w = ground_word(b);
                Nfa single = nfa::word(sys_.alphabet_size(), sys_.symbols->encode(w));
                sys_.equations.erase(sys_.equations.begin() + static_cast<long>(k));
                if (sys_.has_constraint(x) && !sys_.language(x).accepts(sys_.symbols->encode(w))) {
                    reason = "literal outside the language of " + x;
                    return Step::Unsat;
                }
                if (occ[x] > 1) {
                    eliminate(x, b);
                } else {
                    sys_.restrict(x, single);
                }
                return Step::Changed;
            }
        }
        return Step::None;
    }

    // x = t with x occurring nowhere else and unconstrained: x := t.
    Step unique_definition() {
        auto occ = sys_.occurrences();
        for (std::size_t k = 0; k < sys_.equations.size(); ++k) {
            Equation e = sys_.equations[k];
            for (int side = 0; side < 2; ++side) {
                const Side& a = side ? e.rhs : e.lhs;
                const Side& b = side ? e.lhs : e.rhs;
                if (a.size() != 1 || !a[0].is_var) continue;
                const std::string& x = a[0].var;
                if (occ[x] != 1 || sys_.has_constraint(x)) continue;
                sys_.equations.erase(sys_.equations.begin() + static_cast<long>(k));
                sys_.trail.push_back({ModelStep::Kind::Define, x, b, {}, {}});
                define_length(sys_, x, b);
                return Step::Changed;
            }
        }
        return Step::None;
    }

    std::optional<std::uint64_t> fixed_length(const Side& s) {
        std::uint64_t n = 0;
        for (const auto& it : s) {
            if (!it.is_var) {
                n += it.lit.size();
                continue;
            }
            auto ls = nfa::length_set(sys_.language(it.var));
            if (ls.progressions.size() != 1 || ls.progressions[0].period != 0) return std::nullopt;
            n += ls.progressions[0].offset;
        }
        return n;
    }

    bool lengths_equal(const Side& a, const Side& b) {
        LinExpr d = side_length(a) - side_length(b);
        if (d.coef.empty()) return d.constant == 0;
        auto fa = fixed_length(a), fb = fixed_length(b);
        if (fa && fb) return *fa == *fb;
        if (sys_.lia.empty() || lia_checks_ >= options_.lia_entailment_checks) return false;
        for (const auto& [v, _] : d.coef)
            if (!sys_.len_vars.count(v.substr(1, v.size() - 2))) return false;
        ++lia_checks_;
        std::vector<LiaFormula> fs = sys_.lia;
        fs.insert(fs.end(), sys_.lia_axioms.begin(), sys_.lia_axioms.end());
        fs.push_back(lia::ne(d, LinExpr{}));
        LiaOptions o;
        o.node_limit = 500;
        return lia_check(lia::conj(fs), {}, o).status == LiaResult::Status::Unsat;
    }

    Step length_split() {
        for (std::size_t k = 0; k < sys_.equations.size(); ++k) {
            Equation e = sys_.equations[k];
            std::size_t n = e.lhs.size(), m = e.rhs.size();
            for (std::size_t i = 1; i < n; ++i) {
                for (std::size_t j = 1; j < m && i + j <= 6; ++j) {
                    Side a(e.lhs.begin(), e.lhs.begin() + static_cast<long>(i));
                    Side g(e.rhs.begin(), e.rhs.begin() + static_cast<long>(j));
                    if (!lengths_equal(a, g)) continue;
                    Side b(e.lhs.begin() + static_cast<long>(i), e.lhs.end());
                    Side d(e.rhs.begin() + static_cast<long>(j), e.rhs.end());
                    sys_.equations.erase(sys_.equations.begin() + static_cast<long>(k));
                    sys_.equations.push_back({std::move(a), std::move(g)});
                    sys_.equations.push_back({std::move(b), std::move(d)});
                    return Step::Changed;
                }
            }
        }
        return Step::None;
    }

    Step disequations(std::string& reason) {
        for (std::size_t k = 0; k < sys_.disequations.size(); ++k) {
            const Equation& e = sys_.disequations[k];
            if (to_string(e.lhs) == to_string(e.rhs)) {
                reason = "disequation between identical sides";
                return Step::Unsat;
            }
            if (is_ground(e.lhs) && is_ground(e.rhs)) {
                if (ground_word(e.lhs) == ground_word(e.rhs)) {
                    reason = "ground disequation between equal words";
                    return Step::Unsat;
                }
                sys_.disequations.erase(sys_.disequations.begin() + static_cast<long>(k));
                return Step::Changed;
            }
            if (disjoint(side_lengths(sys_, e.lhs), side_lengths(sys_, e.rhs))) {
                sys_.disequations.erase(sys_.disequations.begin() + static_cast<long>(k));
                return Step::Changed;
            }
            if (!full_) continue;
            for (int side = 0; side < 2; ++side) {
                const Side& a = side ? e.rhs : e.lhs;
                const Side& b = side ? e.lhs : e.rhs;
                if (a.size() != 1 || !a[0].is_var || !is_ground(b)) continue;
                std::string x = a[0].var;
                Nfa avoid = nfa::complement(nfa::word(sys_.alphabet_size(), sys_.symbols->encode(ground_word(b))));
                sys_.disequations.erase(sys_.disequations.begin() + static_cast<long>(k));
                sys_.restrict(x, avoid);
                if (nfa::is_empty(sys_.language(x))) {
                    reason = "language of " + x + " is a single excluded word";
                    return Step::Unsat;
                }
                return Step::Changed;
            }
        }
        return Step::None;
    }

    Step unsat_patterns(std::string& reason) {
        for (const auto& [v, lang] : sys_.regular) {
            if (nfa::is_empty(lang)) {
                reason = "empty language for " + v;
                return Step::Unsat;
            }
        }
        for (const auto& e : sys_.equations) {
            if (is_ground(e.lhs) && is_ground(e.rhs) && ground_word(e.lhs) != ground_word(e.rhs)) {
                reason = "ground equation between distinct words";
                return Step::Unsat;
            }
            if (disjoint(side_lengths(sys_, e.lhs), side_lengths(sys_, e.rhs))) {
                reason = "sides of " + to_string(e.lhs) + " = " + to_string(e.rhs) + " have disjoint lengths";
                return Step::Unsat;
            }
        }
        return Step::None;
    }

    ConjunctiveSystem& sys_;
    bool full_;
    const PreprocessOptions& options_;
    int lia_checks_ = 0;
};

}  // namespace

PreprocessResult preprocess(ConjunctiveSystem sys, ProcedureKind target, const PreprocessOptions& options) {
    PreprocessResult out;
    if (target == ProcedureKind::RegexEq) {
        out.system = std::move(sys);
        return out;
    }
    Pipeline p(sys, target, options);
    out.status = p.run(out.reason);
    out.system = std::move(sys);
    return out;
}

}  // namespace strsat
