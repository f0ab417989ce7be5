#include "strsat/skeleton.hpp"

#include <algorithm>
#include <set>

namespace strsat {

Prop Prop::negate(Prop p) {
    if (p.kind == Kind::True) return bottom();
    if (p.kind == Kind::False) return top();
    if (p.kind == Kind::Not) return std::move(p.args[0]);
    Prop out{Kind::Not, -1, {}};
    out.args.push_back(std::move(p));
    return out;
}

Prop Prop::all(std::vector<Prop> ps) {
    Prop out{Kind::And, -1, {}};
    for (auto& p : ps) {
        if (p.kind == Kind::False) return bottom();
        if (p.kind == Kind::True) continue;
        if (p.kind == Kind::And) {
            for (auto& q : p.args) out.args.push_back(std::move(q));
        } else {
            out.args.push_back(std::move(p));
        }
    }
    if (out.args.empty()) return top();
    if (out.args.size() == 1) return std::move(out.args[0]);
    return out;
}

Prop Prop::any(std::vector<Prop> ps) {
    Prop out{Kind::Or, -1, {}};
    for (auto& p : ps) {
        if (p.kind == Kind::True) return top();
        if (p.kind == Kind::False) continue;
        if (p.kind == Kind::Or) {
            for (auto& q : p.args) out.args.push_back(std::move(q));
        } else {
            out.args.push_back(std::move(p));
        }
    }
    if (out.args.empty()) return bottom();
    if (out.args.size() == 1) return std::move(out.args[0]);
    return out;
}

bool Prop::evaluate(const std::vector<bool>& a) const {
    switch (kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Var: return a[var];
        case Kind::Not: return !args[0].evaluate(a);
        case Kind::And:
            for (const auto& p : args)
                if (!p.evaluate(a)) return false;
            return true;
        case Kind::Or:
            for (const auto& p : args)
                if (p.evaluate(a)) return true;
            return false;
    }
    return false;
}

namespace {

class Encoder {
public:
    explicit Encoder(Cnf& cnf) : cnf_(cnf) {}

    // Literal equivalent to p, adding defining clauses.
    Lit literal(const Prop& p) {
        switch (p.kind) {
            case Prop::Kind::True: return constant(true);
            case Prop::Kind::False: return constant(false);
            case Prop::Kind::Var: return pos(p.var);
            case Prop::Kind::Not: return -literal(p.args[0]);
            case Prop::Kind::And:
            case Prop::Kind::Or: {
                std::vector<Lit> kids;
                for (const auto& q : p.args) kids.push_back(literal(q));
                int v = cnf_.num_vars++;
                Lit g = pos(v);
                bool is_and = p.kind == Prop::Kind::And;
                std::vector<Lit> big{is_and ? g : -g};
                for (Lit k : kids) {
                    // and: g -> k;  or: k -> g
                    if (is_and)
                        cnf_.clauses.push_back({-g, k});
                    else
                        cnf_.clauses.push_back({-k, g});
                    big.push_back(is_and ? -k : k);
                }
                cnf_.clauses.push_back(big);
                return g;
            }
        }
        return constant(true);
    }

    void assert_top(const Prop& p) {
        if (p.kind == Prop::Kind::True) return;
        if (p.kind == Prop::Kind::False) {
            cnf_.clauses.push_back({});
            return;
        }
        if (p.kind == Prop::Kind::And) {
            for (const auto& q : p.args) assert_top(q);
            return;
        }
        if (p.kind == Prop::Kind::Or) {
            std::vector<Lit> clause;
            for (const auto& q : p.args) clause.push_back(literal(q));
            cnf_.clauses.push_back(std::move(clause));
            return;
        }
        cnf_.clauses.push_back({literal(p)});
    }

private:
    Lit constant(bool value) {
        if (const_var_ < 0) {
            const_var_ = cnf_.num_vars++;
            cnf_.clauses.push_back({pos(const_var_)});
        }
        return value ? pos(const_var_) : negl(const_var_);
    }

    Cnf& cnf_;
    int const_var_ = -1;
};

std::size_t slot(Lit l) { return static_cast<std::size_t>(2 * lit_var(l) + (l > 0 ? 0 : 1)); }

}  // namespace

Cnf tseitin_encode(const Prop& p, int num_atoms) {
    Cnf cnf;
    cnf.num_vars = num_atoms;
    Encoder(cnf).assert_top(p);
    return cnf;
}

Dpll::Dpll(int num_vars)
    : watches_(2 * static_cast<std::size_t>(num_vars)), value_(num_vars, -1), phase_(num_vars, true) {}

void Dpll::set_phase(int var, bool value) { phase_[var] = value; }

void Dpll::add_cnf(const Cnf& cnf) {
    for (const auto& c : cnf.clauses) add_clause(c);
}

void Dpll::add_clause(std::vector<Lit> clause) {
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (std::size_t i = 0; i + 1 < clause.size(); ++i)
        for (std::size_t j = i + 1; j < clause.size(); ++j)
            if (clause[i] == -clause[j]) return;  // tautology
    if (clause.empty()) {
        empty_clause_ = true;
        return;
    }
    if (clause.size() == 1) {
        units_.push_back(clause[0]);
        return;
    }
    std::size_t idx = clauses_.size();
    watches_[slot(clause[0])].push_back(static_cast<int>(idx));
    watches_[slot(clause[1])].push_back(static_cast<int>(idx));
    clauses_.push_back(std::move(clause));
}

int Dpll::value_of(Lit l) const {
    int v = value_[lit_var(l)];
    if (v < 0) return -1;
    return l > 0 ? v : 1 - v;
}

void Dpll::assign(Lit l) {
    value_[lit_var(l)] = l > 0 ? 1 : 0;
    trail_.push_back(l);
}

void Dpll::undo_to(std::size_t size) {
    while (trail_.size() > size) {
        value_[lit_var(trail_.back())] = -1;
        trail_.pop_back();
    }
    qhead_ = std::min(qhead_, size);
}

bool Dpll::propagate() {
    while (qhead_ < trail_.size()) {
        Lit falsified = -trail_[qhead_++];
        auto& ws = watches_[slot(falsified)];
        for (std::size_t i = 0; i < ws.size();) {
            auto& c = clauses_[ws[i]];
            if (c[0] == falsified) std::swap(c[0], c[1]);
            if (value_of(c[0]) == 1) {
                ++i;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < c.size(); ++k) {
                if (value_of(c[k]) != 0) {
                    std::swap(c[1], c[k]);
                    watches_[slot(c[1])].push_back(ws[i]);
                    ws[i] = ws.back();
                    ws.pop_back();
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            int v0 = value_of(c[0]);
            if (v0 == 0) return false;
            if (v0 == -1) assign(c[0]);
            ++i;
        }
    }
    return true;
}

std::optional<std::vector<bool>> Dpll::solve() {
    if (empty_clause_) return std::nullopt;
    undo_to(0);
    qhead_ = 0;
    for (Lit u : units_) {
        int v = value_of(u);
        if (v == 0) return std::nullopt;
        if (v == -1) assign(u);
    }
    struct Level {
        std::size_t trail_size;
        Lit decision;
        bool flipped;
    };
    std::vector<Level> levels;
    int next_var = 0;
    while (true) {
        if (!propagate()) {
            while (!levels.empty() && levels.back().flipped) levels.pop_back();
            if (levels.empty()) return std::nullopt;
            Level& lv = levels.back();
            undo_to(lv.trail_size);
            lv.flipped = true;
            lv.decision = -lv.decision;
            assign(lv.decision);
            next_var = 0;
            continue;
        }
        while (next_var < num_vars() && value_[next_var] >= 0) ++next_var;
        if (next_var == num_vars()) {
            std::vector<bool> out(num_vars());
            for (int v = 0; v < num_vars(); ++v) out[v] = value_[v] == 1;
            return out;
        }
        ++decisions_;
        Lit d = phase_[next_var] ? pos(next_var) : negl(next_var);
        levels.push_back({trail_.size(), d, false});
        assign(d);
    }
}

namespace {

void collect_relevant(const Prop& p, bool want, const std::vector<bool>& a, std::vector<Lit>& out,
                      std::set<Lit>& seen) {
    switch (p.kind) {
        case Prop::Kind::True:
        case Prop::Kind::False: return;
        case Prop::Kind::Var: {
            Lit l = a[p.var] ? pos(p.var) : negl(p.var);
            if (seen.insert(l).second) out.push_back(l);
            return;
        }
        case Prop::Kind::Not: collect_relevant(p.args[0], !want, a, out, seen); return;
        case Prop::Kind::And:
        case Prop::Kind::Or: {
            // A conjunction made true (or a disjunction made false) needs every child.
            bool every = (p.kind == Prop::Kind::And) == want;
            if (every) {
                for (const auto& q : p.args) collect_relevant(q, want, a, out, seen);
                return;
            }
            for (const auto& q : p.args)
                if (q.evaluate(a) == want) {
                    collect_relevant(q, want, a, out, seen);
                    return;
                }
            return;
        }
    }
}

}  // namespace

std::vector<Lit> relevant_literals(const Prop& p, const std::vector<bool>& assignment) {
    std::vector<Lit> out;
    std::set<Lit> seen;
    collect_relevant(p, true, assignment, out, seen);
    return out;
}

}  // namespace strsat
