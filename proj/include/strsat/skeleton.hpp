#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace strsat {

/// Propositional formula over numbered variables. Both the string skeleton
/// and LIA formulas are reduced to this shape before SAT search.
struct Prop {
    enum class Kind { True, False, Var, Not, And, Or };
    Kind kind = Kind::True;
    int var = -1;
    std::vector<Prop> args;

    static Prop top() { return {}; }
    static Prop bottom() { return {Kind::False, -1, {}}; }
    static Prop variable(int v) { return {Kind::Var, v, {}}; }
    static Prop negate(Prop p);
    static Prop all(std::vector<Prop> ps);
    static Prop any(std::vector<Prop> ps);

    bool evaluate(const std::vector<bool>& assignment) const;
};

/// Literal over variable v: v + 1 when positive, -(v + 1) when negative.
using Lit = int;

inline Lit pos(int v) { return v + 1; }
inline Lit negl(int v) { return -(v + 1); }
inline int lit_var(Lit l) { return (l > 0 ? l : -l) - 1; }
inline bool lit_sign(Lit l) { return l > 0; }

struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<Lit>> clauses;
};

/// Tseitin encoding. Variables below `num_atoms` are the formula's own; one
/// auxiliary variable is added per compound subformula. Top-level conjuncts
/// that are literals or clauses are asserted directly.
Cnf tseitin_encode(const Prop& p, int num_atoms);

/// Minimal DPLL: unit propagation over watched literals, chronological
/// backtracking, decisions in variable order with a per-variable phase.
class Dpll {
public:
    explicit Dpll(int num_vars);

    int num_vars() const { return static_cast<int>(value_.size()); }
    void add_clause(std::vector<Lit> clause);
    void add_cnf(const Cnf& cnf);
    void set_phase(int var, bool value);

    /// Searches from scratch; returns a total assignment or nullopt when the
    /// clause set is unsatisfiable.
    std::optional<std::vector<bool>> solve();

    std::uint64_t decisions() const { return decisions_; }

private:
    bool propagate();
    void assign(Lit l);
    void undo_to(std::size_t trail_size);
    int value_of(Lit l) const;  // 1 true, 0 false, -1 unassigned

    std::vector<std::vector<Lit>> clauses_;
    std::vector<std::vector<int>> watches_;  // indexed by literal slot
    std::vector<int> value_;                 // -1, 0, 1
    std::vector<bool> phase_;
    std::vector<Lit> trail_;
    std::size_t qhead_ = 0;
    bool empty_clause_ = false;
    std::vector<Lit> units_;
    std::uint64_t decisions_ = 0;
};

/// Literals of a total assignment that already make `p` true: all conjuncts,
/// the first satisfied disjunct. Returned in first-visit order, deduplicated.
std::vector<Lit> relevant_literals(const Prop& p, const std::vector<bool>& assignment);

}  // namespace strsat
