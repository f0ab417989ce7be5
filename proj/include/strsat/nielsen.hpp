#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strsat/lia.hpp"
#include "strsat/system.hpp"

namespace strsat {

/// A variable or a single letter.
struct NielsenItem {
    bool is_var = false;
    std::string var;
    CodePoint letter = 0;

    static NielsenItem variable(std::string v);
    static NielsenItem symbol(CodePoint c);

    friend bool operator==(const NielsenItem&, const NielsenItem&) = default;
    friend auto operator<=>(const NielsenItem&, const NielsenItem&) = default;
};

using NielsenSide = std::vector<NielsenItem>;

struct NielsenEquation {
    NielsenSide lhs, rhs;
    friend bool operator==(const NielsenEquation&, const NielsenEquation&) = default;
    friend auto operator<=>(const NielsenEquation&, const NielsenEquation&) = default;
};

/// Canonical system: common leading items trimmed, ε = ε dropped, each
/// equation oriented, equations sorted without duplicates.
struct NielsenNode {
    std::vector<NielsenEquation> equations;
    bool terminal() const { return equations.empty(); }
    friend bool operator==(const NielsenNode&, const NielsenNode&) = default;
    friend auto operator<=>(const NielsenNode&, const NielsenNode&) = default;
};

/// nullopt when the equations clash on a letter.
std::optional<NielsenNode> canonical_node(std::vector<NielsenEquation> equations);

struct NielsenLabel {
    enum class Kind { PrependLetter, PrependVar, Erase };
    Kind kind = Kind::Erase;
    std::string var;      // the substituted variable x
    CodePoint letter = 0; // x ↦ a·x
    std::string other;    // x ↦ y·x
};

std::string to_string(const NielsenLabel& l);

struct NielsenEdge {
    std::size_t src = 0, dst = 0;
    NielsenLabel label;
};

struct NielsenGraph {
    std::vector<NielsenNode> nodes;
    std::vector<NielsenEdge> edges;
    std::size_t initial = 0;
    std::optional<std::size_t> terminal;
    std::vector<std::string> variables;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// At most two occurrences of every variable over all equation sides, no
/// disequations, no nontrivial regular constraints.
bool is_quadratic(const ConjunctiveSystem& sys);

std::optional<NielsenNode> initial_node(const ConjunctiveSystem& sys);

/// Breadth-first closure under the Nielsen rules applied to the leading pair
/// of the first equation. Throws CapExceeded beyond `node_cap` nodes.
NielsenGraph build_graph(const NielsenNode& initial, std::size_t node_cap = 4096);

bool decide_sat(const NielsenGraph& g);

/// Locations are the graph nodes that lie on some path from the initial node
/// to the terminal one; every variable has one counter.
struct CounterSystem {
    std::size_t locations = 0;
    std::size_t initial = 0;
    std::optional<std::size_t> terminal;
    std::vector<std::string> counters;
    std::vector<NielsenEdge> transitions;
};

CounterSystem build_counter_system(const NielsenGraph& g);

/// One walk shape: parts in order from the initial location; a repeated part
/// is a cycle taken any number of times.
struct FlatPart {
    std::vector<std::size_t> transitions;
    bool repeated = false;
};

struct FlatAutomaton {
    std::vector<FlatPart> parts;
};

struct Flattening {
    std::vector<FlatAutomaton> automata;
    bool exact = true;  // the automata cover every walk of the counter system
};

Flattening flatten(const CounterSystem& cs, std::size_t schema_cap = 512);

/// Length formula of one flat automaton over the variables |x|.
struct FlatFormula {
    LiaFormula body;                       // free in |x| and the hidden names
    std::vector<std::string> hidden;       // loop counts and final lengths
    std::vector<std::string> loop_counts;  // one per repeated part, in order
    std::map<std::string, std::string> final_length;  // variable -> name
};

FlatFormula flat_formula(const CounterSystem& cs, const FlatAutomaton& fa, const std::string& prefix);
LiaFormula flat_to_lia(const CounterSystem& cs, const FlatAutomaton& fa);
/// Disjunction over all automata.
LiaFormula length_lemma(const CounterSystem& cs, const Flattening& f);

/// Words along the walk given by a model of flat_formula (loop counts and
/// final lengths), for every counter.
std::map<std::string, Word> replay_walk(const CounterSystem& cs, const FlatAutomaton& fa, const FlatFormula& ff,
                                        const LiaModel& model, CodePoint filler = 'a');

/// A model along the shortest path to the terminal node, with empty words for
/// variables that are free there.
std::optional<std::map<std::string, Word>> nielsen_witness(const NielsenGraph& g);

/// "src dst label" lines.
std::string dump_edges(const NielsenGraph& g);

}  // namespace strsat
