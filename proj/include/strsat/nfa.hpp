#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "strsat/symbols.hpp"

namespace strsat {

using State = std::uint32_t;

struct Move {
    Symbol symbol;
    State target;

    friend auto operator<=>(const Move&, const Move&) = default;
};

/// Nondeterministic finite automaton without epsilon transitions.
///
/// Outgoing moves of every state are kept sorted by (symbol, target), so
/// iteration order and therefore every derived construction is reproducible.
class Nfa {
public:
    Nfa() = default;
    explicit Nfa(std::size_t alphabet_size, std::size_t states = 0)
        : alphabet_size_(alphabet_size), delta_(states), final_(states, false) {}

    std::size_t alphabet_size() const { return alphabet_size_; }
    std::size_t num_states() const { return delta_.size(); }
    std::size_t num_transitions() const;

    State add_state();
    void add_transition(State from, Symbol symbol, State to);
    void add_initial(State s);
    void set_final(State s, bool value = true);

    const std::vector<Move>& moves(State s) const { return delta_[s]; }
    const std::vector<State>& initial() const { return initial_; }
    bool is_final(State s) const { return final_[s]; }
    std::vector<State> final_states() const;

    bool accepts(std::span<const Symbol> word) const;
    bool is_deterministic() const;

    void print(std::ostream& os) const;

private:
    std::size_t alphabet_size_ = 0;
    std::vector<std::vector<Move>> delta_;
    std::vector<State> initial_;
    std::vector<bool> final_;
};

std::ostream& operator<<(std::ostream& os, const Nfa& a);

/// Finite union of arithmetic progressions {offset + period*k | k >= 0}.
/// A period of 0 denotes the singleton {offset}.
struct SemilinearLengthSet {
    struct Progression {
        std::uint64_t offset;
        std::uint64_t period;

        friend auto operator<=>(const Progression&, const Progression&) = default;
    };

    std::vector<Progression> progressions;  // sorted, unique

    bool contains(std::uint64_t n) const;
    bool empty() const { return progressions.empty(); }
    std::optional<std::uint64_t> min() const;
};

namespace nfa {

Nfa empty_language(std::size_t alphabet_size);
Nfa epsilon(std::size_t alphabet_size);
Nfa universal(std::size_t alphabet_size);
Nfa any_symbol(std::size_t alphabet_size);
Nfa symbols(std::size_t alphabet_size, std::span<const Symbol> letters);
Nfa word(std::size_t alphabet_size, std::span<const Symbol> letters);

/// Removes states that are unreachable or cannot reach a final state.
Nfa trim(const Nfa& a);
/// Equivalent automaton with exactly one initial state.
Nfa with_single_initial(const Nfa& a);

Nfa intersect(const Nfa& a, const Nfa& b);
Nfa unite(const Nfa& a, const Nfa& b);
Nfa concat(const Nfa& a, const Nfa& b);
Nfa concat(std::span<const Nfa> parts);
Nfa star(const Nfa& a);
Nfa plus(const Nfa& a);
Nfa optional(const Nfa& a);

/// Reachable subset construction; the result may be incomplete.
Nfa determinize(const Nfa& a);
/// Adds a sink state so that every state has a move on every symbol.
Nfa complete(const Nfa& a);
/// Determinizes, completes and flips final states.
Nfa complement(const Nfa& a);
/// Moore-style partition refinement; requires a complete deterministic input.
Nfa minimize_dfa(const Nfa& a);

/// Direct (forward) simulation preorder: sim[s][t] iff t simulates s.
std::vector<std::vector<bool>> direct_simulation(const Nfa& a);
/// Quotient by simulation equivalence, after trimming.
Nfa reduce_simulation(const Nfa& a);
/// trim + reduce_simulation, skipping the simulation pass on large inputs.
Nfa reduce(const Nfa& a);

bool is_empty(const Nfa& a);
bool accepts_epsilon(const Nfa& a);

/// Antichain-based language inclusion L(a) ⊆ L(b).
bool is_included(const Nfa& a, const Nfa& b);
bool is_universal(const Nfa& a);
bool is_equivalent(const Nfa& a, const Nfa& b);
/// Reference check via is_empty(intersect(a, complement(b))).
bool is_included_naive(const Nfa& a, const Nfa& b);

/// Some word of exactly `length` symbols in L(a), choosing the smallest
/// (symbol, target) move at each step.
std::optional<std::vector<Symbol>> extract_word(const Nfa& a, std::size_t length);
std::optional<std::vector<Symbol>> shortest_word(const Nfa& a);
/// If L(a) is a single word, returns it.
std::optional<std::vector<Symbol>> single_word(const Nfa& a);

/// Exact set of word lengths of L(a), via the subset sequence of the
/// unary projection.
SemilinearLengthSet length_set(const Nfa& a);

/// Words of L(a) up to the given length (testing aid).
std::vector<std::vector<Symbol>> enumerate(const Nfa& a, std::size_t max_length);

}  // namespace nfa
}  // namespace strsat
