#pragma once

#include <random>
#include <set>
#include <vector>

#include "strsat/nfa.hpp"

namespace testing_support {

using strsat::Nfa;
using strsat::State;
using strsat::Symbol;

inline Nfa random_nfa(std::mt19937& rng, std::size_t max_states, std::size_t k) {
    std::uniform_int_distribution<std::size_t> nstates(1, max_states);
    std::size_t n = nstates(rng);
    Nfa a(k, n);
    std::uniform_real_distribution<double> dens(0.08, 0.35);
    std::bernoulli_distribution edge(dens(rng)), fin(0.35), init(0.3);
    for (State s = 0; s < n; ++s) {
        for (Symbol c = 0; c < k; ++c)
            for (State t = 0; t < n; ++t)
                if (edge(rng)) a.add_transition(s, c, t);
        if (fin(rng)) a.set_final(s);
        if (s == 0 || init(rng)) a.add_initial(s);
    }
    return a;
}

// Membership computed straight from the transition lists, not via Nfa::accepts.
inline bool oracle_accepts(const Nfa& a, const std::vector<Symbol>& w) {
    std::set<State> cur(a.initial().begin(), a.initial().end());
    for (Symbol c : w) {
        std::set<State> next;
        for (State s : cur)
            for (const auto& m : a.moves(s))
                if (m.symbol == c) next.insert(m.target);
        cur = std::move(next);
    }
    for (State s : cur)
        if (a.is_final(s)) return true;
    return false;
}

inline std::vector<std::vector<Symbol>> all_words(std::size_t k, std::size_t max_len) {
    std::vector<std::vector<Symbol>> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (Symbol c = 0; c < k; ++c) {
                auto w = out[i];
                w.push_back(c);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

// Lengths of accepted words up to `upto`, by stepping the state sets.
inline std::set<std::size_t> lengths_by_steps(const Nfa& a, std::size_t upto) {
    std::set<std::size_t> out;
    std::set<State> cur(a.initial().begin(), a.initial().end());
    for (std::size_t n = 0; n <= upto; ++n) {
        for (State s : cur)
            if (a.is_final(s)) {
                out.insert(n);
                break;
            }
        std::set<State> next;
        for (State s : cur)
            for (const auto& m : a.moves(s)) next.insert(m.target);
        cur = std::move(next);
    }
    return out;
}

// Splits of w into two parts, for concatenation.
inline bool oracle_concat(const Nfa& a, const Nfa& b, const std::vector<Symbol>& w) {
    for (std::size_t i = 0; i <= w.size(); ++i) {
        std::vector<Symbol> l(w.begin(), w.begin() + i), r(w.begin() + i, w.end());
        if (oracle_accepts(a, l) && oracle_accepts(b, r)) return true;
    }
    return false;
}

}  // namespace testing_support

namespace testing_support {

// Exact inclusion by exploring prefix configurations (set of a-states, set of
// b-states). Every word leads to one configuration, so this covers all words
// without a length bound.
inline bool oracle_included(const strsat::Nfa& a, const strsat::Nfa& b) {
    using Conf = std::pair<std::set<State>, std::set<State>>;
    auto step = [](const strsat::Nfa& x, const std::set<State>& from, Symbol c) {
        std::set<State> out;
        for (State s : from)
            for (const auto& m : x.moves(s))
                if (m.symbol == c) out.insert(m.target);
        return out;
    };
    auto fin = [](const strsat::Nfa& x, const std::set<State>& s) {
        for (State q : s)
            if (x.is_final(q)) return true;
        return false;
    };
    std::set<Conf> seen;
    std::vector<Conf> work{{{a.initial().begin(), a.initial().end()}, {b.initial().begin(), b.initial().end()}}};
    seen.insert(work.back());
    while (!work.empty()) {
        Conf c = work.back();
        work.pop_back();
        if (fin(a, c.first) && !fin(b, c.second)) return false;
        for (Symbol s = 0; s < a.alphabet_size(); ++s) {
            Conf n{step(a, c.first, s), step(b, c.second, s)};
            if (n.first.empty()) continue;
            if (seen.insert(n).second) work.push_back(n);
        }
    }
    return true;
}

}  // namespace testing_support
