#include "strsat/nfa.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace strsat {

using StateSet = std::vector<State>;  // sorted, unique

std::size_t Nfa::num_transitions() const {
    std::size_t n = 0;
    for (const auto& m : delta_) n += m.size();
    return n;
}

State Nfa::add_state() {
    delta_.emplace_back();
    final_.push_back(false);
    return static_cast<State>(delta_.size() - 1);
}

void Nfa::add_transition(State from, Symbol symbol, State to) {
    assert(from < delta_.size() && to < delta_.size() && symbol < alphabet_size_);
    auto& out = delta_[from];
    Move m{symbol, to};
    auto it = std::lower_bound(out.begin(), out.end(), m);
    if (it == out.end() || *it != m) out.insert(it, m);
}

void Nfa::add_initial(State s) {
    auto it = std::lower_bound(initial_.begin(), initial_.end(), s);
    if (it == initial_.end() || *it != s) initial_.insert(it, s);
}

void Nfa::set_final(State s, bool value) { final_[s] = value; }

std::vector<State> Nfa::final_states() const {
    std::vector<State> out;
    for (State s = 0; s < final_.size(); ++s)
        if (final_[s]) out.push_back(s);
    return out;
}

namespace {

StateSet post(const Nfa& a, const StateSet& from, Symbol sym) {
    StateSet out;
    for (State s : from) {
        const auto& mv = a.moves(s);
        auto lo = std::lower_bound(mv.begin(), mv.end(), Move{sym, 0});
        for (; lo != mv.end() && lo->symbol == sym; ++lo) out.push_back(lo->target);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool any_final(const Nfa& a, const StateSet& s) {
    return std::any_of(s.begin(), s.end(), [&](State q) { return a.is_final(q); });
}

// Moves of a state set grouped by symbol.
std::vector<std::pair<Symbol, StateSet>> post_all(const Nfa& a, const StateSet& from) {
    std::vector<Move> all;
    for (State s : from) all.insert(all.end(), a.moves(s).begin(), a.moves(s).end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<std::pair<Symbol, StateSet>> out;
    for (const Move& m : all) {
        if (out.empty() || out.back().first != m.symbol) out.push_back({m.symbol, {}});
        out.back().second.push_back(m.target);
    }
    return out;
}

}  // namespace

bool Nfa::accepts(std::span<const Symbol> word) const {
    StateSet cur = initial_;
    for (Symbol s : word) {
        cur = post(*this, cur, s);
        if (cur.empty()) return false;
    }
    return any_final(*this, cur);
}

bool Nfa::is_deterministic() const {
    if (initial_.size() > 1) return false;
    for (const auto& out : delta_)
        for (std::size_t i = 1; i < out.size(); ++i)
            if (out[i].symbol == out[i - 1].symbol) return false;
    return true;
}

void Nfa::print(std::ostream& os) const {
    os << "initial:";
    for (State s : initial_) os << ' ' << s;
    os << "\nfinal:";
    for (State s = 0; s < final_.size(); ++s)
        if (final_[s]) os << ' ' << s;
    os << '\n';
    for (State s = 0; s < delta_.size(); ++s)
        for (const Move& m : delta_[s]) os << s << ' ' << m.symbol << ' ' << m.target << '\n';
}

std::ostream& operator<<(std::ostream& os, const Nfa& a) {
    a.print(os);
    return os;
}

bool SemilinearLengthSet::contains(std::uint64_t n) const {
    for (const auto& p : progressions) {
        if (p.period == 0) {
            if (n == p.offset) return true;
        } else if (n >= p.offset && (n - p.offset) % p.period == 0) {
            return true;
        }
    }
    return false;
}

std::optional<std::uint64_t> SemilinearLengthSet::min() const {
    std::optional<std::uint64_t> best;
    for (const auto& p : progressions)
        if (!best || p.offset < *best) best = p.offset;
    return best;
}

namespace nfa {

Nfa empty_language(std::size_t k) {
    Nfa a(k, 1);
    a.add_initial(0);
    return a;
}

Nfa epsilon(std::size_t k) {
    Nfa a(k, 1);
    a.add_initial(0);
    a.set_final(0);
    return a;
}

Nfa universal(std::size_t k) {
    Nfa a = epsilon(k);
    for (Symbol s = 0; s < k; ++s) a.add_transition(0, s, 0);
    return a;
}

Nfa symbols(std::size_t k, std::span<const Symbol> letters) {
    Nfa a(k, 2);
    a.add_initial(0);
    a.set_final(1);
    for (Symbol s : letters) a.add_transition(0, s, 1);
    return a;
}

Nfa any_symbol(std::size_t k) {
    std::vector<Symbol> all(k);
    for (Symbol s = 0; s < k; ++s) all[s] = s;
    return symbols(k, all);
}

Nfa word(std::size_t k, std::span<const Symbol> letters) {
    Nfa a(k, letters.size() + 1);
    a.add_initial(0);
    for (std::size_t i = 0; i < letters.size(); ++i)
        a.add_transition(static_cast<State>(i), letters[i], static_cast<State>(i + 1));
    a.set_final(static_cast<State>(letters.size()));
    return a;
}

Nfa trim(const Nfa& a) {
    const std::size_t n = a.num_states();
    std::vector<bool> reach(n, false), coreach(n, false);
    std::deque<State> work;
    for (State s : a.initial()) {
        reach[s] = true;
        work.push_back(s);
    }
    std::vector<std::vector<State>> pred(n);
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        for (const Move& m : a.moves(s)) {
            pred[m.target].push_back(s);
            if (!reach[m.target]) {
                reach[m.target] = true;
                work.push_back(m.target);
            }
        }
    }
    for (State s = 0; s < n; ++s)
        if (reach[s] && a.is_final(s)) {
            coreach[s] = true;
            work.push_back(s);
        }
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        for (State p : pred[s])
            if (!coreach[p]) {
                coreach[p] = true;
                work.push_back(p);
            }
    }
    std::vector<State> rename(n, 0);
    std::size_t count = 0;
    for (State s = 0; s < n; ++s)
        if (reach[s] && coreach[s]) rename[s] = static_cast<State>(count++);
    if (count == 0) return empty_language(a.alphabet_size());
    Nfa out(a.alphabet_size(), count);
    for (State s = 0; s < n; ++s) {
        if (!(reach[s] && coreach[s])) continue;
        if (a.is_final(s)) out.set_final(rename[s]);
        for (const Move& m : a.moves(s))
            if (reach[m.target] && coreach[m.target])
                out.add_transition(rename[s], m.symbol, rename[m.target]);
    }
    for (State s : a.initial())
        if (coreach[s]) out.add_initial(rename[s]);
    return out;
}

Nfa with_single_initial(const Nfa& a) {
    if (a.initial().size() == 1) return a;
    Nfa out = a;
    State q0 = out.add_state();
    for (State i : a.initial()) {
        if (a.is_final(i)) out.set_final(q0);
        for (const Move& m : a.moves(i)) out.add_transition(q0, m.symbol, m.target);
    }
    Nfa result(a.alphabet_size(), out.num_states());
    for (State s = 0; s < out.num_states(); ++s) {
        if (out.is_final(s)) result.set_final(s);
        for (const Move& m : out.moves(s)) result.add_transition(s, m.symbol, m.target);
    }
    result.add_initial(q0);
    return result;
}

Nfa intersect(const Nfa& a, const Nfa& b) {
    if (a.alphabet_size() != b.alphabet_size()) throw std::invalid_argument("alphabet mismatch");
    Nfa out(a.alphabet_size());
    std::unordered_map<std::uint64_t, State> ids;
    std::deque<std::pair<State, State>> work;
    auto get = [&](State p, State q) {
        std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        State s = out.add_state();
        if (a.is_final(p) && b.is_final(q)) out.set_final(s);
        ids.emplace(key, s);
        work.push_back({p, q});
        return s;
    };
    for (State p : a.initial())
        for (State q : b.initial()) out.add_initial(get(p, q));
    while (!work.empty()) {
        auto [p, q] = work.front();
        work.pop_front();
        State src = ids.at((static_cast<std::uint64_t>(p) << 32) | q);
        const auto& ma = a.moves(p);
        const auto& mb = b.moves(q);
        std::size_t i = 0, j = 0;
        while (i < ma.size() && j < mb.size()) {
            if (ma[i].symbol < mb[j].symbol) {
                ++i;
            } else if (mb[j].symbol < ma[i].symbol) {
                ++j;
            } else {
                Symbol sym = ma[i].symbol;
                std::size_t j_end = j;
                while (j_end < mb.size() && mb[j_end].symbol == sym) ++j_end;
                for (; i < ma.size() && ma[i].symbol == sym; ++i)
                    for (std::size_t jj = j; jj < j_end; ++jj) {
                        State dst = get(ma[i].target, mb[jj].target);
                        out.add_transition(src, sym, dst);
                    }
                j = j_end;
            }
        }
    }
    if (out.num_states() == 0) return empty_language(a.alphabet_size());
    return out;
}

namespace {

// Copies `b` into `out` with states shifted; returns the offset.
State append_copy(Nfa& out, const Nfa& b, bool keep_final) {
    State off = static_cast<State>(out.num_states());
    for (State s = 0; s < b.num_states(); ++s) out.add_state();
    for (State s = 0; s < b.num_states(); ++s) {
        if (keep_final && b.is_final(s)) out.set_final(off + s);
        for (const Move& m : b.moves(s)) out.add_transition(off + s, m.symbol, off + m.target);
    }
    return off;
}

}  // namespace

Nfa unite(const Nfa& a, const Nfa& b) {
    if (a.alphabet_size() != b.alphabet_size()) throw std::invalid_argument("alphabet mismatch");
    Nfa out(a.alphabet_size());
    State oa = append_copy(out, a, true);
    State ob = append_copy(out, b, true);
    for (State s : a.initial()) out.add_initial(oa + s);
    for (State s : b.initial()) out.add_initial(ob + s);
    return out;
}

Nfa concat(const Nfa& a, const Nfa& b) {
    if (a.alphabet_size() != b.alphabet_size()) throw std::invalid_argument("alphabet mismatch");
    const bool b_eps = accepts_epsilon(b);
    const bool a_eps = accepts_epsilon(a);
    Nfa out(a.alphabet_size());
    State oa = append_copy(out, a, b_eps);
    State ob = append_copy(out, b, true);
    for (State f = 0; f < a.num_states(); ++f) {
        if (!a.is_final(f)) continue;
        for (State i : b.initial())
            for (const Move& m : b.moves(i)) out.add_transition(oa + f, m.symbol, ob + m.target);
    }
    for (State s : a.initial()) out.add_initial(oa + s);
    if (a_eps)
        for (State s : b.initial()) out.add_initial(ob + s);
    return out;
}

Nfa concat(std::span<const Nfa> parts) {
    if (parts.empty()) throw std::invalid_argument("concat of nothing");
    Nfa out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out = trim(concat(out, parts[i]));
    return out;
}

Nfa star(const Nfa& a) {
    Nfa out(a.alphabet_size());
    State q0 = out.add_state();
    out.set_final(q0);
    out.add_initial(q0);
    State off = append_copy(out, a, true);
    for (State i : a.initial())
        for (const Move& m : a.moves(i)) {
            out.add_transition(q0, m.symbol, off + m.target);
            for (State f = 0; f < a.num_states(); ++f)
                if (a.is_final(f)) out.add_transition(off + f, m.symbol, off + m.target);
        }
    return out;
}

Nfa plus(const Nfa& a) { return concat(a, star(a)); }

Nfa optional(const Nfa& a) { return unite(epsilon(a.alphabet_size()), a); }

Nfa determinize(const Nfa& a) {
    Nfa out(a.alphabet_size());
    std::map<StateSet, State> ids;
    std::deque<StateSet> work;
    auto get = [&](const StateSet& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        State id = out.add_state();
        if (any_final(a, s)) out.set_final(id);
        ids.emplace(s, id);
        work.push_back(s);
        return id;
    };
    out.add_initial(get(a.initial()));
    while (!work.empty()) {
        StateSet cur = std::move(work.front());
        work.pop_front();
        State src = ids.at(cur);
        for (auto& [sym, targets] : post_all(a, cur)) out.add_transition(src, sym, get(targets));
    }
    return out;
}

Nfa complete(const Nfa& a) {
    Nfa out = a;
    std::optional<State> sink;
    auto need_sink = [&]() {
        if (!sink) {
            sink = out.add_state();
            for (Symbol s = 0; s < a.alphabet_size(); ++s) out.add_transition(*sink, s, *sink);
        }
        return *sink;
    };
    if (out.initial().empty()) out.add_initial(need_sink());
    for (State s = 0; s < a.num_states(); ++s) {
        std::vector<bool> has(a.alphabet_size(), false);
        for (const Move& m : a.moves(s)) has[m.symbol] = true;
        for (Symbol sym = 0; sym < a.alphabet_size(); ++sym)
            if (!has[sym]) out.add_transition(s, sym, need_sink());
    }
    return out;
}

Nfa complement(const Nfa& a) {
    Nfa d = complete(determinize(a));
    for (State s = 0; s < d.num_states(); ++s) d.set_final(s, !d.is_final(s));
    return d;
}

Nfa minimize_dfa(const Nfa& in) {
    if (!in.is_deterministic()) throw std::invalid_argument("minimize_dfa requires a DFA");
    // Restrict to reachable states.
    Nfa a(in.alphabet_size());
    {
        std::vector<State> rename(in.num_states(), UINT32_MAX);
        std::deque<State> work;
        for (State s : in.initial()) {
            rename[s] = a.add_state();
            work.push_back(s);
        }
        while (!work.empty()) {
            State s = work.front();
            work.pop_front();
            for (const Move& m : in.moves(s))
                if (rename[m.target] == UINT32_MAX) {
                    rename[m.target] = a.add_state();
                    work.push_back(m.target);
                }
        }
        for (State s = 0; s < in.num_states(); ++s) {
            if (rename[s] == UINT32_MAX) continue;
            if (in.is_final(s)) a.set_final(rename[s]);
            for (const Move& m : in.moves(s)) a.add_transition(rename[s], m.symbol, rename[m.target]);
        }
        for (State s : in.initial()) a.add_initial(rename[s]);
    }
    const std::size_t n = a.num_states();
    if (n == 0) return empty_language(in.alphabet_size());
    const std::size_t k = a.alphabet_size();
    auto target = [&](State s, Symbol sym) -> std::int64_t {
        for (const Move& m : a.moves(s))
            if (m.symbol == sym) return m.target;
        return -1;
    };
    std::vector<std::size_t> cls(n);
    for (State s = 0; s < n; ++s) cls[s] = a.is_final(s) ? 1 : 0;
    std::size_t classes = 0;
    while (true) {
        std::map<std::vector<std::int64_t>, std::size_t> sig_ids;
        std::vector<std::size_t> next(n);
        for (State s = 0; s < n; ++s) {
            std::vector<std::int64_t> sig{static_cast<std::int64_t>(cls[s])};
            for (Symbol sym = 0; sym < k; ++sym) {
                std::int64_t t = target(s, sym);
                sig.push_back(t < 0 ? -1 : static_cast<std::int64_t>(cls[t]));
            }
            auto [it, ins] = sig_ids.emplace(std::move(sig), sig_ids.size());
            next[s] = it->second;
        }
        std::size_t count = sig_ids.size();
        cls = std::move(next);
        if (count == classes) break;
        classes = count;
    }
    // Renumber classes by first occurrence in BFS order for a canonical layout.
    std::vector<std::int64_t> order(classes, -1);
    std::size_t next_id = 0;
    std::deque<State> work{a.initial().front()};
    std::vector<bool> seen(n, false);
    seen[a.initial().front()] = true;
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        if (order[cls[s]] < 0) order[cls[s]] = static_cast<std::int64_t>(next_id++);
        for (const Move& m : a.moves(s))
            if (!seen[m.target]) {
                seen[m.target] = true;
                work.push_back(m.target);
            }
    }
    Nfa out(k, next_id);
    for (State s = 0; s < n; ++s) {
        State c = static_cast<State>(order[cls[s]]);
        if (a.is_final(s)) out.set_final(c);
        for (const Move& m : a.moves(s))
            out.add_transition(c, m.symbol, static_cast<State>(order[cls[m.target]]));
    }
    out.add_initial(static_cast<State>(order[cls[a.initial().front()]]));
    return out;
}

std::vector<std::vector<bool>> direct_simulation(const Nfa& a) {
    const std::size_t n = a.num_states();
    std::vector<std::vector<bool>> sim(n, std::vector<bool>(n, false));
    for (State s = 0; s < n; ++s)
        for (State t = 0; t < n; ++t) sim[s][t] = !a.is_final(s) || a.is_final(t);
    bool changed = true;
    while (changed) {
        changed = false;
        for (State s = 0; s < n; ++s) {
            for (State t = 0; t < n; ++t) {
                if (s == t || !sim[s][t]) continue;
                const auto& mt = a.moves(t);
                for (const Move& ms : a.moves(s)) {
                    auto lo = std::lower_bound(mt.begin(), mt.end(), Move{ms.symbol, 0});
                    bool matched = false;
                    for (; lo != mt.end() && lo->symbol == ms.symbol; ++lo)
                        if (sim[ms.target][lo->target]) {
                            matched = true;
                            break;
                        }
                    if (!matched) {
                        sim[s][t] = false;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }
    return sim;
}

Nfa reduce_simulation(const Nfa& in) {
    Nfa a = trim(in);
    const std::size_t n = a.num_states();
    auto sim = direct_simulation(a);
    std::vector<State> cls(n);
    std::vector<State> rep_of;  // class -> representative state
    std::vector<State> rename(n, UINT32_MAX);
    for (State s = 0; s < n; ++s) {
        if (rename[s] != UINT32_MAX) continue;
        rename[s] = static_cast<State>(rep_of.size());
        rep_of.push_back(s);
        for (State t = s + 1; t < n; ++t)
            if (rename[t] == UINT32_MAX && sim[s][t] && sim[t][s]) rename[t] = rename[s];
    }
    if (rep_of.size() == n) return a;
    Nfa out(a.alphabet_size(), rep_of.size());
    for (State s = 0; s < n; ++s) {
        if (a.is_final(s)) out.set_final(rename[s]);
        for (const Move& m : a.moves(s)) out.add_transition(rename[s], m.symbol, rename[m.target]);
    }
    for (State s : a.initial()) out.add_initial(rename[s]);
    return out;
}

Nfa reduce(const Nfa& a) {
    constexpr std::size_t kSimulationLimit = 256;
    Nfa t = trim(a);
    if (t.num_states() > kSimulationLimit) return t;
    return reduce_simulation(t);
}

bool is_empty(const Nfa& a) {
    std::vector<bool> seen(a.num_states(), false);
    std::deque<State> work;
    for (State s : a.initial()) {
        seen[s] = true;
        work.push_back(s);
    }
    while (!work.empty()) {
        State s = work.front();
        work.pop_front();
        if (a.is_final(s)) return false;
        for (const Move& m : a.moves(s))
            if (!seen[m.target]) {
                seen[m.target] = true;
                work.push_back(m.target);
            }
    }
    return true;
}

bool accepts_epsilon(const Nfa& a) {
    return std::any_of(a.initial().begin(), a.initial().end(),
                       [&](State s) { return a.is_final(s); });
}

bool is_included(const Nfa& a_in, const Nfa& b) {
    if (a_in.alphabet_size() != b.alphabet_size()) throw std::invalid_argument("alphabet mismatch");
    // After trimming every state of `a` reaches a final state, so an empty
    // macrostate is an immediate counterexample.
    Nfa a = trim(a_in);
    if (is_empty(a)) return true;
    std::vector<std::vector<StateSet>> antichain(a.num_states());
    std::deque<std::pair<State, StateSet>> work;

    auto subsumed = [&](State p, const StateSet& s) {
        for (const StateSet& t : antichain[p])
            if (std::includes(s.begin(), s.end(), t.begin(), t.end())) return true;
        return false;
    };
    auto insert = [&](State p, StateSet s) {
        auto& ac = antichain[p];
        ac.erase(std::remove_if(ac.begin(), ac.end(),
                                [&](const StateSet& t) {
                                    return std::includes(t.begin(), t.end(), s.begin(), s.end());
                                }),
                 ac.end());
        ac.push_back(s);
        work.push_back({p, std::move(s)});
    };

    const StateSet b0 = b.initial();
    for (State p : a.initial())
        if (!subsumed(p, b0)) insert(p, b0);

    while (!work.empty()) {
        auto [p, s] = std::move(work.front());
        work.pop_front();
        // Skip pairs evicted by a smaller macrostate meanwhile.
        if (std::find(antichain[p].begin(), antichain[p].end(), s) == antichain[p].end()) continue;
        if (a.is_final(p) && !any_final(b, s)) return false;
        for (const Move& m : a.moves(p)) {
            StateSet next = post(b, s, m.symbol);
            if (next.empty()) return false;
            if (!subsumed(m.target, next)) insert(m.target, std::move(next));
        }
    }
    return true;
}

bool is_universal(const Nfa& a) { return is_included(universal(a.alphabet_size()), a); }

bool is_equivalent(const Nfa& a, const Nfa& b) { return is_included(a, b) && is_included(b, a); }

bool is_included_naive(const Nfa& a, const Nfa& b) { return is_empty(intersect(a, complement(b))); }

std::optional<std::vector<Symbol>> extract_word(const Nfa& a, std::size_t length) {
    const std::size_t n = a.num_states();
    std::vector<std::vector<State>> pred(n);
    for (State s = 0; s < n; ++s)
        for (const Move& m : a.moves(s)) pred[m.target].push_back(s);

    // back[r]: states that reach a final state in exactly r steps. The
    // sequence is eventually periodic; only its prefix and loop are stored.
    std::vector<std::vector<bool>> back;
    std::map<std::vector<bool>, std::size_t> seen;
    std::vector<bool> cur(n, false);
    for (State s = 0; s < n; ++s) cur[s] = a.is_final(s);
    std::size_t loop_start = 0, period = 0;
    while (true) {
        auto [it, fresh] = seen.emplace(cur, back.size());
        if (!fresh) {
            loop_start = it->second;
            period = back.size() - loop_start;
            break;
        }
        back.push_back(cur);
        if (back.size() > length) break;
        std::vector<bool> next(n, false);
        for (State s = 0; s < n; ++s)
            if (cur[s])
                for (State p : pred[s]) next[p] = true;
        cur = std::move(next);
    }
    auto at = [&](std::size_t r) -> const std::vector<bool>& {
        if (r < back.size()) return back[r];
        return back[loop_start + (r - loop_start) % period];
    };

    std::optional<State> state;
    for (State s : a.initial())
        if (at(length)[s]) {
            state = s;
            break;
        }
    if (!state) return std::nullopt;
    std::vector<Symbol> out;
    out.reserve(length);
    for (std::size_t k = 0; k < length; ++k) {
        const auto& want = at(length - k - 1);
        bool moved = false;
        for (const Move& m : a.moves(*state))
            if (want[m.target]) {
                out.push_back(m.symbol);
                state = m.target;
                moved = true;
                break;
            }
        if (!moved) return std::nullopt;
    }
    return out;
}

std::optional<std::vector<Symbol>> shortest_word(const Nfa& a) {
    auto lengths = length_set(a);
    if (lengths.empty()) return std::nullopt;
    return extract_word(a, *lengths.min());
}

std::optional<std::vector<Symbol>> single_word(const Nfa& a) {
    auto lengths = length_set(a);
    if (lengths.progressions.size() != 1 || lengths.progressions[0].period != 0) return std::nullopt;
    auto w = extract_word(a, lengths.progressions[0].offset);
    if (!w) return std::nullopt;
    if (!is_included(a, word(a.alphabet_size(), *w))) return std::nullopt;
    return w;
}

SemilinearLengthSet length_set(const Nfa& in) {
    SemilinearLengthSet result;
    Nfa a = trim(in);
    if (is_empty(a)) return result;
    const std::size_t n = a.num_states();
    std::vector<std::vector<bool>> seq;
    std::map<std::vector<bool>, std::size_t> index;
    std::vector<bool> cur(n, false);
    for (State s : a.initial()) cur[s] = true;
    const std::uint64_t bound = n < 63 ? (std::uint64_t{1} << n) : UINT64_MAX;
    std::size_t loop_start = 0;
    while (true) {
        auto [it, fresh] = index.emplace(cur, seq.size());
        if (!fresh) {
            loop_start = it->second;
            break;
        }
        seq.push_back(cur);
        if (seq.size() > bound) throw std::logic_error("length_set exceeded subset bound");
        std::vector<bool> next(n, false);
        for (State s = 0; s < n; ++s)
            if (cur[s])
                for (const Move& m : a.moves(s)) next[m.target] = true;
        cur = std::move(next);
    }
    const std::size_t period = seq.size() - loop_start;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        bool acc = false;
        for (State s = 0; s < n && !acc; ++s) acc = seq[k][s] && a.is_final(s);
        if (!acc) continue;
        if (k < loop_start)
            result.progressions.push_back({k, 0});
        else
            result.progressions.push_back({k, period});
    }
    std::sort(result.progressions.begin(), result.progressions.end());
    return result;
}

std::vector<std::vector<Symbol>> enumerate(const Nfa& a, std::size_t max_length) {
    std::vector<std::vector<Symbol>> out;
    std::vector<Symbol> prefix;
    auto rec = [&](auto&& self, const StateSet& cur) -> void {
        if (any_final(a, cur)) out.push_back(prefix);
        if (prefix.size() == max_length) return;
        for (Symbol s = 0; s < a.alphabet_size(); ++s) {
            StateSet next = post(a, cur, s);
            if (next.empty()) continue;
            prefix.push_back(s);
            self(self, next);
            prefix.pop_back();
        }
    };
    rec(rec, a.initial());
    return out;
}

}  // namespace nfa
}  // namespace strsat
