#include "strsat/nielsen.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace strsat {

NielsenItem NielsenItem::variable(std::string v) {
    NielsenItem it;
    it.is_var = true;
    it.var = std::move(v);
    return it;
}

NielsenItem NielsenItem::symbol(CodePoint c) {
    NielsenItem it;
    it.letter = c;
    return it;
}

namespace {

bool has_letter(const NielsenSide& s) {
    return std::any_of(s.begin(), s.end(), [](const NielsenItem& i) { return !i.is_var; });
}

NielsenSide apply(const NielsenSide& s, const NielsenLabel& l) {
    NielsenSide out;
    for (const auto& it : s) {
        if (!it.is_var || it.var != l.var) {
            out.push_back(it);
            continue;
        }
        switch (l.kind) {
        case NielsenLabel::Kind::PrependLetter: out.push_back(NielsenItem::symbol(l.letter)); break;
        case NielsenLabel::Kind::PrependVar: out.push_back(NielsenItem::variable(l.other)); break;
        case NielsenLabel::Kind::Erase: continue;
        }
        out.push_back(it);
    }
    return out;
}

NielsenLabel prepend_letter(const std::string& x, CodePoint a) {
    return {NielsenLabel::Kind::PrependLetter, x, a, {}};
}
NielsenLabel prepend_var(const std::string& x, const std::string& y) {
    return {NielsenLabel::Kind::PrependVar, x, 0, y};
}
NielsenLabel erase(const std::string& x) { return {NielsenLabel::Kind::Erase, x, 0, {}}; }

std::vector<NielsenLabel> rules(const NielsenNode& n) {
    const auto& e = n.equations.front();
    if (e.lhs.empty() || e.rhs.empty()) {
        const auto& s = e.lhs.empty() ? e.rhs : e.lhs;
        return {erase(s.front().var)};
    }
    const auto& u = e.lhs.front();
    const auto& v = e.rhs.front();
    if (u.is_var && v.is_var) return {prepend_var(u.var, v.var), prepend_var(v.var, u.var), erase(u.var), erase(v.var)};
    if (u.is_var) return {prepend_letter(u.var, v.letter), erase(u.var)};
    return {prepend_letter(v.var, u.letter), erase(v.var)};
}

std::vector<std::vector<std::size_t>> successors(std::size_t n, const std::vector<NielsenEdge>& edges) {
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t k = 0; k < edges.size(); ++k) out[edges[k].src].push_back(k);
    return out;
}

Word prefix(const Word& head, const Word& tail) {
    Word w = head;
    w.insert(w.end(), tail.begin(), tail.end());
    return w;
}

void replay_edge(const NielsenLabel& l, std::map<std::string, Word>& values) {
    Word& x = values[l.var];
    switch (l.kind) {
    case NielsenLabel::Kind::PrependLetter: x.insert(x.begin(), l.letter); break;
    case NielsenLabel::Kind::PrependVar: x = prefix(values[l.other], x); break;
    case NielsenLabel::Kind::Erase: x.clear(); break;
    }
}

}  // namespace

std::optional<NielsenNode> canonical_node(std::vector<NielsenEquation> equations) {
    NielsenNode n;
    for (auto& e : equations) {
        std::size_t k = 0;
        while (k < e.lhs.size() && k < e.rhs.size() && e.lhs[k] == e.rhs[k]) ++k;
        e.lhs.erase(e.lhs.begin(), e.lhs.begin() + static_cast<std::ptrdiff_t>(k));
        e.rhs.erase(e.rhs.begin(), e.rhs.begin() + static_cast<std::ptrdiff_t>(k));
        if (e.lhs.empty() && e.rhs.empty()) continue;
        if (e.lhs.empty() && has_letter(e.rhs)) return std::nullopt;
        if (e.rhs.empty() && has_letter(e.lhs)) return std::nullopt;
        if (!e.lhs.empty() && !e.rhs.empty() && !e.lhs[0].is_var && !e.rhs[0].is_var) return std::nullopt;
        if (e.rhs < e.lhs) std::swap(e.lhs, e.rhs);
        n.equations.push_back(std::move(e));
    }
    std::sort(n.equations.begin(), n.equations.end());
    n.equations.erase(std::unique(n.equations.begin(), n.equations.end()), n.equations.end());
    return n;
}

std::string to_string(const NielsenLabel& l) {
    switch (l.kind) {
    case NielsenLabel::Kind::PrependLetter: {
        std::string a = l.letter < 0x80 ? std::string(1, static_cast<char>(l.letter)) : "\\u{" + std::to_string(l.letter) + "}";
        return l.var + "->" + a + l.var;
    }
    case NielsenLabel::Kind::PrependVar: return l.var + "->" + l.other + l.var;
    case NielsenLabel::Kind::Erase: return l.var + "->eps";
    }
    return {};
}

bool is_quadratic(const ConjunctiveSystem& sys) {
    if (!sys.disequations.empty()) return false;
    for (const auto& [v, lang] : sys.regular)
        if (!nfa::is_universal(lang)) return false;
    for (const auto& [v, n] : sys.occurrences())
        if (n > 2) return false;
    return true;
}

std::optional<NielsenNode> initial_node(const ConjunctiveSystem& sys) {
    auto convert = [](const Side& s) {
        NielsenSide out;
        for (const auto& it : s) {
            if (it.is_var)
                out.push_back(NielsenItem::variable(it.var));
            else
                for (CodePoint c : it.lit) out.push_back(NielsenItem::symbol(c));
        }
        return out;
    };
    std::vector<NielsenEquation> eqs;
    for (const auto& e : sys.equations) eqs.push_back({convert(e.lhs), convert(e.rhs)});
    return canonical_node(std::move(eqs));
}

NielsenGraph build_graph(const NielsenNode& initial, std::size_t node_cap) {
    NielsenGraph g;
    std::set<std::string> vars;
    for (const auto& e : initial.equations)
        for (const auto* s : {&e.lhs, &e.rhs})
            for (const auto& it : *s)
                if (it.is_var) vars.insert(it.var);
    g.variables.assign(vars.begin(), vars.end());

    std::map<NielsenNode, std::size_t> index;
    auto id = [&](NielsenNode n) {
        auto it = index.find(n);
        if (it != index.end()) return it->second;
        if (g.nodes.size() >= node_cap) throw CapExceeded("Nielsen graph exceeds node cap");
        std::size_t k = g.nodes.size();
        index.emplace(n, k);
        g.nodes.push_back(std::move(n));
        return k;
    };
    g.initial = id(initial);
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        if (g.nodes[k].terminal()) {
            g.terminal = k;
            continue;
        }
        for (const auto& label : rules(g.nodes[k])) {
            std::vector<NielsenEquation> eqs;
            for (const auto& e : g.nodes[k].equations) eqs.push_back({apply(e.lhs, label), apply(e.rhs, label)});
            auto next = canonical_node(std::move(eqs));
            if (!next) continue;
            std::size_t dst = id(std::move(*next));
            g.edges.push_back({k, dst, label});
        }
    }
    return g;
}

bool decide_sat(const NielsenGraph& g) { return g.terminal.has_value(); }

CounterSystem build_counter_system(const NielsenGraph& g) {
    CounterSystem cs;
    cs.locations = g.nodes.size();
    cs.initial = g.initial;
    cs.terminal = g.terminal;
    cs.counters = g.variables;
    if (!g.terminal) return cs;
    std::vector<std::vector<std::size_t>> rev(g.nodes.size());
    for (const auto& e : g.edges) rev[e.dst].push_back(e.src);
    std::vector<bool> live(g.nodes.size(), false);
    std::vector<std::size_t> stack{*g.terminal};
    live[*g.terminal] = true;
    while (!stack.empty()) {
        std::size_t s = stack.back();
        stack.pop_back();
        for (std::size_t p : rev[s])
            if (!live[p]) {
                live[p] = true;
                stack.push_back(p);
            }
    }
    for (const auto& e : g.edges)
        if (live[e.src] && live[e.dst]) cs.transitions.push_back(e);
    return cs;
}

Flattening flatten(const CounterSystem& cs, std::size_t schema_cap) {
    Flattening out;
    if (!cs.terminal) return out;
    const auto& ts = cs.transitions;
    std::vector<std::vector<std::vector<std::size_t>>> loops(cs.locations);
    std::vector<std::vector<std::size_t>> forward(cs.locations);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (ts[k].src == ts[k].dst)
            loops[ts[k].src].push_back({k});
        else
            forward[ts[k].src].push_back(k);
    }
    // Cycles of length two become loops on both of their locations.
    for (std::size_t a = 0; a < ts.size(); ++a)
        for (std::size_t b = 0; b < ts.size(); ++b)
            if (ts[a].src != ts[a].dst && ts[a].dst == ts[b].src && ts[b].dst == ts[a].src && ts[a].src < ts[b].src) {
                loops[ts[a].src].push_back({a, b});
                loops[ts[b].src].push_back({b, a});
            }

    // Components of the graph without self-loops.
    std::vector<int> comp(cs.locations, -1), low(cs.locations, 0), num(cs.locations, -1);
    std::vector<std::size_t> stack;
    std::vector<bool> on(cs.locations, false);
    int counter = 0, comps = 0;
    std::function<void(std::size_t)> tarjan = [&](std::size_t v) {
        num[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = true;
        for (std::size_t k : forward[v]) {
            std::size_t w = ts[k].dst;
            if (num[w] < 0) {
                tarjan(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], num[w]);
            }
        }
        if (low[v] == num[v]) {
            while (true) {
                std::size_t w = stack.back();
                stack.pop_back();
                on[w] = false;
                comp[w] = comps;
                if (w == v) break;
            }
            ++comps;
        }
    };
    tarjan(cs.initial);
    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t v = 0; v < cs.locations; ++v)
        if (comp[v] >= 0) members[comp[v]].push_back(v);
    for (const auto& [c, vs] : members) {
        if (vs.size() == 1) continue;
        if (vs.size() > 2) {
            out.exact = false;
            continue;
        }
        std::size_t inner = 0;
        for (std::size_t v : vs)
            for (std::size_t k : forward[v])
                if (comp[ts[k].dst] == c) ++inner;
        bool self = false;
        for (std::size_t v : vs)
            for (const auto& l : loops[v])
                if (l.size() == 1) self = true;
        if (inner != 2 || self) out.exact = false;
    }

    auto constant = [&](const std::vector<std::size_t>& loop) {
        return std::all_of(loop.begin(), loop.end(), [&](std::size_t k) {
            return ts[k].label.kind == NielsenLabel::Kind::PrependLetter;
        });
    };
    for (const auto& ls : loops)
        for (const auto& l : ls)
            if (!constant(l)) out.exact = false;

    // Simple paths; at each location the constant loops repeat freely and
    // every other loop is unrolled up to twice.
    std::vector<bool> visited(cs.locations, false);
    std::vector<std::size_t> path;
    bool full = false;
    auto emit = [&]() {
        std::vector<std::size_t> locs{cs.initial};
        for (std::size_t k : path) locs.push_back(ts[k].dst);
        std::vector<FlatPart> fixed;
        std::function<void(std::size_t, std::vector<FlatPart>&)> build = [&](std::size_t p,
                                                                              std::vector<FlatPart>& parts) {
            if (full) return;
            if (p == locs.size()) {
                if (out.automata.size() >= schema_cap) {
                    full = true;
                    return;
                }
                out.automata.push_back({parts});
                return;
            }
            std::vector<const std::vector<std::size_t>*> unrolled;
            std::size_t base = parts.size();
            for (const auto& l : loops[locs[p]])
                if (constant(l))
                    parts.push_back({l, true});
                else
                    unrolled.push_back(&l);
            std::function<void(std::size_t)> choose = [&](std::size_t u) {
                if (full) return;
                if (u == unrolled.size()) {
                    if (p + 1 < locs.size()) parts.push_back({{path[p]}, false});
                    build(p + 1, parts);
                    if (p + 1 < locs.size()) parts.pop_back();
                    return;
                }
                for (int times = 0; times <= 2; ++times) {
                    for (int t = 0; t < times; ++t) parts.push_back({*unrolled[u], false});
                    choose(u + 1);
                    for (int t = 0; t < times; ++t) parts.pop_back();
                }
            };
            choose(0);
            parts.resize(base);
        };
        build(0, fixed);
    };
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        if (full) return;
        if (v == *cs.terminal) {
            emit();
            return;
        }
        visited[v] = true;
        for (std::size_t k : forward[v]) {
            std::size_t w = ts[k].dst;
            if (visited[w]) continue;
            path.push_back(k);
            dfs(w);
            path.pop_back();
            if (full) break;
        }
        visited[v] = false;
    };
    dfs(cs.initial);
    if (full) out.exact = false;
    return out;
}

FlatFormula flat_formula(const CounterSystem& cs, const FlatAutomaton& fa, const std::string& prefix) {
    FlatFormula ff;
    std::map<std::string, LinExpr> cur;
    std::vector<LiaFormula> atoms;
    for (std::size_t i = 0; i < cs.counters.size(); ++i) {
        std::string t = prefix + "t" + std::to_string(i);
        ff.hidden.push_back(t);
        ff.final_length[cs.counters[i]] = t;
        cur[cs.counters[i]] = LinExpr::var(t);
        atoms.push_back(lia::ge(LinExpr::var(t), LinExpr::of(0)));
    }
    std::vector<std::string> counts(fa.parts.size());
    for (std::size_t p = 0; p < fa.parts.size(); ++p)
        if (fa.parts[p].repeated) {
            counts[p] = prefix + "k" + std::to_string(p);
            ff.loop_counts.push_back(counts[p]);
            ff.hidden.push_back(counts[p]);
            atoms.push_back(lia::ge(LinExpr::var(counts[p]), LinExpr::of(0)));
        }
    for (std::size_t p = fa.parts.size(); p-- > 0;) {
        const auto& part = fa.parts[p];
        if (part.repeated) {
            std::map<std::string, long> step;
            for (std::size_t k : part.transitions) ++step[cs.transitions[k].label.var];
            for (const auto& [v, n] : step) cur[v] = cur[v] + LinExpr::var(counts[p], n);
            continue;
        }
        for (std::size_t i = part.transitions.size(); i-- > 0;) {
            const auto& l = cs.transitions[part.transitions[i]].label;
            switch (l.kind) {
            case NielsenLabel::Kind::PrependLetter: cur[l.var] = cur[l.var] + LinExpr::of(1); break;
            case NielsenLabel::Kind::PrependVar: cur[l.var] = cur[l.var] + cur[l.other]; break;
            case NielsenLabel::Kind::Erase: cur[l.var] = LinExpr::of(0); break;
            }
        }
    }
    for (const auto& v : cs.counters) atoms.push_back(lia::eq(LinExpr::var(length_var(v)), cur[v]));
    ff.body = lia::conj(std::move(atoms));
    return ff;
}

LiaFormula flat_to_lia(const CounterSystem& cs, const FlatAutomaton& fa) {
    auto ff = flat_formula(cs, fa, "n!");
    return lia::exists(ff.hidden, ff.body);
}

LiaFormula length_lemma(const CounterSystem& cs, const Flattening& f) {
    std::vector<LiaFormula> parts;
    for (std::size_t i = 0; i < f.automata.size(); ++i) {
        auto ff = flat_formula(cs, f.automata[i], "n!" + std::to_string(i) + "!");
        parts.push_back(lia::exists(ff.hidden, ff.body));
    }
    return lia::disj(std::move(parts));
}

std::map<std::string, Word> replay_walk(const CounterSystem& cs, const FlatAutomaton& fa, const FlatFormula& ff,
                                        const LiaModel& model, CodePoint filler) {
    auto value = [&](const std::string& name) {
        auto it = model.find(name);
        return it == model.end() ? 0UL : it->second.get_ui();
    };
    std::map<std::string, Word> values;
    for (const auto& v : cs.counters) values[v] = Word(value(ff.final_length.at(v)), filler);
    std::size_t loop = ff.loop_counts.size();
    for (std::size_t p = fa.parts.size(); p-- > 0;) {
        const auto& part = fa.parts[p];
        unsigned long times = 1;
        if (part.repeated) times = value(ff.loop_counts[--loop]);
        for (unsigned long r = 0; r < times; ++r)
            for (std::size_t i = part.transitions.size(); i-- > 0;)
                replay_edge(cs.transitions[part.transitions[i]].label, values);
    }
    return values;
}

std::optional<std::map<std::string, Word>> nielsen_witness(const NielsenGraph& g) {
    if (!g.terminal) return std::nullopt;
    auto succ = successors(g.nodes.size(), g.edges);
    std::vector<std::optional<std::size_t>> via(g.nodes.size());
    std::vector<bool> seen(g.nodes.size(), false);
    std::deque<std::size_t> queue{g.initial};
    seen[g.initial] = true;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t k : succ[v]) {
            std::size_t w = g.edges[k].dst;
            if (seen[w]) continue;
            seen[w] = true;
            via[w] = k;
            queue.push_back(w);
        }
    }
    std::map<std::string, Word> values;
    for (const auto& v : g.variables) values[v] = {};
    for (std::size_t v = *g.terminal; via[v]; v = g.edges[*via[v]].src) replay_edge(g.edges[*via[v]].label, values);
    return values;
}

std::string dump_edges(const NielsenGraph& g) {
    std::ostringstream os;
    for (const auto& e : g.edges) os << e.src << ' ' << e.dst << ' ' << to_string(e.label) << '\n';
    return os.str();
}

}  // namespace strsat
