#include "strsat/regex.hpp"

namespace strsat {

namespace {

Nfa minimal_dfa(const Nfa& a) { return nfa::trim(nfa::minimize_dfa(nfa::complete(nfa::determinize(a)))); }

Nfa node(const Regex& r, const SymbolTable& sym);

Nfa build(const Regex& r, const SymbolTable& sym) {
    const std::size_t k = sym.size();
    switch (r.kind) {
        case Regex::Kind::None: return nfa::empty_language(k);
        case Regex::Kind::All: return nfa::universal(k);
        case Regex::Kind::AllChar: return nfa::any_symbol(k);
        case Regex::Kind::Str: {
            auto letters = sym.encode(r.word);
            return nfa::word(k, letters);
        }
        case Regex::Kind::Range: {
            auto letters = sym.symbols_in_range(r.lo, r.hi);
            if (letters.empty()) return nfa::empty_language(k);
            return nfa::symbols(k, letters);
        }
        case Regex::Kind::Concat: {
            Nfa out = nfa::epsilon(k);
            for (const auto& a : r.args) out = nfa::reduce(nfa::concat(out, node(*a, sym)));
            return out;
        }
        case Regex::Kind::Union: {
            Nfa out = nfa::empty_language(k);
            for (const auto& a : r.args) out = nfa::reduce(nfa::unite(out, node(*a, sym)));
            return out;
        }
        case Regex::Kind::Inter: {
            Nfa out = nfa::universal(k);
            for (const auto& a : r.args) out = nfa::reduce(nfa::intersect(out, node(*a, sym)));
            return out;
        }
        case Regex::Kind::Comp: return minimal_dfa(nfa::complement(node(*r.args[0], sym)));
        case Regex::Kind::Diff: {
            Nfa rhs = minimal_dfa(nfa::complement(node(*r.args[1], sym)));
            return nfa::intersect(node(*r.args[0], sym), rhs);
        }
        case Regex::Kind::Star: return nfa::star(node(*r.args[0], sym));
        case Regex::Kind::Plus: return nfa::plus(node(*r.args[0], sym));
        case Regex::Kind::Opt: return nfa::optional(node(*r.args[0], sym));
        case Regex::Kind::Loop: {
            if (r.loop_lo > r.loop_hi) return nfa::empty_language(k);
            Nfa body = node(*r.args[0], sym);
            Nfa out = nfa::epsilon(k);
            for (unsigned i = 0; i < r.loop_lo; ++i) out = nfa::reduce(nfa::concat(out, body));
            Nfa maybe = nfa::optional(body);
            for (unsigned i = r.loop_lo; i < r.loop_hi; ++i) out = nfa::reduce(nfa::concat(out, maybe));
            return out;
        }
    }
    return nfa::empty_language(k);
}

Nfa node(const Regex& r, const SymbolTable& sym) {
    Nfa out = build(r, sym);
    if (r.kind == Regex::Kind::Comp) return out;
    return nfa::reduce(out);
}

}  // namespace

Nfa compile_regex(const Regex& r, const SymbolTable& symbols) {
    return node(r, symbols);
}

}  // namespace strsat
