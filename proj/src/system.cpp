#include "strsat/system.hpp"

#include <algorithm>
#include <stdexcept>

#include "strsat/eval.hpp"

namespace strsat {

Item Item::variable(std::string name) {
    Item it;
    it.is_var = true;
    it.var = std::move(name);
    return it;
}

Item Item::literal(Word w) {
    Item it;
    it.lit = std::move(w);
    return it;
}

Side normalize_side(Side s) {
    Side out;
    for (auto& it : s) {
        if (!it.is_var) {
            if (it.lit.empty()) continue;
            if (!out.empty() && !out.back().is_var) {
                out.back().lit.insert(out.back().lit.end(), it.lit.begin(), it.lit.end());
                continue;
            }
        }
        out.push_back(std::move(it));
    }
    return out;
}

Side side_of(const StrTerm& t) {
    switch (t.kind) {
        case StrTerm::Kind::Var: return {Item::variable(t.name)};
        case StrTerm::Kind::Lit: return normalize_side({Item::literal(t.lit)});
        case StrTerm::Kind::Concat: {
            Side out;
            for (const auto& p : t.args) {
                Side part = side_of(*p);
                out.insert(out.end(), part.begin(), part.end());
            }
            return normalize_side(std::move(out));
        }
        default: throw std::logic_error("side_of: term is not flat: " + to_smtlib(t));
    }
}

bool is_ground(const Side& s) {
    return std::none_of(s.begin(), s.end(), [](const Item& it) { return it.is_var; });
}

Word ground_word(const Side& s) {
    Word w;
    for (const auto& it : s) w.insert(w.end(), it.lit.begin(), it.lit.end());
    return w;
}

std::string to_string(const Side& s) {
    if (s.empty()) return "\"\"";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ".";
        out += s[i].is_var ? s[i].var : quote_string(s[i].lit);
    }
    return out;
}

std::string length_var(const std::string& var) { return "|" + var + "|"; }

LinExpr side_length(const Side& s) {
    LinExpr e;
    for (const auto& it : s) {
        if (it.is_var)
            e = e + LinExpr::var(length_var(it.var));
        else
            e.constant += static_cast<unsigned long>(it.lit.size());
    }
    return e;
}

const Nfa& ConjunctiveSystem::language(const std::string& var) const {
    auto it = regular.find(var);
    if (it != regular.end()) return it->second;
    static thread_local std::map<std::size_t, Nfa> universals;
    auto [u, inserted] = universals.try_emplace(alphabet_size());
    if (inserted) u->second = nfa::universal(alphabet_size());
    return u->second;
}

Nfa ConjunctiveSystem::universal() const { return nfa::universal(alphabet_size()); }

bool ConjunctiveSystem::has_constraint(const std::string& var) const { return regular.count(var) > 0; }

void ConjunctiveSystem::restrict(const std::string& var, const Nfa& lang) {
    auto it = regular.find(var);
    if (it == regular.end()) {
        regular.emplace(var, nfa::reduce(lang));
        return;
    }
    it->second = nfa::reduce(nfa::intersect(it->second, lang));
}

void collect_vars(const Side& s, std::set<std::string>& out) {
    for (const auto& it : s)
        if (it.is_var) out.insert(it.var);
}

std::set<std::string> ConjunctiveSystem::variables() const {
    std::set<std::string> out;
    for (const auto& e : equations) {
        collect_vars(e.lhs, out);
        collect_vars(e.rhs, out);
    }
    for (const auto& e : disequations) {
        collect_vars(e.lhs, out);
        collect_vars(e.rhs, out);
    }
    for (const auto& [v, _] : regular) out.insert(v);
    return out;
}

std::map<std::string, int> ConjunctiveSystem::occurrences() const {
    std::map<std::string, int> occ;
    auto count = [&](const Side& s) {
        for (const auto& it : s)
            if (it.is_var) ++occ[it.var];
    };
    for (const auto& e : equations) {
        count(e.lhs);
        count(e.rhs);
    }
    for (const auto& e : disequations) {
        count(e.lhs);
        count(e.rhs);
    }
    return occ;
}

Side substitute(const Side& s, const std::string& var, const Side& replacement) {
    Side out;
    for (const auto& it : s) {
        if (it.is_var && it.var == var)
            out.insert(out.end(), replacement.begin(), replacement.end());
        else
            out.push_back(it);
    }
    return normalize_side(std::move(out));
}

void substitute(ConjunctiveSystem& sys, const std::string& var, const Side& replacement) {
    for (auto* list : {&sys.equations, &sys.disequations}) {
        for (auto& e : *list) {
            e.lhs = substitute(e.lhs, var, replacement);
            e.rhs = substitute(e.rhs, var, replacement);
        }
    }
}

void define_length(ConjunctiveSystem& sys, const std::string& var, const Side& value) {
    if (!sys.len_vars.count(var)) return;
    std::string lv = length_var(var);
    LinExpr e = side_length(value);
    for (auto& f : sys.lia) f = lia::substitute(f, lv, e);
    for (auto& f : sys.lia_axioms) f = lia::substitute(f, lv, e);
    sys.len_vars.erase(var);
    collect_vars(value, sys.len_vars);
}

const Nfa& RegexCache::get(const RegexPtr& r) {
    std::string key = to_smtlib(*r);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, compile_regex(*r, *symbols_)).first->second;
}

LinExpr to_lin_expr(const LinTerm& t) {
    LinExpr e = LinExpr::of(t.constant);
    for (const auto& [key, entry] : t.terms) {
        const IntLeaf& leaf = *entry.first;
        if (leaf.kind == IntLeaf::Kind::Var) {
            e = e + LinExpr::var(leaf.name, entry.second);
        } else if (leaf.kind == IntLeaf::Kind::Len) {
            Side s = side_of(*leaf.s);
            e = e + side_length(s).scaled(entry.second);
        } else {
            throw std::logic_error("integer term not eliminated before the theory: " + key);
        }
    }
    return e;
}

namespace {

bool lia_mentions_lengths(const LiaFormula& f, std::set<std::string>& out) {
    bool any = false;
    for (const auto& v : lia::free_variables(f)) {
        if (v.size() > 2 && v.front() == '|' && v.back() == '|') {
            out.insert(v.substr(1, v.size() - 2));
            any = true;
        }
    }
    return any;
}

}  // namespace

ConjunctiveSystem assignment_to_system(const std::vector<SignedAtom>& literals, RegexCache& cache,
                                       const SystemOptions& options) {
    ConjunctiveSystem sys;
    sys.symbols = cache.table();
    const SymbolTable& symbols = *sys.symbols;
    int fresh = 0;
    for (const auto& [atom, sign] : literals) {
        const Atom& a = *atom;
        switch (a.kind) {
            case Atom::Kind::BoolVar: break;
            case Atom::Kind::Unsupported:
                if (sign && !sys.unsupported) sys.unsupported = a.name;
                break;
            case Atom::Kind::StrEq: {
                Equation e{side_of(*a.a), side_of(*a.b)};
                if (is_ground(e.lhs) && is_ground(e.rhs)) {
                    if ((ground_word(e.lhs) == ground_word(e.rhs)) != sign) sys.conflict = true;
                    break;
                }
                (sign ? sys.equations : sys.disequations).push_back(std::move(e));
                break;
            }
            case Atom::Kind::InRe: {
                Side s = side_of(*a.a);
                const Nfa& lang = cache.get(a.r1);
                if (is_ground(s)) {
                    auto enc = symbols.encode(ground_word(s));
                    if (lang.accepts(enc) != sign) sys.conflict = true;
                    break;
                }
                std::string var;
                if (s.size() == 1) {
                    var = s[0].var;
                } else {
                    var = options.fresh_prefix + std::to_string(fresh++);
                    sys.equations.push_back({{Item::variable(var)}, s});
                }
                sys.restrict(var, sign ? lang : nfa::complement(lang));
                break;
            }
            case Atom::Kind::RegexEq: {
                bool same = nfa::is_equivalent(cache.get(a.r1), cache.get(a.r2));
                if (same != sign) sys.conflict = true;
                sys.regex_facts.push_back({{a.r1, a.r2}, sign});
                break;
            }
            case Atom::Kind::IntLe:
            case Atom::Kind::IntEq: {
                LinExpr e = to_lin_expr(a.lin);
                LiaFormula f = a.kind == Atom::Kind::IntLe ? lia::le(e, LinExpr{}) : lia::eq(e, LinExpr{});
                if (!sign) f = lia::neg(f);
                if (f.kind == LiaFormula::Kind::True) break;
                if (f.kind == LiaFormula::Kind::False) {
                    sys.conflict = true;
                    break;
                }
                if (a.axiom && sign)
                    sys.lia_axioms.push_back(std::move(f));
                else
                    sys.lia.push_back(std::move(f));
                break;
            }
            case Atom::Kind::Contains:
            case Atom::Kind::Prefix:
            case Atom::Kind::Suffix:
                if (!sys.unsupported) sys.unsupported = "predicate reached the theory unsaturated";
                break;
        }
    }
    for (const auto& f : sys.lia) lia_mentions_lengths(f, sys.len_vars);
    return sys;
}

Word side_value(const Side& s, const std::map<std::string, Word>& values) {
    Word w;
    for (const auto& it : s) {
        if (it.is_var) {
            auto v = values.find(it.var);
            if (v != values.end()) w.insert(w.end(), v->second.begin(), v->second.end());
        } else {
            w.insert(w.end(), it.lit.begin(), it.lit.end());
        }
    }
    return w;
}

std::optional<std::vector<Word>> factorize(const Word& w, const std::vector<const Nfa*>& parts,
                                           const SymbolTable& symbols) {
    std::vector<Symbol> enc = symbols.encode(w);
    std::size_t n = enc.size(), k = parts.size();
    if (k == 0) {
        if (n == 0) return std::vector<Word>{};
        return std::nullopt;
    }
    // can[i][p]: suffix from position p splits over parts i..k-1.
    std::vector<std::vector<char>> can(k + 1, std::vector<char>(n + 1, 0));
    can[k][n] = 1;
    auto piece = [&](std::size_t i, std::size_t from, std::size_t to) {
        return parts[i]->accepts(std::span<const Symbol>(enc.data() + from, to - from));
    };
    for (std::size_t i = k; i-- > 0;)
        for (std::size_t p = 0; p <= n; ++p)
            for (std::size_t q = p; q <= n && !can[i][p]; ++q)
                if (can[i + 1][q] && piece(i, p, q)) can[i][p] = 1;
    if (!can[0][0]) return std::nullopt;
    std::vector<Word> out;
    std::size_t p = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t q = p; q <= n; ++q) {
            if (can[i + 1][q] && piece(i, p, q)) {
                out.emplace_back(w.begin() + static_cast<long>(p), w.begin() + static_cast<long>(q));
                p = q;
                break;
            }
        }
    }
    return out;
}

std::map<std::string, Word> replay_trail(const ConjunctiveSystem& sys, std::map<std::string, Word> values) {
    for (auto it = sys.trail.rbegin(); it != sys.trail.rend(); ++it) {
        if (it->kind == ModelStep::Kind::Define) {
            values[it->var] = side_value(it->value, values);
            continue;
        }
        Word w = side_value(it->source, values);
        std::vector<const Nfa*> parts;
        std::vector<Word> fixed;
        for (const auto& item : it->free_side) {
            if (item.is_var)
                parts.push_back(&sys.language(item.var));
            else
                parts.push_back(nullptr);
        }
        // Literal positions are matched by singleton automata built on the fly.
        std::vector<Nfa> literal_automata;
        literal_automata.reserve(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i]) continue;
            auto enc = sys.symbols->encode(it->free_side[i].lit);
            literal_automata.push_back(nfa::word(sys.alphabet_size(), enc));
            parts[i] = &literal_automata.back();
        }
        auto split = factorize(w, parts, *sys.symbols);
        if (!split) throw std::logic_error("model reconstruction failed: cannot factorize " + to_string(it->free_side));
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (it->free_side[i].is_var) values[it->free_side[i].var] = (*split)[i];
    }
    return values;
}

bool satisfies(const ConjunctiveSystem& sys, const std::map<std::string, Word>& values, const LiaModel& ints) {
    for (const auto& e : sys.equations)
        if (side_value(e.lhs, values) != side_value(e.rhs, values)) return false;
    for (const auto& e : sys.disequations)
        if (side_value(e.lhs, values) == side_value(e.rhs, values)) return false;
    for (const auto& [v, lang] : sys.regular) {
        auto it = values.find(v);
        Word w = it == values.end() ? Word{} : it->second;
        if (!lang.accepts(sys.symbols->encode(w))) return false;
    }
    LiaModel m = ints;
    for (const auto& v : sys.variables()) {
        auto it = values.find(v);
        m[length_var(v)] = static_cast<unsigned long>(it == values.end() ? 0 : it->second.size());
    }
    for (const auto& [v, w] : values) m[length_var(v)] = static_cast<unsigned long>(w.size());
    for (const auto& f : sys.lia) {
        for (const auto& fv : lia::free_variables(f))
            if (!m.count(fv)) m[fv] = 0;
        if (!lia::evaluate(f, m)) return false;
    }
    return true;
}

}  // namespace strsat
