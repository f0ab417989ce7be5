#include "strsat/saturation.hpp"

#include <map>

#include "strsat/eval.hpp"

namespace strsat {

std::string FreshNames::make(const std::string& hint) {
    while (true) {
        std::string name = "!" + hint + std::to_string(counter_++);
        if (taken_.insert(name).second) return name;
    }
}

namespace {

void names_str(const StrTerm& t, std::set<std::string>& out);
void names_formula(const Formula& f, std::set<std::string>& out);

void names_lin(const LinTerm& t, std::set<std::string>& out) {
    for (const auto& [_, entry] : t.terms) {
        const IntLeaf& l = *entry.first;
        switch (l.kind) {
            case IntLeaf::Kind::Var: out.insert(l.name); break;
            case IntLeaf::Kind::Len: names_str(*l.s, out); break;
            case IntLeaf::Kind::IndexOf:
                names_str(*l.s, out);
                names_str(*l.t, out);
                names_lin(*l.start, out);
                break;
            case IntLeaf::Kind::Ite:
                names_formula(*l.cond, out);
                names_lin(*l.then_, out);
                names_lin(*l.else_, out);
                break;
        }
    }
}

void names_str(const StrTerm& t, std::set<std::string>& out) {
    if (t.kind == StrTerm::Kind::Var) out.insert(t.name);
    for (const auto& a : t.args) names_str(*a, out);
    if (t.i) names_lin(*t.i, out);
    if (t.n) names_lin(*t.n, out);
    if (t.cond) names_formula(*t.cond, out);
}

void names_formula(const Formula& f, std::set<std::string>& out) {
    if (f.kind != Formula::Kind::Atom) {
        for (const auto& g : f.args) names_formula(*g, out);
        return;
    }
    const Atom& a = *f.atom;
    if (a.kind == Atom::Kind::BoolVar) out.insert(a.name);
    if (a.a) names_str(*a.a, out);
    if (a.b) names_str(*a.b, out);
    names_lin(a.lin, out);
}

RegexPtr avoiding(const Word& t) { return re::comp(re::concat({re::all(), re::str(t), re::all()})); }

FormulaPtr axiom_eq(const LinTerm& x, const LinTerm& y) {
    Atom a;
    a.kind = Atom::Kind::IntEq;
    a.lin = x - y;
    a.axiom = true;
    if (a.lin.is_constant()) return a.lin.constant == 0 ? ir::truth() : ir::falsity();
    return ir::atom(std::move(a));
}

FormulaPtr axiom_nonneg(const LinTerm& x) {
    Atom a;
    a.kind = Atom::Kind::IntLe;
    a.lin = x.scaled(-1);
    a.axiom = true;
    return ir::atom(std::move(a));
}

bool is_lit(const StrPtr& s) { return s->kind == StrTerm::Kind::Lit; }

class Saturator {
public:
    explicit Saturator(FreshNames& names, Saturated& out) : names_(names), out_(out) {}

    FormulaPtr run(const FormulaPtr& f) {
        FormulaPtr main = form(f);
        std::vector<FormulaPtr> parts{main};
        // Lemmas may add further lemmas while being rewritten.
        for (std::size_t i = 0; i < pending_.size(); ++i) parts.push_back(form(pending_[i]));
        for (const auto& [i, l] : axioms_) parts.push_back(l);
        for (const auto& v : string_vars_) parts.push_back(axiom_nonneg(ir::len(ir::var(v))));
        return ir::conj(std::move(parts));
    }

private:
    StrPtr fresh_str(const std::string& hint) {
        std::string n = names_.make(hint);
        out_.fresh_strings.push_back(n);
        string_vars_.insert(n);
        return ir::var(n);
    }

    LinTerm fresh_int(const std::string& hint) {
        std::string n = names_.make(hint);
        out_.fresh_ints.push_back(n);
        return ir::int_var(n);
    }

    FormulaPtr fresh_bool(const std::string& hint) {
        std::string n = names_.make(hint);
        out_.fresh_bools.push_back(n);
        return ir::bool_var(n);
    }

    void lemma(FormulaPtr f) { pending_.push_back(std::move(f)); }

    FormulaPtr eq(StrPtr a, StrPtr b) { return ir::str_eq(std::move(a), std::move(b)); }
    FormulaPtr len_eq(const StrPtr& s, const LinTerm& n) { return ir::int_eq(ir::len(s), n); }

    // ---- string terms ----

    StrPtr flat(const StrPtr& t) {
        switch (t->kind) {
            case StrTerm::Kind::Var: string_vars_.insert(t->name); return t;
            case StrTerm::Kind::Lit: return t;
            case StrTerm::Kind::Concat: {
                std::vector<StrPtr> parts;
                for (const auto& a : t->args) parts.push_back(flat(a));
                return ir::concat(std::move(parts));
            }
            default: break;
        }
        std::string key = to_smtlib(*t);
        auto it = str_cache_.find(key);
        if (it != str_cache_.end()) return it->second;
        StrPtr r = eliminate(*t);
        str_cache_.emplace(key, r);
        return r;
    }

    StrPtr eliminate(const StrTerm& t) {
        switch (t.kind) {
            case StrTerm::Kind::At: return at(flat(t.args[0]), lin(*t.i));
            case StrTerm::Kind::Substr: return substr(flat(t.args[0]), lin(*t.i), lin(*t.n));
            case StrTerm::Kind::Replace: return replace(flat(t.args[0]), flat(t.args[1]), flat(t.args[2]));
            case StrTerm::Kind::Ite: {
                FormulaPtr c = form(t.cond);
                StrPtr a = flat(t.args[0]), b = flat(t.args[1]);
                StrPtr r = fresh_str("ite");
                lemma(ir::implies(c, eq(r, a)));
                lemma(ir::implies(ir::neg(c), eq(r, b)));
                return r;
            }
            default: return flat(std::make_shared<StrTerm>(t));
        }
    }

    StrPtr at(const StrPtr& s, const LinTerm& i) {
        if (i.is_constant() && is_lit(s)) return ir::lit(strfun::at(s->lit, i.constant));
        if (i.is_constant() && i.constant < 0) return ir::lit(Word{});
        StrPtr r = fresh_str("at");
        StrPtr q = fresh_str("atq");
        FormulaPtr in_range = ir::conj({ir::le(LinTerm::of(0), i), ir::lt(i, ir::len(s))});
        FormulaPtr split;
        if (i.is_constant() && i.constant == 0) {
            split = ir::conj({eq(s, ir::concat({r, q})), len_eq(r, LinTerm::of(1))});
        } else {
            StrPtr p = fresh_str("atp");
            split = ir::conj({eq(s, ir::concat({p, r, q})), len_eq(p, i), len_eq(r, LinTerm::of(1))});
        }
        lemma(ir::implies(in_range, split));
        lemma(ir::implies(ir::neg(in_range), eq(r, ir::lit(Word{}))));
        return r;
    }

    StrPtr substr(const StrPtr& s, const LinTerm& i, const LinTerm& n) {
        if (i.is_constant() && n.is_constant() && is_lit(s)) return ir::lit(strfun::substr(s->lit, i.constant, n.constant));
        if (n.is_constant() && n.constant == 1) return at(s, i);
        if ((n.is_constant() && n.constant <= 0) || (i.is_constant() && i.constant < 0)) return ir::lit(Word{});
        StrPtr r = fresh_str("sub");
        StrPtr q = fresh_str("subq");
        LinTerm rest = ir::len(s) - i;
        FormulaPtr valid = ir::conj({ir::le(LinTerm::of(0), i), ir::lt(i, ir::len(s)), ir::lt(LinTerm::of(0), n)});
        FormulaPtr split;
        FormulaPtr take = ir::conj({ir::implies(ir::le(n, rest), len_eq(r, n)),
                                    ir::implies(ir::lt(rest, n), len_eq(r, rest))});
        if (i.is_constant() && i.constant == 0) {
            split = ir::conj({eq(s, ir::concat({r, q})), take});
        } else {
            StrPtr p = fresh_str("subp");
            split = ir::conj({eq(s, ir::concat({p, r, q})), len_eq(p, i), take});
        }
        lemma(ir::implies(valid, split));
        lemma(ir::implies(ir::neg(valid), eq(r, ir::lit(Word{}))));
        return r;
    }

    // Second component: the prefix of the first occurrence of `t` whose
    // language excludes earlier occurrences.
    FormulaPtr no_earlier(const StrPtr& before, const Word& t) {
        Word head(t.begin(), t.end() - 1);
        if (head.empty()) return ir::in_re(before, avoiding(t));
        StrPtr e = fresh_str("occ");
        return ir::conj({eq(e, ir::concat({before, ir::lit(head)})), ir::in_re(e, avoiding(t))});
    }

    StrPtr replace(const StrPtr& s, const StrPtr& t, const StrPtr& u) {
        if (is_lit(s) && is_lit(t) && is_lit(u)) return ir::lit(strfun::replace(s->lit, t->lit, u->lit));
        if (!is_lit(t)) {
            lemma(ir::unsupported("str.replace with a non-literal pattern"));
            return fresh_str("rep");
        }
        if (t->lit.empty()) return ir::concat({u, s});
        StrPtr r = fresh_str("rep");
        StrPtr p = fresh_str("repp");
        StrPtr q = fresh_str("repq");
        FormulaPtr b = fresh_bool("rep");
        lemma(ir::implies(b, ir::conj({eq(s, ir::concat({p, t, q})), eq(r, ir::concat({p, u, q})),
                                       no_earlier(p, t->lit)})));
        lemma(ir::implies(ir::neg(b), ir::conj({ir::in_re(s, avoiding(t->lit)), eq(r, s)})));
        return r;
    }

    // ---- integer terms ----

    LinTerm lin(const LinTerm& t) {
        LinTerm out = LinTerm::of(t.constant);
        for (const auto& [key, entry] : t.terms) {
            const IntLeaf& l = *entry.first;
            LinTerm v;
            switch (l.kind) {
                case IntLeaf::Kind::Var: v = LinTerm::leaf(entry.first); break;
                case IntLeaf::Kind::Len: v = ir::len(flat(l.s)); break;
                case IntLeaf::Kind::IndexOf:
                case IntLeaf::Kind::Ite: {
                    auto it = int_cache_.find(key);
                    if (it == int_cache_.end()) it = int_cache_.emplace(key, eliminate(l)).first;
                    v = it->second;
                    break;
                }
            }
            out = out + v.scaled(entry.second);
        }
        return out;
    }

    LinTerm eliminate(const IntLeaf& l) {
        if (l.kind == IntLeaf::Kind::Ite) {
            FormulaPtr c = form(l.cond);
            LinTerm a = lin(*l.then_), b = lin(*l.else_);
            LinTerm n = fresh_int("ite");
            lemma(ir::implies(c, ir::int_eq(n, a)));
            lemma(ir::implies(ir::neg(c), ir::int_eq(n, b)));
            return n;
        }
        return indexof(flat(l.s), flat(l.t), lin(*l.start));
    }

    LinTerm indexof(const StrPtr& s, const StrPtr& t, const LinTerm& i) {
        if (is_lit(s) && is_lit(t) && i.is_constant()) return LinTerm::of(strfun::indexof(s->lit, t->lit, i.constant));
        if (i.is_constant() && i.constant < 0) return LinTerm::of(-1);
        LinTerm k = fresh_int("idx");
        if (!is_lit(t)) {
            lemma(ir::unsupported("str.indexof with a non-literal pattern"));
            return k;
        }
        FormulaPtr valid = ir::conj({ir::le(LinTerm::of(0), i), ir::le(i, ir::len(s))});
        lemma(ir::implies(ir::neg(valid), ir::int_eq(k, LinTerm::of(-1))));
        if (t->lit.empty()) {
            lemma(ir::implies(valid, ir::int_eq(k, i)));
            return k;
        }
        StrPtr v;
        if (i.is_constant() && i.constant == 0) {
            v = s;
        } else {
            StrPtr u = fresh_str("idxu");
            v = fresh_str("idxv");
            lemma(ir::implies(valid, ir::conj({eq(s, ir::concat({u, v})), len_eq(u, i)})));
        }
        StrPtr w = fresh_str("idxw");
        StrPtr z = fresh_str("idxz");
        FormulaPtr b = fresh_bool("idx");
        lemma(ir::implies(ir::conj({valid, b}), ir::conj({eq(v, ir::concat({w, t, z})),
                                                          ir::int_eq(k, i + ir::len(w)), no_earlier(w, t->lit)})));
        lemma(ir::implies(ir::conj({valid, ir::neg(b)}),
                          ir::conj({ir::in_re(v, avoiding(t->lit)), ir::int_eq(k, LinTerm::of(-1))})));
        return k;
    }

    // ---- formulas ----

    FormulaPtr form(const FormulaPtr& f) {
        switch (f->kind) {
            case Formula::Kind::True:
            case Formula::Kind::False: return f;
            case Formula::Kind::Not: return ir::neg(form(f->args[0]));
            case Formula::Kind::And:
            case Formula::Kind::Or: {
                std::vector<FormulaPtr> args;
                for (const auto& g : f->args) args.push_back(form(g));
                return f->kind == Formula::Kind::And ? ir::conj(std::move(args)) : ir::disj(std::move(args));
            }
            case Formula::Kind::Atom: return atom(*f->atom, f);
        }
        return f;
    }

    FormulaPtr atom(const Atom& a, const FormulaPtr& original) {
        switch (a.kind) {
            case Atom::Kind::BoolVar:
            case Atom::Kind::Unsupported:
            case Atom::Kind::RegexEq: return original;
            case Atom::Kind::IntLe:
            case Atom::Kind::IntEq: {
                if (a.axiom) return original;
                LinTerm l = lin(a.lin);
                return a.kind == Atom::Kind::IntLe ? ir::le(l, LinTerm{}) : ir::int_eq(l, LinTerm{});
            }
            case Atom::Kind::InRe: {
                StrPtr s = flat(a.a);
                if (is_lit(s)) return regex_matches(*a.r1, s->lit) ? ir::truth() : ir::falsity();
                return ir::in_re(s, a.r1);
            }
            case Atom::Kind::StrEq: {
                StrPtr x = flat(a.a), y = flat(a.b);
                if (is_lit(x) && is_lit(y)) return x->lit == y->lit ? ir::truth() : ir::falsity();
                if (to_smtlib(*x) == to_smtlib(*y)) return ir::truth();
                FormulaPtr e = eq(x, y);
                std::string key = atom_key(*e->atom);
                if (!axioms_.count(key)) axioms_.emplace(key, ir::implies(e, axiom_eq(ir::len(x), ir::len(y))));
                return e;
            }
            case Atom::Kind::Contains:
            case Atom::Kind::Prefix:
            case Atom::Kind::Suffix: return predicate(a);
        }
        return original;
    }

    FormulaPtr predicate(const Atom& a) {
        StrPtr x = flat(a.a), y = flat(a.b);
        if (is_lit(x) && is_lit(y)) {
            bool v = a.kind == Atom::Kind::Contains ? strfun::contains(x->lit, y->lit)
                     : a.kind == Atom::Kind::Prefix ? strfun::prefixof(x->lit, y->lit)
                                                    : strfun::suffixof(x->lit, y->lit);
            return v ? ir::truth() : ir::falsity();
        }
        Atom core = a;
        core.a = x;
        core.b = y;
        std::string key = to_smtlib(core);
        auto it = pred_cache_.find(key);
        if (it != pred_cache_.end()) return it->second;
        FormulaPtr pos, negative;
        if (a.kind == Atom::Kind::Contains) {
            // x contains y
            if (is_lit(y) && y->lit.empty()) return ir::truth();
            StrPtr p = fresh_str("cp"), q = fresh_str("cq");
            pos = eq(x, ir::concat({p, y, q}));
            if (is_lit(y)) {
                negative = ir::in_re(x, avoiding(y->lit));
            } else if (is_lit(x)) {
                std::vector<RegexPtr> subs;
                for (std::size_t i = 0; i <= x->lit.size(); ++i)
                    for (std::size_t j = i; j <= x->lit.size(); ++j)
                        subs.push_back(re::str(Word(x->lit.begin() + static_cast<long>(i),
                                                    x->lit.begin() + static_cast<long>(j))));
                negative = ir::in_re(y, re::comp(re::unite(std::move(subs))));
            } else {
                negative = ir::unsupported("negated str.contains with a non-literal needle");
            }
        } else {
            // prefix: x is a prefix of y; suffix: x is a suffix of y
            bool prefix = a.kind == Atom::Kind::Prefix;
            StrPtr rest = fresh_str(prefix ? "pq" : "sp");
            pos = eq(y, prefix ? ir::concat({x, rest}) : ir::concat({rest, x}));
            if (is_lit(x)) {
                RegexPtr bad = prefix ? re::comp(re::concat({re::str(x->lit), re::all()}))
                                      : re::comp(re::concat({re::all(), re::str(x->lit)}));
                negative = ir::in_re(y, bad);
            } else {
                StrPtr head = fresh_str(prefix ? "nph" : "nsh"), tail = fresh_str(prefix ? "npt" : "nst");
                StrPtr same = prefix ? head : tail;
                negative = ir::disj({ir::lt(ir::len(y), ir::len(x)),
                                     ir::conj({eq(y, ir::concat({head, tail})), ir::int_eq(ir::len(same), ir::len(x)),
                                               ir::neg(eq(same, x))})});
            }
        }
        FormulaPtr b = fresh_bool(a.kind == Atom::Kind::Contains ? "contains" : a.kind == Atom::Kind::Prefix ? "prefix" : "suffix");
        lemma(ir::implies(b, pos));
        lemma(ir::implies(ir::neg(b), negative));
        pred_cache_.emplace(key, b);
        return b;
    }

    FreshNames& names_;
    Saturated& out_;
    std::vector<FormulaPtr> pending_;
    std::map<std::string, FormulaPtr> axioms_;
    std::set<std::string> string_vars_;
    std::map<std::string, StrPtr> str_cache_;
    std::map<std::string, LinTerm> int_cache_;
    std::map<std::string, FormulaPtr> pred_cache_;
};

}  // namespace

std::set<std::string> symbol_names(const Formula& f) {
    std::set<std::string> out;
    names_formula(f, out);
    return out;
}

Saturated saturate(const FormulaPtr& f, FreshNames& names) {
    for (const auto& n : symbol_names(*f)) names.reserve(n);
    Saturated out;
    Saturator s(names, out);
    out.formula = s.run(f);
    return out;
}

FormulaPtr saturate(const FormulaPtr& f) {
    FreshNames names;
    return saturate(f, names).formula;
}

}  // namespace strsat
