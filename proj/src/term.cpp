#include "strsat/term.hpp"

#include <cctype>

namespace strsat {

LinTerm LinTerm::of(long value) {
    LinTerm t;
    t.constant = value;
    return t;
}

LinTerm LinTerm::of(const mpz_class& value) {
    LinTerm t;
    t.constant = value;
    return t;
}

LinTerm LinTerm::leaf(IntLeafPtr leaf) {
    LinTerm t;
    std::string key = to_smtlib(*leaf);
    t.terms.emplace(key, std::make_pair(std::move(leaf), mpz_class(1)));
    return t;
}

LinTerm LinTerm::operator+(const LinTerm& o) const {
    LinTerm out = *this;
    out.constant += o.constant;
    for (const auto& [key, entry] : o.terms) {
        auto it = out.terms.find(key);
        if (it == out.terms.end()) {
            out.terms.emplace(key, entry);
        } else {
            it->second.second += entry.second;
            if (it->second.second == 0) out.terms.erase(it);
        }
    }
    return out;
}

LinTerm LinTerm::operator-(const LinTerm& o) const { return *this + o.scaled(-1); }

LinTerm LinTerm::scaled(const mpz_class& k) const {
    LinTerm out;
    if (k == 0) return out;
    out.constant = constant * k;
    for (const auto& [key, entry] : terms) out.terms.emplace(key, std::make_pair(entry.first, entry.second * k));
    return out;
}

bool LinTerm::operator==(const LinTerm& o) const {
    if (constant != o.constant || terms.size() != o.terms.size()) return false;
    auto it = o.terms.begin();
    for (const auto& [key, entry] : terms) {
        if (key != it->first || entry.second != it->second.second) return false;
        ++it;
    }
    return true;
}

namespace ir {

StrPtr var(std::string name) {
    auto t = std::make_shared<StrTerm>();
    t->kind = StrTerm::Kind::Var;
    t->name = std::move(name);
    return t;
}

StrPtr lit(Word w) {
    auto t = std::make_shared<StrTerm>();
    t->kind = StrTerm::Kind::Lit;
    t->lit = std::move(w);
    return t;
}

StrPtr lit(const std::string& ascii) { return lit(Word(ascii.begin(), ascii.end())); }

StrPtr concat(std::vector<StrPtr> parts) {
    std::vector<StrPtr> flat;
    auto push = [&](const StrPtr& p) {
        if (p->kind == StrTerm::Kind::Lit) {
            if (p->lit.empty()) return;
            if (!flat.empty() && flat.back()->kind == StrTerm::Kind::Lit) {
                Word merged = flat.back()->lit;
                merged.insert(merged.end(), p->lit.begin(), p->lit.end());
                flat.back() = lit(std::move(merged));
                return;
            }
        }
        flat.push_back(p);
    };
    for (const auto& p : parts) {
        if (p->kind == StrTerm::Kind::Concat) {
            for (const auto& q : p->args) push(q);
        } else {
            push(p);
        }
    }
    if (flat.empty()) return lit(Word{});
    if (flat.size() == 1) return flat[0];
    auto t = std::make_shared<StrTerm>();
    t->kind = StrTerm::Kind::Concat;
    t->args = std::move(flat);
    return t;
}

StrPtr substr(StrPtr s, LinTerm i, LinTerm n) {
    auto t = std::make_shared<StrTerm>();
    t->kind = StrTerm::Kind::Substr;
    t->args = {std::move(s)};
    t->i = std::make_shared<LinTerm>(std::move(i));
    t->n = std::make_shared<LinTerm>(std::move(n));
    return t;
}

StrPtr at(StrPtr s, LinTerm i) {
    auto t = std::make_shared<StrTerm>();
    t->kind = StrTerm::Kind::At;
    t->args = {std::move(s)};
    t->i = std::make_shared<LinTerm>(std::move(i));
    return t;
}

StrPtr replace(StrPtr s, StrPtr pat, StrPtr u) {
    auto t = std::make_shared<StrTerm>();
    t->kind = StrTerm::Kind::Replace;
    t->args = {std::move(s), std::move(pat), std::move(u)};
    return t;
}

StrPtr ite(FormulaPtr c, StrPtr a, StrPtr b) {
    auto t = std::make_shared<StrTerm>();
    t->kind = StrTerm::Kind::Ite;
    t->cond = std::move(c);
    t->args = {std::move(a), std::move(b)};
    return t;
}

LinTerm int_var(std::string name) {
    auto l = std::make_shared<IntLeaf>();
    l->kind = IntLeaf::Kind::Var;
    l->name = std::move(name);
    return LinTerm::leaf(l);
}

LinTerm len(StrPtr s) {
    if (s->kind == StrTerm::Kind::Lit) return LinTerm::of(static_cast<long>(s->lit.size()));
    if (s->kind == StrTerm::Kind::Concat) {
        LinTerm out;
        for (const auto& p : s->args) out = out + len(p);
        return out;
    }
    auto l = std::make_shared<IntLeaf>();
    l->kind = IntLeaf::Kind::Len;
    l->s = std::move(s);
    return LinTerm::leaf(l);
}

LinTerm indexof(StrPtr s, StrPtr t, LinTerm start) {
    auto l = std::make_shared<IntLeaf>();
    l->kind = IntLeaf::Kind::IndexOf;
    l->s = std::move(s);
    l->t = std::move(t);
    l->start = std::make_shared<LinTerm>(std::move(start));
    return LinTerm::leaf(l);
}

LinTerm int_ite(FormulaPtr c, LinTerm a, LinTerm b) {
    auto l = std::make_shared<IntLeaf>();
    l->kind = IntLeaf::Kind::Ite;
    l->cond = std::move(c);
    l->then_ = std::make_shared<LinTerm>(std::move(a));
    l->else_ = std::make_shared<LinTerm>(std::move(b));
    return LinTerm::leaf(l);
}

namespace {
FormulaPtr make(Formula::Kind k, std::vector<FormulaPtr> args = {}) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->args = std::move(args);
    return f;
}
}  // namespace

FormulaPtr truth() { return make(Formula::Kind::True); }
FormulaPtr falsity() { return make(Formula::Kind::False); }

FormulaPtr atom(Atom a) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Atom;
    f->atom = std::make_shared<Atom>(std::move(a));
    return f;
}

FormulaPtr bool_var(std::string name) {
    Atom a;
    a.kind = Atom::Kind::BoolVar;
    a.name = std::move(name);
    return atom(std::move(a));
}

FormulaPtr str_eq(StrPtr x, StrPtr y) {
    Atom a;
    a.kind = Atom::Kind::StrEq;
    a.a = std::move(x);
    a.b = std::move(y);
    return atom(std::move(a));
}

FormulaPtr in_re(StrPtr s, RegexPtr r) {
    Atom a;
    a.kind = Atom::Kind::InRe;
    a.a = std::move(s);
    a.r1 = std::move(r);
    return atom(std::move(a));
}

FormulaPtr regex_eq(RegexPtr x, RegexPtr y) {
    Atom a;
    a.kind = Atom::Kind::RegexEq;
    a.r1 = std::move(x);
    a.r2 = std::move(y);
    return atom(std::move(a));
}

FormulaPtr contains(StrPtr s, StrPtr t) {
    Atom a;
    a.kind = Atom::Kind::Contains;
    a.a = std::move(s);
    a.b = std::move(t);
    return atom(std::move(a));
}

FormulaPtr prefixof(StrPtr t, StrPtr s) {
    Atom a;
    a.kind = Atom::Kind::Prefix;
    a.a = std::move(t);
    a.b = std::move(s);
    return atom(std::move(a));
}

FormulaPtr suffixof(StrPtr t, StrPtr s) {
    Atom a;
    a.kind = Atom::Kind::Suffix;
    a.a = std::move(t);
    a.b = std::move(s);
    return atom(std::move(a));
}

FormulaPtr le(LinTerm x, LinTerm y) {
    Atom a;
    a.kind = Atom::Kind::IntLe;
    a.lin = x - y;
    return atom(std::move(a));
}

FormulaPtr lt(LinTerm x, LinTerm y) { return le(x + LinTerm::of(1), y); }

FormulaPtr int_eq(LinTerm x, LinTerm y) {
    Atom a;
    a.kind = Atom::Kind::IntEq;
    a.lin = x - y;
    return atom(std::move(a));
}

FormulaPtr unsupported(std::string what) {
    Atom a;
    a.kind = Atom::Kind::Unsupported;
    a.name = std::move(what);
    return atom(std::move(a));
}

FormulaPtr neg(FormulaPtr f) {
    if (f->kind == Formula::Kind::True) return falsity();
    if (f->kind == Formula::Kind::False) return truth();
    if (f->kind == Formula::Kind::Not) return f->args[0];
    return make(Formula::Kind::Not, {std::move(f)});
}

FormulaPtr conj(std::vector<FormulaPtr> fs) {
    std::vector<FormulaPtr> keep;
    for (auto& f : fs) {
        if (f->kind == Formula::Kind::False) return f;
        if (f->kind == Formula::Kind::True) continue;
        keep.push_back(std::move(f));
    }
    if (keep.empty()) return truth();
    if (keep.size() == 1) return keep[0];
    return make(Formula::Kind::And, std::move(keep));
}

FormulaPtr disj(std::vector<FormulaPtr> fs) {
    std::vector<FormulaPtr> keep;
    for (auto& f : fs) {
        if (f->kind == Formula::Kind::True) return f;
        if (f->kind == Formula::Kind::False) continue;
        keep.push_back(std::move(f));
    }
    if (keep.empty()) return falsity();
    if (keep.size() == 1) return keep[0];
    return make(Formula::Kind::Or, std::move(keep));
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return disj({neg(std::move(a)), std::move(b)}); }

LinTerm len_of_flat(const StrPtr& s) { return len(s); }

}  // namespace ir

namespace {

std::string symbol_text(const std::string& name) {
    static const std::string extra = "~!@$%^&*_-+=<>.?/";
    bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && extra.find(c) == std::string::npos) simple = false;
    return simple ? name : "|" + name + "|";
}

std::string numeral(const mpz_class& v) {
    if (v < 0) return "(- " + mpz_class(-v).get_str() + ")";
    return v.get_str();
}

}  // namespace

std::string to_smtlib(const StrTerm& t) {
    switch (t.kind) {
        case StrTerm::Kind::Var: return symbol_text(t.name);
        case StrTerm::Kind::Lit: return quote_string(t.lit);
        case StrTerm::Kind::Concat: {
            std::string out = "(str.++";
            for (const auto& a : t.args) out += " " + to_smtlib(*a);
            return out + ")";
        }
        case StrTerm::Kind::Substr:
            return "(str.substr " + to_smtlib(*t.args[0]) + " " + to_smtlib(*t.i) + " " + to_smtlib(*t.n) + ")";
        case StrTerm::Kind::At: return "(str.at " + to_smtlib(*t.args[0]) + " " + to_smtlib(*t.i) + ")";
        case StrTerm::Kind::Replace:
            return "(str.replace " + to_smtlib(*t.args[0]) + " " + to_smtlib(*t.args[1]) + " " +
                   to_smtlib(*t.args[2]) + ")";
        case StrTerm::Kind::Ite:
            return "(ite " + to_smtlib(*t.cond) + " " + to_smtlib(*t.args[0]) + " " + to_smtlib(*t.args[1]) + ")";
    }
    return "?";
}

std::string to_smtlib(const IntLeaf& l) {
    switch (l.kind) {
        case IntLeaf::Kind::Var: return symbol_text(l.name);
        case IntLeaf::Kind::Len: return "(str.len " + to_smtlib(*l.s) + ")";
        case IntLeaf::Kind::IndexOf:
            return "(str.indexof " + to_smtlib(*l.s) + " " + to_smtlib(*l.t) + " " + to_smtlib(*l.start) + ")";
        case IntLeaf::Kind::Ite:
            return "(ite " + to_smtlib(*l.cond) + " " + to_smtlib(*l.then_) + " " + to_smtlib(*l.else_) + ")";
    }
    return "?";
}

std::string to_smtlib(const LinTerm& t) {
    std::vector<std::string> parts;
    for (const auto& [key, entry] : t.terms) {
        if (entry.second == 1)
            parts.push_back(key);
        else
            parts.push_back("(* " + numeral(entry.second) + " " + key + ")");
    }
    if (t.constant != 0 || parts.empty()) parts.push_back(numeral(t.constant));
    if (parts.size() == 1) return parts[0];
    std::string out = "(+";
    for (const auto& p : parts) out += " " + p;
    return out + ")";
}

std::string to_smtlib(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::BoolVar: return symbol_text(a.name);
        case Atom::Kind::StrEq: return "(= " + to_smtlib(*a.a) + " " + to_smtlib(*a.b) + ")";
        case Atom::Kind::InRe: return "(str.in_re " + to_smtlib(*a.a) + " " + to_smtlib(*a.r1) + ")";
        case Atom::Kind::RegexEq: return "(= " + to_smtlib(*a.r1) + " " + to_smtlib(*a.r2) + ")";
        case Atom::Kind::Contains: return "(str.contains " + to_smtlib(*a.a) + " " + to_smtlib(*a.b) + ")";
        case Atom::Kind::Prefix: return "(str.prefixof " + to_smtlib(*a.a) + " " + to_smtlib(*a.b) + ")";
        case Atom::Kind::Suffix: return "(str.suffixof " + to_smtlib(*a.a) + " " + to_smtlib(*a.b) + ")";
        case Atom::Kind::IntLe: return "(<= " + to_smtlib(a.lin) + " 0)";
        case Atom::Kind::IntEq: return "(= " + to_smtlib(a.lin) + " 0)";
        case Atom::Kind::Unsupported: return "(unsupported " + symbol_text(a.name) + ")";
    }
    return "?";
}

std::string to_smtlib(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::True: return "true";
        case Formula::Kind::False: return "false";
        case Formula::Kind::Atom: return to_smtlib(*f.atom);
        case Formula::Kind::Not: return "(not " + to_smtlib(*f.args[0]) + ")";
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::string out = f.kind == Formula::Kind::And ? "(and" : "(or";
            for (const auto& a : f.args) out += " " + to_smtlib(*a);
            return out + ")";
        }
    }
    return "?";
}

std::string atom_key(const Atom& a) { return a.axiom ? "axiom:" + to_smtlib(a) : to_smtlib(a); }

bool equal(const Formula& a, const Formula& b) { return to_smtlib(a) == to_smtlib(b); }

namespace {

void collect_str(const StrTerm& t, std::vector<CodePoint>& points, std::vector<std::pair<CodePoint, CodePoint>>& ranges);
void collect_formula(const Formula& f, std::vector<CodePoint>& points,
                     std::vector<std::pair<CodePoint, CodePoint>>& ranges);

void collect_lin(const LinTerm& t, std::vector<CodePoint>& points, std::vector<std::pair<CodePoint, CodePoint>>& ranges) {
    for (const auto& [key, entry] : t.terms) {
        const IntLeaf& l = *entry.first;
        if (l.s) collect_str(*l.s, points, ranges);
        if (l.t) collect_str(*l.t, points, ranges);
        if (l.start) collect_lin(*l.start, points, ranges);
        if (l.cond) collect_formula(*l.cond, points, ranges);
        if (l.then_) collect_lin(*l.then_, points, ranges);
        if (l.else_) collect_lin(*l.else_, points, ranges);
    }
}

void collect_str(const StrTerm& t, std::vector<CodePoint>& points, std::vector<std::pair<CodePoint, CodePoint>>& ranges) {
    points.insert(points.end(), t.lit.begin(), t.lit.end());
    for (const auto& a : t.args) collect_str(*a, points, ranges);
    if (t.i) collect_lin(*t.i, points, ranges);
    if (t.n) collect_lin(*t.n, points, ranges);
    if (t.cond) collect_formula(*t.cond, points, ranges);
}

void collect_formula(const Formula& f, std::vector<CodePoint>& points,
                     std::vector<std::pair<CodePoint, CodePoint>>& ranges) {
    if (f.atom) {
        const Atom& a = *f.atom;
        if (a.a) collect_str(*a.a, points, ranges);
        if (a.b) collect_str(*a.b, points, ranges);
        if (a.r1) collect_alphabet(*a.r1, points, ranges);
        if (a.r2) collect_alphabet(*a.r2, points, ranges);
        collect_lin(a.lin, points, ranges);
    }
    for (const auto& g : f.args) collect_formula(*g, points, ranges);
}

}  // namespace

void collect_alphabet(const Formula& f, std::vector<CodePoint>& points,
                      std::vector<std::pair<CodePoint, CodePoint>>& ranges) {
    collect_formula(f, points, ranges);
}

}  // namespace strsat
