#include "strsat/eval.hpp"

#include <algorithm>
#include <stdexcept>

namespace strsat {

namespace strfun {

namespace {
long find_from(const Word& s, const Word& t, std::size_t from) {
    if (t.size() > s.size()) return -1;
    for (std::size_t j = from; j + t.size() <= s.size(); ++j)
        if (std::equal(t.begin(), t.end(), s.begin() + static_cast<long>(j))) return static_cast<long>(j);
    return -1;
}
}  // namespace

Word at(const Word& s, const mpz_class& i) { return substr(s, i, 1); }

Word substr(const Word& s, const mpz_class& i, const mpz_class& n) {
    mpz_class len = static_cast<unsigned long>(s.size());
    if (i < 0 || i >= len || n <= 0) return {};
    mpz_class end = i + n;
    if (end > len) end = len;
    return Word(s.begin() + i.get_si(), s.begin() + end.get_si());
}

mpz_class indexof(const Word& s, const Word& t, const mpz_class& i) {
    mpz_class len = static_cast<unsigned long>(s.size());
    if (i < 0 || i > len) return -1;
    return find_from(s, t, i.get_ui());
}

Word replace(const Word& s, const Word& t, const Word& u) {
    if (t.empty()) {
        Word out = u;
        out.insert(out.end(), s.begin(), s.end());
        return out;
    }
    long j = find_from(s, t, 0);
    if (j < 0) return s;
    Word out(s.begin(), s.begin() + j);
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), s.begin() + j + static_cast<long>(t.size()), s.end());
    return out;
}

bool contains(const Word& s, const Word& t) { return find_from(s, t, 0) >= 0; }

bool prefixof(const Word& t, const Word& s) {
    return t.size() <= s.size() && std::equal(t.begin(), t.end(), s.begin());
}

bool suffixof(const Word& t, const Word& s) {
    return t.size() <= s.size() && std::equal(t.begin(), t.end(), s.end() - static_cast<long>(t.size()));
}

}  // namespace strfun

Word eval_str(const StrTerm& t, const Assignment& a) {
    switch (t.kind) {
        case StrTerm::Kind::Var: {
            auto it = a.strings.find(t.name);
            return it == a.strings.end() ? Word{} : it->second;
        }
        case StrTerm::Kind::Lit: return t.lit;
        case StrTerm::Kind::Concat: {
            Word out;
            for (const auto& p : t.args) {
                Word w = eval_str(*p, a);
                out.insert(out.end(), w.begin(), w.end());
            }
            return out;
        }
        case StrTerm::Kind::Substr: return strfun::substr(eval_str(*t.args[0], a), eval_int(*t.i, a), eval_int(*t.n, a));
        case StrTerm::Kind::At: return strfun::at(eval_str(*t.args[0], a), eval_int(*t.i, a));
        case StrTerm::Kind::Replace:
            return strfun::replace(eval_str(*t.args[0], a), eval_str(*t.args[1], a), eval_str(*t.args[2], a));
        case StrTerm::Kind::Ite: return eval_formula(*t.cond, a) ? eval_str(*t.args[0], a) : eval_str(*t.args[1], a);
    }
    return {};
}

namespace {
mpz_class eval_leaf(const IntLeaf& l, const Assignment& a) {
    switch (l.kind) {
        case IntLeaf::Kind::Var: {
            auto it = a.ints.find(l.name);
            return it == a.ints.end() ? mpz_class(0) : it->second;
        }
        case IntLeaf::Kind::Len: return static_cast<unsigned long>(eval_str(*l.s, a).size());
        case IntLeaf::Kind::IndexOf: return strfun::indexof(eval_str(*l.s, a), eval_str(*l.t, a), eval_int(*l.start, a));
        case IntLeaf::Kind::Ite: return eval_formula(*l.cond, a) ? eval_int(*l.then_, a) : eval_int(*l.else_, a);
    }
    return 0;
}
}  // namespace

mpz_class eval_int(const LinTerm& t, const Assignment& a) {
    mpz_class sum = t.constant;
    for (const auto& [key, entry] : t.terms) sum += entry.second * eval_leaf(*entry.first, a);
    return sum;
}

bool eval_formula(const Formula& f, const Assignment& a) {
    switch (f.kind) {
        case Formula::Kind::True: return true;
        case Formula::Kind::False: return false;
        case Formula::Kind::Not: return !eval_formula(*f.args[0], a);
        case Formula::Kind::And:
            for (const auto& g : f.args)
                if (!eval_formula(*g, a)) return false;
            return true;
        case Formula::Kind::Or:
            for (const auto& g : f.args)
                if (eval_formula(*g, a)) return true;
            return false;
        case Formula::Kind::Atom: break;
    }
    const Atom& x = *f.atom;
    switch (x.kind) {
        case Atom::Kind::BoolVar: {
            auto it = a.bools.find(x.name);
            return it != a.bools.end() && it->second;
        }
        case Atom::Kind::StrEq: return eval_str(*x.a, a) == eval_str(*x.b, a);
        case Atom::Kind::InRe: return regex_matches(*x.r1, eval_str(*x.a, a));
        case Atom::Kind::RegexEq: {
            std::vector<CodePoint> points;
            std::vector<std::pair<CodePoint, CodePoint>> ranges;
            collect_alphabet(*x.r1, points, ranges);
            collect_alphabet(*x.r2, points, ranges);
            auto sym = SymbolTable::build(points, ranges);
            return nfa::is_equivalent(compile_regex(*x.r1, sym), compile_regex(*x.r2, sym));
        }
        case Atom::Kind::Contains: return strfun::contains(eval_str(*x.a, a), eval_str(*x.b, a));
        case Atom::Kind::Prefix: return strfun::prefixof(eval_str(*x.a, a), eval_str(*x.b, a));
        case Atom::Kind::Suffix: return strfun::suffixof(eval_str(*x.a, a), eval_str(*x.b, a));
        case Atom::Kind::IntLe: return eval_int(x.lin, a) <= 0;
        case Atom::Kind::IntEq: return eval_int(x.lin, a) == 0;
        case Atom::Kind::Unsupported: throw std::logic_error("unsupported atom in evaluation");
    }
    return false;
}

}  // namespace strsat
