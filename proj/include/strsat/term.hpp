#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "strsat/regex.hpp"
#include "strsat/symbols.hpp"

namespace strsat {

struct StrTerm;
struct IntLeaf;
struct Atom;
struct Formula;
using StrPtr = std::shared_ptr<const StrTerm>;
using IntLeafPtr = std::shared_ptr<const IntLeaf>;
using AtomPtr = std::shared_ptr<const Atom>;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Linear integer term: constant + sum of coefficient * leaf. Leaves are kept
/// in a map keyed by their printed form, so equal terms compare equal.
struct LinTerm {
    mpz_class constant = 0;
    std::map<std::string, std::pair<IntLeafPtr, mpz_class>> terms;

    static LinTerm of(long value);
    static LinTerm of(const mpz_class& value);
    static LinTerm leaf(IntLeafPtr leaf);

    bool is_constant() const { return terms.empty(); }
    LinTerm operator+(const LinTerm& o) const;
    LinTerm operator-(const LinTerm& o) const;
    LinTerm scaled(const mpz_class& k) const;
    bool operator==(const LinTerm& o) const;
};

using LinPtr = std::shared_ptr<const LinTerm>;

struct IntLeaf {
    enum class Kind { Var, Len, IndexOf, Ite };
    Kind kind = Kind::Var;
    std::string name;  // Var
    StrPtr s, t;       // Len uses s; IndexOf(s, t, start)
    LinPtr start;
    FormulaPtr cond;    // Ite
    LinPtr then_, else_;
};

struct StrTerm {
    enum class Kind { Var, Lit, Concat, Substr, At, Replace, Ite };
    Kind kind = Kind::Lit;
    std::string name;           // Var
    Word lit;                   // Lit
    std::vector<StrPtr> args;   // Concat parts; Substr/At: [s]; Replace: [s, t, u]; Ite: [then, else]
    LinPtr i, n;                // Substr(s, i, n), At(s, i)
    FormulaPtr cond;            // Ite
};

struct Atom {
    enum class Kind { BoolVar, StrEq, InRe, RegexEq, Contains, Prefix, Suffix, IntLe, IntEq, Unsupported };
    Kind kind = Kind::BoolVar;
    std::string name;   // BoolVar name, Unsupported reason
    StrPtr a, b;        // StrEq(a, b); InRe(a); Contains(a, b): a contains b; Prefix(a, b): a prefix of b
    RegexPtr r1, r2;    // InRe(a, r1); RegexEq(r1, r2)
    LinTerm lin;        // IntLe: lin <= 0; IntEq: lin = 0
    bool axiom = false; // length axiom: used for early conflicts only
};

struct Formula {
    enum class Kind { True, False, Atom, Not, And, Or };
    Kind kind = Kind::True;
    AtomPtr atom;
    std::vector<FormulaPtr> args;
};

namespace ir {

StrPtr var(std::string name);
StrPtr lit(Word w);
StrPtr lit(const std::string& ascii);
/// Flattens nested concatenations, merges adjacent literals and drops empty
/// ones. A single remaining part is returned as is.
StrPtr concat(std::vector<StrPtr> parts);
StrPtr substr(StrPtr s, LinTerm i, LinTerm n);
StrPtr at(StrPtr s, LinTerm i);
StrPtr replace(StrPtr s, StrPtr t, StrPtr u);
StrPtr ite(FormulaPtr c, StrPtr a, StrPtr b);

LinTerm int_var(std::string name);
LinTerm len(StrPtr s);
LinTerm indexof(StrPtr s, StrPtr t, LinTerm start);
LinTerm int_ite(FormulaPtr c, LinTerm a, LinTerm b);

FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr atom(Atom a);
FormulaPtr bool_var(std::string name);
FormulaPtr str_eq(StrPtr a, StrPtr b);
FormulaPtr in_re(StrPtr s, RegexPtr r);
FormulaPtr regex_eq(RegexPtr a, RegexPtr b);
FormulaPtr contains(StrPtr s, StrPtr t);
FormulaPtr prefixof(StrPtr t, StrPtr s);
FormulaPtr suffixof(StrPtr t, StrPtr s);
FormulaPtr le(LinTerm a, LinTerm b);
FormulaPtr lt(LinTerm a, LinTerm b);
FormulaPtr int_eq(LinTerm a, LinTerm b);
FormulaPtr unsupported(std::string what);
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(std::vector<FormulaPtr> fs);
FormulaPtr disj(std::vector<FormulaPtr> fs);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);

/// Length of a concatenation of variables and literals as a linear term.
LinTerm len_of_flat(const StrPtr& s);

}  // namespace ir

std::string to_smtlib(const StrTerm& t);
std::string to_smtlib(const LinTerm& t);
std::string to_smtlib(const IntLeaf& t);
std::string to_smtlib(const Atom& a);
std::string to_smtlib(const Formula& f);

/// Structural identity of an atom occurrence.
std::string atom_key(const Atom& a);

bool equal(const Formula& a, const Formula& b);

/// Code points and regex ranges mentioned anywhere in the formula.
void collect_alphabet(const Formula& f, std::vector<CodePoint>& points,
                      std::vector<std::pair<CodePoint, CodePoint>>& ranges);

}  // namespace strsat
