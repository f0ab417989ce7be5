#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "strsat/term.hpp"

namespace strsat {

/// Values for the constants of a script. Missing entries read as "", 0, false.
struct Assignment {
    std::map<std::string, Word> strings;
    std::map<std::string, mpz_class> ints;
    std::map<std::string, bool> bools;
};

/// Reference semantics of the string theory, evaluated directly on terms.
Word eval_str(const StrTerm& t, const Assignment& a);
mpz_class eval_int(const LinTerm& t, const Assignment& a);
bool eval_formula(const Formula& f, const Assignment& a);

namespace strfun {

Word at(const Word& s, const mpz_class& i);
Word substr(const Word& s, const mpz_class& i, const mpz_class& n);
mpz_class indexof(const Word& s, const Word& t, const mpz_class& i);
Word replace(const Word& s, const Word& t, const Word& u);
bool contains(const Word& s, const Word& t);
bool prefixof(const Word& t, const Word& s);
bool suffixof(const Word& t, const Word& s);

}  // namespace strfun

}  // namespace strsat
