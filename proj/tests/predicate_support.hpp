#pragma once

#include <random>
#include <string>
#include <vector>

#include "strsat/eval.hpp"
#include "strsat/term.hpp"

namespace testing_support {

using namespace strsat;

struct PredicateInstance {
    std::vector<FormulaPtr> assertions;
    bool expected = false;
};

inline std::string random_letters(std::mt19937& rng, std::size_t max) {
    std::string s;
    for (std::size_t n = rng() % (max + 1); n > 0; --n) s += "abc"[rng() % 3];
    return s;
}

/// One ground instantiation of a predicate; `round % 7` picks which one.
/// x is pinned to a literal and the atom is asserted positively or negated.
inline PredicateInstance predicate_instance(std::mt19937& rng, int round) {
    auto lit_word = [](const std::string& s) { return Word(s.begin(), s.end()); };
    Word s = lit_word(random_letters(rng, 4));
    Word t = lit_word(random_letters(rng, 2));
    Word u = lit_word(random_letters(rng, 2));
    long i = static_cast<long>(rng() % 7) - 1;
    long n = static_cast<long>(rng() % 7) - 1;
    bool positive = rng() % 2;
    auto x = ir::var("x"), y = ir::var("y");
    PredicateInstance out;
    auto& fs = out.assertions;
    fs.push_back(ir::str_eq(x, ir::lit(s)));
    // Needles are variables only in positive predicate contexts; the
    // first-occurrence functions take literal needles.
    StrPtr needle = ir::lit(t);
    if (positive && round % 7 < 3 && rng() % 2) {
        needle = y;
        fs.push_back(ir::str_eq(y, ir::lit(t)));
    }
    LinTerm ti = LinTerm::of(i);
    if (rng() % 2) {
        ti = ir::int_var("i");
        fs.push_back(ir::int_eq(ti, LinTerm::of(i)));
    }
    bool truth = false;
    FormulaPtr atom;
    auto cand_word = [&](const Word& correct) { return rng() % 2 ? correct : lit_word(random_letters(rng, 2)); };
    switch (round % 7) {
    case 0:
        atom = ir::contains(x, needle);
        truth = strfun::contains(s, t);
        break;
    case 1:
        atom = ir::prefixof(needle, x);
        truth = strfun::prefixof(t, s);
        break;
    case 2:
        atom = ir::suffixof(needle, x);
        truth = strfun::suffixof(t, s);
        break;
    case 3: {
        Word c = cand_word(strfun::at(s, i));
        atom = ir::str_eq(ir::lit(c), ir::at(x, ti));
        truth = c == strfun::at(s, i);
        break;
    }
    case 4: {
        Word c = cand_word(strfun::substr(s, i, n));
        atom = ir::str_eq(ir::lit(c), ir::substr(x, ti, LinTerm::of(n)));
        truth = c == strfun::substr(s, i, n);
        break;
    }
    case 5: {
        mpz_class correct = strfun::indexof(s, t, i);
        mpz_class c = rng() % 2 ? correct : mpz_class(static_cast<long>(rng() % 7) - 1);
        atom = ir::int_eq(LinTerm::of(c), ir::indexof(x, needle, ti));
        truth = c == correct;
        break;
    }
    default: {
        Word correct = strfun::replace(s, t, u);
        Word c = cand_word(correct);
        atom = ir::str_eq(ir::lit(c), ir::replace(x, needle, ir::lit(u)));
        truth = c == correct;
        break;
    }
    }
    fs.push_back(positive ? atom : ir::neg(atom));
    out.expected = positive ? truth : !truth;
    return out;
}

}  // namespace testing_support
