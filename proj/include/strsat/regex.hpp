#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "strsat/nfa.hpp"
#include "strsat/symbols.hpp"

namespace strsat {

struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

/// Extended regular expression over code points (SMT-LIB `RegLan`).
struct Regex {
    enum class Kind { None, All, AllChar, Str, Range, Concat, Union, Inter, Comp, Diff, Star, Plus, Opt, Loop };

    Kind kind = Kind::None;
    Word word;                 // Str
    CodePoint lo = 0, hi = 0;  // Range
    unsigned loop_lo = 0, loop_hi = 0;
    std::vector<RegexPtr> args;

    bool operator==(const Regex& other) const;
};

namespace re {

RegexPtr none();
RegexPtr all();
RegexPtr allchar();
RegexPtr str(Word w);
RegexPtr range(CodePoint lo, CodePoint hi);
RegexPtr concat(std::vector<RegexPtr> args);
RegexPtr unite(std::vector<RegexPtr> args);
RegexPtr inter(std::vector<RegexPtr> args);
RegexPtr comp(RegexPtr r);
RegexPtr diff(RegexPtr a, RegexPtr b);
RegexPtr star(RegexPtr r);
RegexPtr plus(RegexPtr r);
RegexPtr opt(RegexPtr r);
RegexPtr loop(RegexPtr r, unsigned lo, unsigned hi);

}  // namespace re

std::string to_smtlib(const Regex& r);

/// Collects code points and ranges that must be distinguishable letters.
void collect_alphabet(const Regex& r, std::vector<CodePoint>& points,
                      std::vector<std::pair<CodePoint, CodePoint>>& ranges);

/// Reference matcher working directly on the expression (no automata).
bool regex_matches(const Regex& r, const Word& w);

/// Builds an NFA bottom-up. Subtrees under a complement are kept as minimal
/// DFAs; every other intermediate result is trimmed and simulation-reduced.
Nfa compile_regex(const Regex& r, const SymbolTable& symbols);

}  // namespace strsat
