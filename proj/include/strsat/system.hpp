#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strsat/lia.hpp"
#include "strsat/nfa.hpp"
#include "strsat/term.hpp"

namespace strsat {

/// One position of a flattened concatenation: a variable or a nonempty literal.
struct Item {
    bool is_var = false;
    std::string var;
    Word lit;

    static Item variable(std::string name);
    static Item literal(Word w);

    friend bool operator==(const Item&, const Item&) = default;
};

using Side = std::vector<Item>;

/// Merges adjacent literals and drops empty ones.
Side normalize_side(Side s);
Side side_of(const StrTerm& flat);
bool is_ground(const Side& s);
Word ground_word(const Side& s);
std::string to_string(const Side& s);

struct Equation {
    Side lhs, rhs;
};

/// Name of the integer variable standing for the length of a string variable.
std::string length_var(const std::string& var);
/// |s| as a linear expression over length variables.
LinExpr side_length(const Side& s);

/// How to rebuild the value of eliminated variables from the final model,
/// replayed from the last step backwards.
struct ModelStep {
    enum class Kind { Define, Factor };
    Kind kind = Kind::Define;
    std::string var;           // Define: var := value of `value`
    Side value;
    Side free_side, source;    // Factor: split the value of `source` over `free_side`
};

using RegexFact = std::pair<std::pair<RegexPtr, RegexPtr>, bool>;

/// Conjunction of string literals handed to a decision procedure.
struct ConjunctiveSystem {
    std::shared_ptr<const SymbolTable> symbols;
    std::vector<Equation> equations;
    std::vector<Equation> disequations;
    std::map<std::string, Nfa> regular;     // absent entry: no constraint
    std::vector<LiaFormula> lia;
    std::vector<LiaFormula> lia_axioms;     // implied by the string part
    std::set<std::string> len_vars;
    std::vector<RegexFact> regex_facts;
    std::vector<ModelStep> trail;
    std::optional<std::string> unsupported;
    bool conflict = false;                  // ground facts already contradict

    const Nfa& language(const std::string& var) const;
    Nfa universal() const;
    /// Intersects the constraint on `var` with `lang`.
    void restrict(const std::string& var, const Nfa& lang);
    std::set<std::string> variables() const;
    /// Occurrences of each variable over all equation and disequation sides.
    std::map<std::string, int> occurrences() const;
    std::size_t alphabet_size() const { return symbols->size(); }
    bool has_constraint(const std::string& var) const;
};

Side substitute(const Side& s, const std::string& var, const Side& replacement);
/// After var := value: rewrites |var| in the arithmetic part and moves length
/// sensitivity to the variables of `value`.
void define_length(ConjunctiveSystem& sys, const std::string& var, const Side& value);
/// Replaces var everywhere in the equations and disequations.
void substitute(ConjunctiveSystem& sys, const std::string& var, const Side& replacement);

/// Compiles regexes once per symbol table.
class RegexCache {
public:
    explicit RegexCache(std::shared_ptr<const SymbolTable> symbols) : symbols_(std::move(symbols)) {}
    const Nfa& get(const RegexPtr& r);
    const SymbolTable& symbols() const { return *symbols_; }
    std::shared_ptr<const SymbolTable> table() const { return symbols_; }

private:
    std::shared_ptr<const SymbolTable> symbols_;
    std::map<std::string, Nfa> cache_;
};

LinExpr to_lin_expr(const LinTerm& t);
/// Variables of a flattened term, in order of occurrence.
void collect_vars(const Side& s, std::set<std::string>& out);

using SignedAtom = std::pair<AtomPtr, bool>;

struct SystemOptions {
    /// Fresh variable prefix for memberships of compound terms.
    std::string fresh_prefix = "!m";
};

/// Collects a Boolean assignment of core atoms into a system. Boolean
/// variables are ignored; a positive Unsupported atom sets `unsupported`.
ConjunctiveSystem assignment_to_system(const std::vector<SignedAtom>& literals, RegexCache& cache,
                                       const SystemOptions& options = {});

/// Values of all variables of a model, after replaying the trail.
std::map<std::string, Word> replay_trail(const ConjunctiveSystem& sys, std::map<std::string, Word> values);

Word side_value(const Side& s, const std::map<std::string, Word>& values);

/// Splits `w` into words of the given languages, if possible.
std::optional<std::vector<Word>> factorize(const Word& w, const std::vector<const Nfa*>& parts,
                                           const SymbolTable& symbols);

/// Checks equations, disequations and memberships on concrete words.
bool satisfies(const ConjunctiveSystem& sys, const std::map<std::string, Word>& values, const LiaModel& ints);

}  // namespace strsat
