#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strsat/lia.hpp"
#include "strsat/system.hpp"

namespace strsat {

/// lhs ⊆ rhs over the languages of `assignment`.
struct Inclusion {
    std::vector<std::string> lhs, rhs;
};

struct InclusionSystem {
    std::shared_ptr<const SymbolTable> symbols;
    std::vector<Inclusion> inclusions;
    std::map<std::string, Nfa> assignment;
    std::set<std::string> length_sensitive;
};

/// Each equation gives both inclusions unless one side consists of
/// unconstrained, length-insensitive variables occurring nowhere else and the
/// other side has no repeated variable; then only other ⊆ side is kept.
/// Literals become fresh variables with singleton languages.
InclusionSystem build_system(const ConjunctiveSystem& sys);

bool is_stable(const InclusionSystem& s);

/// Refinement of the variables of one inclusion: position i of `refined`
/// belongs to the i-th distinct variable of lhs, in order of first occurrence.
struct Noodle {
    std::map<std::string, Nfa> refined;
};

/// Refines lhs against rhs. The union over noodles of the concatenations of
/// the refined languages equals L(lhs_1 ... lhs_n) ∩ L(rhs), except that
/// repeated variables are intersected across their positions.
std::vector<Noodle> noodlify(const std::vector<std::string>& lhs, const std::vector<Nfa>& lhs_nfas, const Nfa& rhs);

/// For a stable system: lengths of length-sensitive variables and of the
/// variables of every inclusion lie in their length sets, inclusion sides
/// have equal lengths, lengths are nonnegative.
LiaFormula generate_lengths(const InclusionSystem& s);

/// Words of the LIA-chosen lengths (shortest words for the others).
std::map<std::string, Word> extract_model(const InclusionSystem& s, const LiaModel& lengths);

/// |v| ∈ length_set(lang) as a formula.
LiaFormula length_constraint(const std::string& var, const Nfa& lang);

/// Alternatives for lhs ≠ rhs. Each branch adds equations, regular
/// constraints and length atoms with fresh variables named `prefix<k>`.
struct DisequationBranch {
    std::vector<Equation> equations;
    std::map<std::string, Nfa> regular;
    std::vector<LiaFormula> lia;
    std::set<std::string> len_vars;
    bool same_class = false;  // two letters of one symbol class must differ
};
std::vector<DisequationBranch> encode_disequation(const Side& lhs, const Side& rhs, const SymbolTable& symbols,
                                                  const std::string& prefix);

struct StabilizationOptions {
    std::uint64_t step_budget = 10000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::size_t noodle_cap = 4096;
    std::size_t max_depth = 1000;
};

struct StabilizationResult {
    enum class Status { Sat, Unsat, Unknown };
    Status status = Status::Unknown;
    std::map<std::string, Word> model;
    LiaModel ints;
    std::string reason;
    std::uint64_t steps = 0;
    std::uint64_t leaves = 0;
};

/// Depth-first search over refinements of the system. Leaves without
/// equations yield a length formula checked together with the system's
/// arithmetic; the first satisfiable leaf gives the model.
StabilizationResult solve(const ConjunctiveSystem& sys, const StabilizationOptions& options = {});

}  // namespace strsat
