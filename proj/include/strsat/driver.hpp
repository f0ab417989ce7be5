#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "strsat/eval.hpp"
#include "strsat/preprocess.hpp"
#include "strsat/regex.hpp"
#include "strsat/smtlib.hpp"
#include "strsat/system.hpp"

namespace strsat {

enum class LogLevel { Off, Info, Debug };

struct SolveOptions {
    double timeout_seconds = 120;
    std::optional<ProcedureKind> procedure;  // nullopt: select per system
    std::uint64_t seed = 0;                  // 0 keeps the default phases
    std::uint64_t stabilization_steps = 10000;
    std::size_t nielsen_node_cap = 4096;
    std::size_t nielsen_schema_cap = 512;
    bool minimize_conflicts = true;
    LogLevel log = LogLevel::Off;
    std::ostream* log_stream = nullptr;
};

struct Verdict {
    enum class Status { Sat, Unsat, Unknown };
    Status status = Status::Unknown;
    Assignment model;
    std::string reason;
    std::uint64_t theory_checks = 0;
};

std::string to_string(Verdict::Status s);

/// regex-eq when the system holds nothing but ground regex facts, nielsen
/// for quadratic systems, stabilization otherwise.
ProcedureKind select_procedure(const ConjunctiveSystem& sys);

/// Truth of the atom R1 = R2 (or its negation); both sides are variable-free.
bool decide_regex_eq(const RegexPtr& lhs, const RegexPtr& rhs, bool negated, RegexCache& cache);

struct TheoryResult {
    enum class Status { Sat, Unsat, Unknown };
    Status status = Status::Unknown;
    std::map<std::string, Word> strings;
    LiaModel ints;
    std::string reason;
    ProcedureKind procedure = ProcedureKind::Stabilization;
};

/// Decides one conjunction of string literals. Sat results carry a model
/// checked against `sys`.
TheoryResult theory_check(const ConjunctiveSystem& sys, const SolveOptions& options = {},
                          std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

/// Satisfiability of the conjunction of `assertions`.
Verdict solve_assertions(const std::vector<FormulaPtr>& assertions, const SolveOptions& options = {});

/// One verdict per check-sat, each over the assertions made before it.
std::vector<Verdict> solve_script(const Script& script, const SolveOptions& options = {});

/// SMT-LIB get-model block for the declared constants.
std::string format_model(const Verdict& v, const std::vector<std::pair<std::string, Sort>>& declarations);

}  // namespace strsat
