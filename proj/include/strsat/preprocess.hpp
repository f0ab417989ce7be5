#pragma once

#include <string>

#include "strsat/system.hpp"

namespace strsat {

enum class ProcedureKind { Stabilization, Nielsen, RegexEq };

std::string procedure_name(ProcedureKind k);

struct PreprocessOptions {
    int max_rounds = 100;
    int lia_entailment_checks = 24;
};

struct PreprocessResult {
    enum class Status { Reduced, Unsat };
    Status status = Status::Reduced;
    ConjunctiveSystem system;
    std::string reason;  // rule that closed the system
};

/// Simplifies the system with the rule pipeline chosen for `target`
/// (stabilization: all six rules; nielsen: epsilon and variable
/// propagation, disequation reduction and unsat patterns; regex-eq: none).
/// Eliminated variables are recorded in the trail.
PreprocessResult preprocess(ConjunctiveSystem sys, ProcedureKind target, const PreprocessOptions& options = {});

/// Strips common leading and trailing items. Returns false on a clash of
/// distinct letters or when exactly one side becomes empty while the other
/// holds a literal.
bool trim_equation(Equation& e);

/// Disjointness of two length sets.
bool disjoint(const SemilinearLengthSet& a, const SemilinearLengthSet& b);

SemilinearLengthSet side_lengths(const ConjunctiveSystem& sys, const Side& s);

}  // namespace strsat
