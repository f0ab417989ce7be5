#pragma once

#include <set>
#include <string>
#include <vector>

#include "strsat/term.hpp"

namespace strsat {

/// Generator of variable names that cannot clash with input symbols.
class FreshNames {
public:
    FreshNames() = default;
    explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}

    std::string make(const std::string& hint);
    void reserve(const std::string& name) { taken_.insert(name); }

private:
    std::set<std::string> taken_;
    unsigned counter_ = 0;
};

struct Saturated {
    FormulaPtr formula;
    std::vector<std::string> fresh_strings;
    std::vector<std::string> fresh_ints;
    std::vector<std::string> fresh_bools;
};

/// Rewrites the formula into core atoms: string functions become fresh
/// variables with defining lemmas, predicates become Boolean proxies with
/// lemmas for both polarities, and length axioms are attached to every word
/// equation. Constructs outside the supported fragment become Unsupported
/// atoms, which make the theory answer unknown when they are relevant.
Saturated saturate(const FormulaPtr& f, FreshNames& names);
FormulaPtr saturate(const FormulaPtr& f);

/// Names of all constants occurring in a formula.
std::set<std::string> symbol_names(const Formula& f);

}  // namespace strsat
