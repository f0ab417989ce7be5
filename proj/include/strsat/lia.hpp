#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace strsat {

/// Sum of coefficient * variable plus a constant.
struct LinExpr {
    std::map<std::string, mpz_class> coef;
    mpz_class constant = 0;

    static LinExpr var(const std::string& name, const mpz_class& k = 1);
    static LinExpr of(const mpz_class& c);

    LinExpr operator+(const LinExpr& o) const;
    LinExpr operator-(const LinExpr& o) const;
    LinExpr scaled(const mpz_class& k) const;
    mpz_class evaluate(const std::map<std::string, mpz_class>& model) const;
};

/// Quantifier-free linear integer formula with existential binders allowed
/// anywhere. Atoms are `expr <= 0` or `expr = 0`.
struct LiaFormula {
    enum class Kind { True, False, Le, Eq, Not, And, Or, Exists };
    Kind kind = Kind::True;
    LinExpr expr;
    std::vector<LiaFormula> args;
    std::vector<std::string> bound;  // Exists
};

using LiaModel = std::map<std::string, mpz_class>;

namespace lia {

LiaFormula truth();
LiaFormula falsity();
LiaFormula le(const LinExpr& a, const LinExpr& b);
LiaFormula lt(const LinExpr& a, const LinExpr& b);
LiaFormula ge(const LinExpr& a, const LinExpr& b);
LiaFormula gt(const LinExpr& a, const LinExpr& b);
LiaFormula eq(const LinExpr& a, const LinExpr& b);
LiaFormula ne(const LinExpr& a, const LinExpr& b);
LiaFormula neg(LiaFormula f);
LiaFormula conj(std::vector<LiaFormula> fs);
LiaFormula disj(std::vector<LiaFormula> fs);
LiaFormula exists(std::vector<std::string> vars, LiaFormula body);

/// f with `var` replaced by `value` (bound occurrences are left alone);
/// atoms that become ground are folded.
LiaFormula substitute(const LiaFormula& f, const std::string& var, const LinExpr& value);
/// Renames variables, binders included.
LiaFormula rename(const LiaFormula& f, const std::map<std::string, std::string>& names);

/// Evaluation of a formula without binders (bound variables, if any, are
/// read from the model like free ones).
bool evaluate(const LiaFormula& f, const LiaModel& model);

std::string to_string(const LiaFormula& f);
std::vector<std::string> free_variables(const LiaFormula& f);

}  // namespace lia

struct LiaOptions {
    std::uint64_t node_limit = 20000;       // branch-and-bound nodes per cube
    std::uint64_t cube_limit = 100000;      // propositional assignments tried
    std::size_t bound_bits_cap = 1 << 16;   // magnitude cap on the small-model box
};

struct LiaResult {
    enum class Status { Sat, Unsat, ResourceExceeded };
    Status status = Status::Unsat;
    LiaModel model;
};

/// Decides f conjoined with all assumptions. Binders are hoisted with
/// renamed variables; the model lists every free variable of the input.
LiaResult lia_check(const LiaFormula& f, const std::vector<LiaFormula>& assumptions = {},
                    const LiaOptions& options = {});

struct LiaBoxRange {
    long lo;
    long hi;
};

/// Pointwise agreement of f and g over the integer box (binders are decided
/// per point).
bool lia_equiv_on_box(const LiaFormula& f, const LiaFormula& g, const std::map<std::string, LiaBoxRange>& box);

/// Conjunction-only entry point used by the Boolean layer and tests.
/// `atoms` are Le/Eq (possibly under one Not).
LiaResult solve_cube(const std::vector<LiaFormula>& atoms, const LiaOptions& options = {});

}  // namespace strsat
