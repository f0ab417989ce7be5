#include "strsat/lia.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "strsat/skeleton.hpp"

namespace strsat {

LinExpr LinExpr::var(const std::string& name, const mpz_class& k) {
    LinExpr e;
    if (k != 0) e.coef[name] = k;
    return e;
}

LinExpr LinExpr::of(const mpz_class& c) {
    LinExpr e;
    e.constant = c;
    return e;
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
    LinExpr out = *this;
    out.constant += o.constant;
    for (const auto& [v, k] : o.coef) {
        mpz_class& slot = out.coef[v];
        slot += k;
        if (slot == 0) out.coef.erase(v);
    }
    return out;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + o.scaled(-1); }

LinExpr LinExpr::scaled(const mpz_class& k) const {
    LinExpr out;
    if (k == 0) return out;
    out.constant = constant * k;
    for (const auto& [v, c] : coef) out.coef[v] = c * k;
    return out;
}

mpz_class LinExpr::evaluate(const std::map<std::string, mpz_class>& model) const {
    mpz_class sum = constant;
    for (const auto& [v, k] : coef) {
        auto it = model.find(v);
        if (it != model.end()) sum += k * it->second;
    }
    return sum;
}

namespace lia {

LiaFormula truth() { return {}; }

LiaFormula falsity() {
    LiaFormula f;
    f.kind = LiaFormula::Kind::False;
    return f;
}

namespace {
LiaFormula atom(LiaFormula::Kind k, LinExpr e) {
    if (e.coef.empty()) {
        bool holds = k == LiaFormula::Kind::Le ? e.constant <= 0 : e.constant == 0;
        return holds ? truth() : falsity();
    }
    LiaFormula f;
    f.kind = k;
    f.expr = std::move(e);
    return f;
}
}  // namespace

LiaFormula le(const LinExpr& a, const LinExpr& b) { return atom(LiaFormula::Kind::Le, a - b); }
LiaFormula lt(const LinExpr& a, const LinExpr& b) { return atom(LiaFormula::Kind::Le, a - b + LinExpr::of(1)); }
LiaFormula ge(const LinExpr& a, const LinExpr& b) { return le(b, a); }
LiaFormula gt(const LinExpr& a, const LinExpr& b) { return lt(b, a); }
LiaFormula eq(const LinExpr& a, const LinExpr& b) { return atom(LiaFormula::Kind::Eq, a - b); }
LiaFormula ne(const LinExpr& a, const LinExpr& b) { return neg(eq(a, b)); }

LiaFormula neg(LiaFormula f) {
    if (f.kind == LiaFormula::Kind::True) return falsity();
    if (f.kind == LiaFormula::Kind::False) return truth();
    if (f.kind == LiaFormula::Kind::Not) return std::move(f.args[0]);
    LiaFormula out;
    out.kind = LiaFormula::Kind::Not;
    out.args.push_back(std::move(f));
    return out;
}

LiaFormula conj(std::vector<LiaFormula> fs) {
    LiaFormula out;
    out.kind = LiaFormula::Kind::And;
    for (auto& f : fs) {
        if (f.kind == LiaFormula::Kind::False) return falsity();
        if (f.kind == LiaFormula::Kind::True) continue;
        if (f.kind == LiaFormula::Kind::And) {
            for (auto& g : f.args) out.args.push_back(std::move(g));
        } else {
            out.args.push_back(std::move(f));
        }
    }
    if (out.args.empty()) return truth();
    if (out.args.size() == 1) return std::move(out.args[0]);
    return out;
}

LiaFormula disj(std::vector<LiaFormula> fs) {
    LiaFormula out;
    out.kind = LiaFormula::Kind::Or;
    for (auto& f : fs) {
        if (f.kind == LiaFormula::Kind::True) return truth();
        if (f.kind == LiaFormula::Kind::False) continue;
        if (f.kind == LiaFormula::Kind::Or) {
            for (auto& g : f.args) out.args.push_back(std::move(g));
        } else {
            out.args.push_back(std::move(f));
        }
    }
    if (out.args.empty()) return falsity();
    if (out.args.size() == 1) return std::move(out.args[0]);
    return out;
}

LiaFormula exists(std::vector<std::string> vars, LiaFormula body) {
    if (vars.empty() || body.kind == LiaFormula::Kind::True || body.kind == LiaFormula::Kind::False) return body;
    LiaFormula out;
    out.kind = LiaFormula::Kind::Exists;
    out.bound = std::move(vars);
    out.args.push_back(std::move(body));
    return out;
}

LiaFormula substitute(const LiaFormula& f, const std::string& var, const LinExpr& value) {
    switch (f.kind) {
        case LiaFormula::Kind::True:
        case LiaFormula::Kind::False: return f;
        case LiaFormula::Kind::Le:
        case LiaFormula::Kind::Eq: {
            auto it = f.expr.coef.find(var);
            if (it == f.expr.coef.end()) return f;
            mpz_class k = it->second;
            LinExpr e = f.expr;
            e.coef.erase(var);
            return atom(f.kind, e + value.scaled(k));
        }
        case LiaFormula::Kind::Not: return neg(substitute(f.args[0], var, value));
        case LiaFormula::Kind::And:
        case LiaFormula::Kind::Or: {
            std::vector<LiaFormula> args;
            for (const auto& g : f.args) args.push_back(substitute(g, var, value));
            return f.kind == LiaFormula::Kind::And ? conj(std::move(args)) : disj(std::move(args));
        }
        case LiaFormula::Kind::Exists:
            if (std::find(f.bound.begin(), f.bound.end(), var) != f.bound.end()) return f;
            return exists(f.bound, substitute(f.args[0], var, value));
    }
    return f;
}

LiaFormula rename(const LiaFormula& f, const std::map<std::string, std::string>& names) {
    LiaFormula out = f;
    if (!f.expr.coef.empty()) {
        out.expr.coef.clear();
        for (const auto& [v, k] : f.expr.coef) {
            auto it = names.find(v);
            out.expr.coef[it == names.end() ? v : it->second] += k;
        }
    }
    for (auto& b : out.bound) {
        auto it = names.find(b);
        if (it != names.end()) b = it->second;
    }
    for (auto& g : out.args) g = rename(g, names);
    return out;
}

bool evaluate(const LiaFormula& f, const LiaModel& m) {
    switch (f.kind) {
        case LiaFormula::Kind::True: return true;
        case LiaFormula::Kind::False: return false;
        case LiaFormula::Kind::Le: return f.expr.evaluate(m) <= 0;
        case LiaFormula::Kind::Eq: return f.expr.evaluate(m) == 0;
        case LiaFormula::Kind::Not: return !evaluate(f.args[0], m);
        case LiaFormula::Kind::And:
            for (const auto& g : f.args)
                if (!evaluate(g, m)) return false;
            return true;
        case LiaFormula::Kind::Or:
            for (const auto& g : f.args)
                if (evaluate(g, m)) return true;
            return false;
        case LiaFormula::Kind::Exists: return evaluate(f.args[0], m);
    }
    return false;
}

namespace {

std::string expr_string(const LinExpr& e) {
    std::string out;
    for (const auto& [v, k] : e.coef) {
        if (!out.empty()) out += " + ";
        out += (k == 1 ? "" : k.get_str() + "*") + v;
    }
    if (e.constant != 0 || out.empty()) {
        if (!out.empty()) out += " + ";
        out += e.constant.get_str();
    }
    return out;
}

void free_vars(const LiaFormula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    for (const auto& [v, k] : f.expr.coef)
        if (!bound.count(v)) out.insert(v);
    if (f.kind == LiaFormula::Kind::Exists) {
        std::set<std::string> inner = bound;
        inner.insert(f.bound.begin(), f.bound.end());
        free_vars(f.args[0], inner, out);
        return;
    }
    for (const auto& g : f.args) free_vars(g, bound, out);
}

}  // namespace

std::string to_string(const LiaFormula& f) {
    switch (f.kind) {
        case LiaFormula::Kind::True: return "true";
        case LiaFormula::Kind::False: return "false";
        case LiaFormula::Kind::Le: return "(" + expr_string(f.expr) + " <= 0)";
        case LiaFormula::Kind::Eq: return "(" + expr_string(f.expr) + " = 0)";
        case LiaFormula::Kind::Not: return "!" + to_string(f.args[0]);
        case LiaFormula::Kind::And:
        case LiaFormula::Kind::Or: {
            std::string out = "(";
            for (std::size_t i = 0; i < f.args.size(); ++i) {
                if (i) out += f.kind == LiaFormula::Kind::And ? " & " : " | ";
                out += to_string(f.args[i]);
            }
            return out + ")";
        }
        case LiaFormula::Kind::Exists: {
            std::string out = "(exists";
            for (const auto& v : f.bound) out += " " + v;
            return out + ". " + to_string(f.args[0]) + ")";
        }
    }
    return "?";
}

std::vector<std::string> free_variables(const LiaFormula& f) {
    std::set<std::string> bound, out;
    free_vars(f, bound, out);
    return {out.begin(), out.end()};
}

}  // namespace lia

namespace {

// ---------------------------------------------------------------------------
// Bounded simplex over rationals.

class Simplex {
public:
    explicit Simplex(std::size_t num_vars) : lo_(num_vars), hi_(num_vars), val_(num_vars, 0), rows_(num_vars) {
        basic_.assign(num_vars, false);
    }

    std::size_t num_vars() const { return val_.size(); }

    // New basic variable equal to the given combination of original variables.
    std::size_t add_row(const std::map<std::size_t, mpz_class>& combo) {
        std::size_t s = val_.size();
        lo_.emplace_back();
        hi_.emplace_back();
        val_.emplace_back(0);
        basic_.push_back(true);
        rows_.emplace_back();
        std::map<std::size_t, mpq_class> row;
        for (const auto& [v, k] : combo) {
            mpq_class kq(k);
            if (basic_[v]) {
                for (const auto& [w, c] : rows_[v]) add_to(row, w, kq * c);
            } else {
                add_to(row, v, kq);
            }
        }
        mpq_class value = 0;
        for (const auto& [w, c] : row) value += c * val_[w];
        val_[s] = value;
        rows_[s] = std::move(row);
        return s;
    }

    bool tighten_lower(std::size_t v, const mpq_class& b) {
        if (lo_[v] && *lo_[v] >= b) return true;
        lo_[v] = b;
        if (hi_[v] && *hi_[v] < b) return false;
        if (!basic_[v] && val_[v] < b) update(v, b);
        return true;
    }

    bool tighten_upper(std::size_t v, const mpq_class& b) {
        if (hi_[v] && *hi_[v] <= b) return true;
        hi_[v] = b;
        if (lo_[v] && *lo_[v] > b) return false;
        if (!basic_[v] && val_[v] > b) update(v, b);
        return true;
    }

    struct Saved {
        std::size_t var;
        std::optional<mpq_class> lo, hi;
    };
    Saved save(std::size_t v) const { return {v, lo_[v], hi_[v]}; }
    void restore(const Saved& s) {
        lo_[s.var] = s.lo;
        hi_[s.var] = s.hi;
    }

    const mpq_class& value(std::size_t v) const { return val_[v]; }

    bool check() {
        while (true) {
            std::size_t bad = num_vars();
            for (std::size_t v = 0; v < num_vars(); ++v) {
                if (!basic_[v]) continue;
                if ((lo_[v] && val_[v] < *lo_[v]) || (hi_[v] && val_[v] > *hi_[v])) {
                    bad = v;
                    break;
                }
            }
            if (bad == num_vars()) return true;
            bool raise = lo_[bad] && val_[bad] < *lo_[bad];
            std::size_t entering = num_vars();
            for (const auto& [n, c] : rows_[bad]) {
                bool can_up = !hi_[n] || val_[n] < *hi_[n];
                bool can_down = !lo_[n] || val_[n] > *lo_[n];
                bool ok = raise ? ((c > 0 && can_up) || (c < 0 && can_down)) : ((c < 0 && can_up) || (c > 0 && can_down));
                if (ok) {
                    entering = n;
                    break;
                }
            }
            if (entering == num_vars()) return false;
            pivot_and_update(bad, entering, raise ? *lo_[bad] : *hi_[bad]);
        }
    }

private:
    static void add_to(std::map<std::size_t, mpq_class>& row, std::size_t v, const mpq_class& c) {
        if (c == 0) return;
        auto it = row.find(v);
        if (it == row.end()) {
            row.emplace(v, c);
        } else {
            it->second += c;
            if (it->second == 0) row.erase(it);
        }
    }

    void update(std::size_t n, const mpq_class& v) {
        mpq_class delta = v - val_[n];
        for (std::size_t b = 0; b < num_vars(); ++b) {
            if (!basic_[b]) continue;
            auto it = rows_[b].find(n);
            if (it != rows_[b].end()) val_[b] += it->second * delta;
        }
        val_[n] = v;
    }

    void pivot_and_update(std::size_t b, std::size_t n, const mpq_class& v) {
        mpq_class a = rows_[b].at(n);
        mpq_class theta = (v - val_[b]) / a;
        val_[b] = v;
        val_[n] += theta;
        for (std::size_t r = 0; r < num_vars(); ++r) {
            if (!basic_[r] || r == b) continue;
            auto it = rows_[r].find(n);
            if (it != rows_[r].end()) val_[r] += it->second * theta;
        }
        // Row of n: n = (b - sum_{j != n} a_j x_j) / a.
        std::map<std::size_t, mpq_class> nrow;
        for (const auto& [j, c] : rows_[b])
            if (j != n) nrow.emplace(j, -c / a);
        nrow.emplace(b, mpq_class(1) / a);
        rows_[b].clear();
        basic_[b] = false;
        basic_[n] = true;
        for (std::size_t r = 0; r < num_vars(); ++r) {
            if (!basic_[r] || r == n) continue;
            auto it = rows_[r].find(n);
            if (it == rows_[r].end()) continue;
            mpq_class c = it->second;
            rows_[r].erase(it);
            for (const auto& [j, d] : nrow) add_to(rows_[r], j, c * d);
        }
        rows_[n] = std::move(nrow);
    }

    std::vector<std::optional<mpq_class>> lo_, hi_;
    std::vector<mpq_class> val_;
    std::vector<bool> basic_;
    std::vector<std::map<std::size_t, mpq_class>> rows_;
};

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

struct Constraint {
    std::map<std::size_t, mpz_class> combo;
    enum class Rel { Le, Ge, Eq } rel;
    mpz_class bound;
};

class CubeSolver {
public:
    CubeSolver(std::vector<std::string> names, const LiaOptions& opts) : names_(std::move(names)), opts_(opts) {}

    LiaResult run(std::vector<Constraint> cs) {
        LiaResult res;
        // Normalize by the gcd of coefficients.
        std::size_t n = names_.size();
        Simplex sx(n);
        std::map<std::map<std::size_t, mpz_class>, std::size_t> slack_of;
        mpz_class amax = 1;
        for (auto& c : cs) {
            mpz_class g = 0;
            for (const auto& [v, k] : c.combo) g = gcd(g, k);
            if (g == 0) {
                bool ok = c.rel == Constraint::Rel::Le   ? 0 <= c.bound
                          : c.rel == Constraint::Rel::Ge ? 0 >= c.bound
                                                         : c.bound == 0;
                if (!ok) return res;
                continue;
            }
            if (g < 0) g = -g;
            // Make the leading coefficient positive so equal forms share a row.
            if (c.combo.begin()->second < 0) {
                for (auto& [v, k] : c.combo) k = -k;
                c.bound = -c.bound;
                if (c.rel == Constraint::Rel::Le)
                    c.rel = Constraint::Rel::Ge;
                else if (c.rel == Constraint::Rel::Ge)
                    c.rel = Constraint::Rel::Le;
            }
            for (auto& [v, k] : c.combo) {
                k /= g;
                mpz_class ak = abs(k);
                if (ak > amax) amax = ak;
            }
            mpz_class b;
            if (c.rel == Constraint::Rel::Eq) {
                if (c.bound % g != 0) return res;
                b = c.bound / g;
            } else if (c.rel == Constraint::Rel::Le) {
                mpz_fdiv_q(b.get_mpz_t(), c.bound.get_mpz_t(), g.get_mpz_t());
            } else {
                mpz_cdiv_q(b.get_mpz_t(), c.bound.get_mpz_t(), g.get_mpz_t());
            }
            if (abs(b) > amax) amax = abs(b);
            std::size_t v;
            if (c.combo.size() == 1 && c.combo.begin()->second == 1) {
                v = c.combo.begin()->first;
            } else {
                auto it = slack_of.find(c.combo);
                if (it == slack_of.end()) it = slack_of.emplace(c.combo, sx.add_row(c.combo)).first;
                v = it->second;
            }
            bool ok = true;
            if (c.rel != Constraint::Rel::Ge) ok = sx.tighten_upper(v, mpq_class(b)) && ok;
            if (c.rel != Constraint::Rel::Le) ok = sx.tighten_lower(v, mpq_class(b)) && ok;
            if (!ok) return res;
        }
        // Small-model box: n * (m * a)^(2m + 1).
        std::size_t m = std::max<std::size_t>(cs.size(), 1);
        mpz_class base = mpz_class(static_cast<unsigned long>(m)) * amax;
        mpz_class box;
        mpz_pow_ui(box.get_mpz_t(), base.get_mpz_t(), 2 * m + 1);
        box *= static_cast<unsigned long>(std::max<std::size_t>(n, 1));
        if (mpz_sizeinbase(box.get_mpz_t(), 2) > opts_.bound_bits_cap) {
            res.status = LiaResult::Status::ResourceExceeded;
            return res;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (!sx.tighten_lower(v, mpq_class(-box)) || !sx.tighten_upper(v, mpq_class(box))) return res;
        }
        nodes_ = 0;
        auto st = branch(sx);
        if (st == Outcome::Limit) {
            res.status = LiaResult::Status::ResourceExceeded;
            return res;
        }
        if (st == Outcome::Unsat) return res;
        res.status = LiaResult::Status::Sat;
        for (std::size_t v = 0; v < n; ++v) res.model[names_[v]] = model_[v];
        return res;
    }

private:
    enum class Outcome { Sat, Unsat, Limit };

    Outcome branch(Simplex& sx) {
        if (++nodes_ > opts_.node_limit) return Outcome::Limit;
        if (!sx.check()) return Outcome::Unsat;
        std::size_t pick = names_.size();
        mpq_class best = -1;
        for (std::size_t v = 0; v < names_.size(); ++v) {
            const mpq_class& x = sx.value(v);
            if (x.get_den() == 1) continue;
            mpq_class f = x - mpq_class(floor_q(x));
            mpq_class dist = f < mpq_class(1, 2) ? f : mpq_class(1) - f;
            if (dist > best) {
                best = dist;
                pick = v;
            }
        }
        if (pick == names_.size()) {
            model_.assign(names_.size(), 0);
            for (std::size_t v = 0; v < names_.size(); ++v) model_[v] = sx.value(v).get_num();
            return Outcome::Sat;
        }
        mpq_class x = sx.value(pick);
        auto saved = sx.save(pick);
        bool limit = false;
        if (sx.tighten_upper(pick, mpq_class(floor_q(x)))) {
            auto r = branch(sx);
            if (r == Outcome::Sat) return r;
            limit = limit || r == Outcome::Limit;
        }
        sx.restore(saved);
        if (sx.tighten_lower(pick, mpq_class(ceil_q(x)))) {
            auto r = branch(sx);
            if (r == Outcome::Sat) return r;
            limit = limit || r == Outcome::Limit;
        }
        sx.restore(saved);
        return limit ? Outcome::Limit : Outcome::Unsat;
    }

    std::vector<std::string> names_;
    LiaOptions opts_;
    std::uint64_t nodes_ = 0;
    std::vector<mpz_class> model_;
};

bool is_atom(const LiaFormula& f) { return f.kind == LiaFormula::Kind::Le || f.kind == LiaFormula::Kind::Eq; }

// Renames binders apart and drops them.
LiaFormula hoist(const LiaFormula& f, std::map<std::string, std::string>& rename, int& counter) {
    LiaFormula out = f;
    if (!f.expr.coef.empty()) {
        out.expr.coef.clear();
        for (const auto& [v, k] : f.expr.coef) {
            auto it = rename.find(v);
            out.expr.coef[it == rename.end() ? v : it->second] += k;
        }
    }
    if (f.kind == LiaFormula::Kind::Exists) {
        auto saved = rename;
        for (const auto& v : f.bound) rename[v] = v + "#" + std::to_string(counter++);
        LiaFormula body = hoist(f.args[0], rename, counter);
        rename = saved;
        return body;
    }
    out.args.clear();
    for (const auto& g : f.args) out.args.push_back(hoist(g, rename, counter));
    return out;
}

struct AtomTable {
    std::vector<LiaFormula> atoms;  // Le or Eq, positive
    std::map<std::string, int> index;

    int id(const LiaFormula& a) {
        std::string key = lia::to_string(a);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int v = static_cast<int>(atoms.size());
        atoms.push_back(a);
        index.emplace(key, v);
        return v;
    }
};

LiaFormula le_atom(LinExpr e) {
    LiaFormula f;
    f.kind = LiaFormula::Kind::Le;
    f.expr = std::move(e);
    return f;
}

// Negation-normal form with only positive Le/Eq atoms.
Prop to_prop(const LiaFormula& f, bool positive, AtomTable& table) {
    using K = LiaFormula::Kind;
    switch (f.kind) {
        case K::True: return positive ? Prop::top() : Prop::bottom();
        case K::False: return positive ? Prop::bottom() : Prop::top();
        case K::Le:
            if (positive) return Prop::variable(table.id(f));
            return Prop::variable(table.id(le_atom(f.expr.scaled(-1) + LinExpr::of(1))));
        case K::Eq:
            if (positive) return Prop::variable(table.id(f));
            return Prop::any({Prop::variable(table.id(le_atom(f.expr + LinExpr::of(1)))),
                              Prop::variable(table.id(le_atom(f.expr.scaled(-1) + LinExpr::of(1))))});
        case K::Not: return to_prop(f.args[0], !positive, table);
        case K::And:
        case K::Or: {
            std::vector<Prop> kids;
            for (const auto& g : f.args) kids.push_back(to_prop(g, positive, table));
            bool conj = (f.kind == K::And) == positive;
            return conj ? Prop::all(std::move(kids)) : Prop::any(std::move(kids));
        }
        case K::Exists: return to_prop(f.args[0], positive, table);
    }
    return Prop::top();
}

LiaResult solve_atoms(const std::vector<LiaFormula>& atoms, const std::vector<std::string>& all_vars,
                      const LiaOptions& opts) {
    std::map<std::string, std::size_t> idx;
    std::vector<std::string> names = all_vars;
    for (const auto& a : atoms)
        for (const auto& [v, k] : a.expr.coef)
            if (!std::binary_search(all_vars.begin(), all_vars.end(), v)) names.push_back(v);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = i;
    std::vector<Constraint> cs;
    for (const auto& a : atoms) {
        Constraint c;
        for (const auto& [v, k] : a.expr.coef) c.combo[idx.at(v)] = k;
        c.bound = -a.expr.constant;
        c.rel = a.kind == LiaFormula::Kind::Eq ? Constraint::Rel::Eq : Constraint::Rel::Le;
        cs.push_back(std::move(c));
    }
    return CubeSolver(names, opts).run(std::move(cs));
}

}  // namespace

LiaResult solve_cube(const std::vector<LiaFormula>& atoms, const LiaOptions& options) {
    std::vector<LiaFormula> pos_atoms;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const auto& a = atoms[i];
        if (a.kind == LiaFormula::Kind::Not && a.args[0].kind == LiaFormula::Kind::Eq) {
            // Split the disequation and recurse on both sides.
            std::vector<LiaFormula> rest(atoms.begin(), atoms.end());
            rest[i] = le_atom(a.args[0].expr + LinExpr::of(1));
            auto r = solve_cube(rest, options);
            if (r.status != LiaResult::Status::Unsat) return r;
            rest[i] = le_atom(a.args[0].expr.scaled(-1) + LinExpr::of(1));
            return solve_cube(rest, options);
        }
        if (a.kind == LiaFormula::Kind::Not && a.args[0].kind == LiaFormula::Kind::Le) {
            pos_atoms.push_back(le_atom(a.args[0].expr.scaled(-1) + LinExpr::of(1)));
        } else if (is_atom(a)) {
            pos_atoms.push_back(a);
        } else if (a.kind == LiaFormula::Kind::False) {
            return {};
        } else if (a.kind != LiaFormula::Kind::True) {
            throw std::invalid_argument("solve_cube expects atoms");
        }
    }
    return solve_atoms(pos_atoms, {}, options);
}

LiaResult lia_check(const LiaFormula& f, const std::vector<LiaFormula>& assumptions, const LiaOptions& options) {
    std::vector<LiaFormula> parts{f};
    parts.insert(parts.end(), assumptions.begin(), assumptions.end());
    LiaFormula whole = lia::conj(std::move(parts));
    std::vector<std::string> free = lia::free_variables(whole);
    std::map<std::string, std::string> rename;
    int counter = 0;
    LiaFormula flat = hoist(whole, rename, counter);

    AtomTable table;
    Prop p = to_prop(flat, true, table);
    auto finish = [&](LiaResult r) {
        if (r.status == LiaResult::Status::Sat)
            for (const auto& v : free) r.model.emplace(v, 0);
        return r;
    };
    if (p.kind == Prop::Kind::False) return {};
    if (p.kind == Prop::Kind::True) {
        LiaResult r;
        r.status = LiaResult::Status::Sat;
        return finish(r);
    }
    bool cube = p.kind == Prop::Kind::Var;
    if (p.kind == Prop::Kind::And) {
        cube = std::all_of(p.args.begin(), p.args.end(), [](const Prop& q) { return q.kind == Prop::Kind::Var; });
    }
    if (cube) return finish(solve_atoms(table.atoms, free, options));

    int num_atoms = static_cast<int>(table.atoms.size());
    Cnf cnf = tseitin_encode(p, num_atoms);
    Dpll sat(cnf.num_vars);
    sat.add_cnf(cnf);
    bool limited = false;
    for (std::uint64_t round = 0; round < options.cube_limit; ++round) {
        auto model = sat.solve();
        if (!model) {
            LiaResult r;
            r.status = limited ? LiaResult::Status::ResourceExceeded : LiaResult::Status::Unsat;
            return r;
        }
        std::vector<Lit> rel = relevant_literals(p, *model);
        std::vector<int> chosen;
        for (Lit l : rel)
            if (lit_sign(l)) chosen.push_back(lit_var(l));
        auto atoms_of = [&](const std::vector<int>& ids) {
            std::vector<LiaFormula> out;
            for (int v : ids) out.push_back(table.atoms[v]);
            return out;
        };
        auto r = solve_atoms(atoms_of(chosen), free, options);
        if (r.status == LiaResult::Status::Sat) return finish(r);
        if (r.status == LiaResult::Status::ResourceExceeded) limited = true;
        std::vector<int> core = chosen;
        if (r.status == LiaResult::Status::Unsat && core.size() <= 64) {
            LiaOptions cheap = options;
            cheap.node_limit = std::min<std::uint64_t>(options.node_limit, 500);
            for (std::size_t i = 0; i < core.size();) {
                std::vector<int> without = core;
                without.erase(without.begin() + static_cast<long>(i));
                if (solve_atoms(atoms_of(without), {}, cheap).status == LiaResult::Status::Unsat)
                    core = std::move(without);
                else
                    ++i;
            }
        }
        std::vector<Lit> clause;
        for (int v : core) clause.push_back(negl(v));
        sat.add_clause(clause);
    }
    LiaResult r;
    r.status = LiaResult::Status::ResourceExceeded;
    return r;
}

bool lia_equiv_on_box(const LiaFormula& f, const LiaFormula& g, const std::map<std::string, LiaBoxRange>& box) {
    std::vector<std::string> vars;
    for (const auto& [v, r] : box) vars.push_back(v);
    auto holds = [&](const LiaFormula& h, const LiaModel& point) {
        std::vector<LiaFormula> fix;
        for (const auto& [v, x] : point) fix.push_back(lia::eq(LinExpr::var(v), LinExpr::of(x)));
        return lia_check(h, fix).status == LiaResult::Status::Sat;
    };
    LiaModel point;
    std::vector<long> cur;
    for (const auto& v : vars) cur.push_back(box.at(v).lo);
    while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i) point[vars[i]] = cur[i];
        if (holds(f, point) != holds(g, point)) return false;
        std::size_t i = 0;
        for (; i < vars.size(); ++i) {
            if (cur[i] < box.at(vars[i]).hi) {
                ++cur[i];
                break;
            }
            cur[i] = box.at(vars[i]).lo;
        }
        if (i == vars.size()) return true;
    }
}

}  // namespace strsat
