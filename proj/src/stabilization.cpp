#include "strsat/stabilization.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "alignment.hpp"
#include "strsat/preprocess.hpp"

namespace strsat {

namespace {

Nfa item_nfa(const ConjunctiveSystem& sys, const Item& it) {
    if (it.is_var) return sys.language(it.var);
    return nfa::word(sys.alphabet_size(), sys.symbols->encode(it.lit));
}

Nfa side_nfa(const ConjunctiveSystem& sys, const Side& s) {
    std::vector<Nfa> parts;
    for (const auto& it : s) parts.push_back(item_nfa(sys, it));
    if (parts.empty()) return nfa::epsilon(sys.alphabet_size());
    return nfa::reduce(nfa::concat(parts));
}

LiaFormula progression_formula(const std::string& var, const SemilinearLengthSet& ls) {
    std::vector<LiaFormula> alts;
    LinExpr len = LinExpr::var(length_var(var));
    for (const auto& p : ls.progressions) {
        LinExpr off = LinExpr::of(static_cast<unsigned long>(p.offset));
        if (p.period == 0) {
            alts.push_back(lia::eq(len, off));
            continue;
        }
        std::string k = "k" + length_var(var);
        LinExpr rhs = off + LinExpr::var(k, static_cast<unsigned long>(p.period));
        alts.push_back(lia::exists({k}, lia::conj({lia::ge(LinExpr::var(k), LinExpr{}), lia::eq(len, rhs)})));
    }
    return lia::disj(std::move(alts));
}

}  // namespace

LiaFormula length_constraint(const std::string& var, const Nfa& lang) {
    return progression_formula(var, nfa::length_set(lang));
}

// ---------------------------------------------------------------------------
// Inclusion systems.

InclusionSystem build_system(const ConjunctiveSystem& sys) {
    InclusionSystem out;
    out.symbols = sys.symbols;
    out.length_sensitive = sys.len_vars;
    auto occ = sys.occurrences();
    int fresh = 0;
    std::set<std::string> taken = sys.variables();
    auto names = [&](const Side& s) {
        std::vector<std::string> v;
        for (const auto& it : s) {
            if (it.is_var) {
                v.push_back(it.var);
                continue;
            }
            std::string n;
            do n = "!l" + std::to_string(fresh++);
            while (taken.count(n));
            taken.insert(n);
            out.assignment[n] = nfa::word(sys.alphabet_size(), sys.symbols->encode(it.lit));
            v.push_back(n);
        }
        return v;
    };
    // A side can be dropped as an inclusion target check when its variables
    // are free and private to it.
    auto free_side = [&](const Side& f, const Side& other) {
        std::set<std::string> seen, other_vars;
        collect_vars(other, other_vars);
        for (const auto& it : f) {
            if (!it.is_var) return false;
            if (!seen.insert(it.var).second) return false;
            if (occ[it.var] != 1 || sys.has_constraint(it.var) || sys.len_vars.count(it.var)) return false;
            if (other_vars.count(it.var)) return false;
        }
        std::set<std::string> rep;
        for (const auto& it : other)
            if (it.is_var && !rep.insert(it.var).second) return false;
        return true;
    };
    for (const auto& e : sys.equations) {
        auto l = names(e.lhs), r = names(e.rhs);
        if (free_side(e.rhs, e.lhs)) {
            out.inclusions.push_back({l, r});
        } else if (free_side(e.lhs, e.rhs)) {
            out.inclusions.push_back({r, l});
        } else {
            out.inclusions.push_back({l, r});
            out.inclusions.push_back({r, l});
        }
    }
    for (const auto& v : sys.variables()) out.assignment[v] = nfa::trim(sys.language(v));
    for (const auto& [v, lang] : sys.regular) out.assignment[v] = nfa::trim(lang);
    return out;
}

namespace {

Nfa concat_names(const InclusionSystem& s, const std::vector<std::string>& names) {
    std::size_t alpha = s.symbols->size();
    if (names.empty()) return nfa::epsilon(alpha);
    std::vector<Nfa> parts;
    for (const auto& n : names) {
        auto it = s.assignment.find(n);
        parts.push_back(it == s.assignment.end() ? nfa::universal(alpha) : it->second);
    }
    return nfa::concat(parts);
}

}  // namespace

bool is_stable(const InclusionSystem& s) {
    for (const auto& inc : s.inclusions)
        if (!nfa::is_included(concat_names(s, inc.lhs), concat_names(s, inc.rhs))) return false;
    return true;
}

std::vector<Noodle> noodlify(const std::vector<std::string>& lhs, const std::vector<Nfa>& lhs_nfas, const Nfa& rhs) {
    bool truncated = false;
    auto aligned = detail::align(lhs_nfas, {rhs}, static_cast<std::size_t>(-1), truncated);
    std::vector<Noodle> out;
    for (const auto& al : aligned) {
        Noodle n;
        bool dead = false;
        for (const auto& seg : al.segments) {
            const std::string& v = lhs[seg.i];
            auto it = n.refined.find(v);
            if (it == n.refined.end()) {
                n.refined.emplace(v, seg.nfa);
                continue;
            }
            it->second = nfa::reduce(nfa::intersect(it->second, seg.nfa));
            if (nfa::is_empty(it->second)) dead = true;
        }
        if (!dead) out.push_back(std::move(n));
    }
    return out;
}

LiaFormula generate_lengths(const InclusionSystem& s) {
    std::vector<LiaFormula> fs;
    std::set<std::string> measured = s.length_sensitive;
    for (const auto& inc : s.inclusions) {
        measured.insert(inc.lhs.begin(), inc.lhs.end());
        measured.insert(inc.rhs.begin(), inc.rhs.end());
    }
    for (const auto& v : measured) {
        auto it = s.assignment.find(v);
        if (it != s.assignment.end()) fs.push_back(length_constraint(v, it->second));
    }
    auto sum = [](const std::vector<std::string>& side) {
        LinExpr e;
        for (const auto& v : side) e = e + LinExpr::var(length_var(v));
        return e;
    };
    for (const auto& inc : s.inclusions) fs.push_back(lia::eq(sum(inc.lhs), sum(inc.rhs)));
    for (const auto& [v, _] : s.assignment) fs.push_back(lia::ge(LinExpr::var(length_var(v)), LinExpr{}));
    return lia::conj(std::move(fs));
}

std::map<std::string, Word> extract_model(const InclusionSystem& s, const LiaModel& lengths) {
    std::map<std::string, Word> out;
    for (const auto& [v, lang] : s.assignment) {
        auto len = lengths.find(length_var(v));
        std::optional<std::vector<Symbol>> w;
        if (len != lengths.end()) {
            if (len->second < 0) throw std::logic_error("negative length for " + v);
            w = nfa::extract_word(lang, len->second.get_ui());
        } else {
            w = nfa::shortest_word(lang);
        }
        if (!w) throw std::logic_error("no word of the chosen length for " + v);
        out[v] = s.symbols->decode(*w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Disequations.

std::vector<DisequationBranch> encode_disequation(const Side& lhs, const Side& rhs, const SymbolTable& symbols,
                                                  const std::string& prefix) {
    std::vector<DisequationBranch> out;
    std::size_t alpha = symbols.size();
    LinExpr d = side_length(lhs) - side_length(rhs);
    if (!d.coef.empty() || d.constant != 0) {
        DisequationBranch b;
        b.lia.push_back(lia::ne(side_length(lhs), side_length(rhs)));
        collect_vars(lhs, b.len_vars);
        collect_vars(rhs, b.len_vars);
        out.push_back(std::move(b));
    }
    auto name = [&](const char* part) { return prefix + part; };
    auto split = [&](DisequationBranch& b, const Nfa& c1, const Nfa& c2) {
        Side l1{Item::variable(name("p1")), Item::variable(name("c1")), Item::variable(name("s1"))};
        Side l2{Item::variable(name("p2")), Item::variable(name("c2")), Item::variable(name("s2"))};
        b.equations.push_back({lhs, l1});
        b.equations.push_back({rhs, l2});
        b.regular[name("c1")] = c1;
        b.regular[name("c2")] = c2;
        b.lia.push_back(lia::eq(LinExpr::var(length_var(name("p1"))), LinExpr::var(length_var(name("p2")))));
        b.len_vars.insert(name("p1"));
        b.len_vars.insert(name("p2"));
    };
    for (Symbol a = 0; a < alpha; ++a) {
        std::vector<Symbol> one{a}, rest;
        for (Symbol b = 0; b < alpha; ++b)
            if (b != a) rest.push_back(b);
        if (rest.empty()) continue;
        DisequationBranch b;
        split(b, nfa::symbols(alpha, one), nfa::symbols(alpha, rest));
        out.push_back(std::move(b));
    }
    for (Symbol a = 0; a < alpha && !symbols.separable(); ++a) {
        if (symbols.is_explicit(a) || symbols.class_size(a) < 2) continue;
        std::vector<Symbol> one{a};
        DisequationBranch b;
        split(b, nfa::symbols(alpha, one), nfa::symbols(alpha, one));
        b.same_class = true;
        out.push_back(std::move(b));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Search.

namespace {

struct Node {
    ConjunctiveSystem sys;
    bool same_class = false;
    std::size_t depth = 0;
    // How the step into this node changes the total length of a solution.
    bool monotone = true, strict = false;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Outcome {
    enum class Kind { Sat, Unsat, Open };
    Kind kind = Kind::Unsat;
    // Lowest search-path position that a pruned loop in this subtree returned
    // to; an Unsat answer is only final for nodes at or above it.
    std::size_t low = kNone;

    static Outcome open() { return {Kind::Open, kNone}; }
    static Outcome sat() { return {Kind::Sat, kNone}; }

    void add(const Outcome& o) {
        if (o.kind == Kind::Open) kind = Kind::Open;
        low = std::min(low, o.low);
    }
};

class Search {
public:
    Search(const ConjunctiveSystem& original, const StabilizationOptions& options)
        : original_(original), options_(options), taken_(original.variables()) {
        for (const auto& [v, _] : original.regular) taken_.insert(v);
        for (const auto& v : original.len_vars) taken_.insert(v);
    }

    StabilizationResult run() {
        Node root{original_, false, 0, true, false};
        Outcome r = visit(std::move(root));
        switch (r.kind) {
            case Outcome::Kind::Sat:
                result_.status = StabilizationResult::Status::Sat;
                result_.reason.clear();
                break;
            case Outcome::Kind::Unsat: result_.status = StabilizationResult::Status::Unsat; break;
            case Outcome::Kind::Open:
                result_.status = StabilizationResult::Status::Unknown;
                if (result_.reason.empty()) result_.reason = "incomplete exploration";
                break;
        }
        return std::move(result_);
    }

private:
    struct PathEntry {
        bool monotone, strict;
        bool stuck = false;  // a loop without progress returned here
    };

    std::string fresh(const std::string& hint) {
        std::string n;
        do n = "!" + hint + std::to_string(counter_++);
        while (taken_.count(n));
        taken_.insert(n);
        return n;
    }

    bool out_of_budget() {
        if (stopped_) return true;
        if (result_.steps >= options_.step_budget) {
            stopped_ = true;
            result_.reason = "step budget exhausted";
            return true;
        }
        if (options_.deadline && std::chrono::steady_clock::now() >= *options_.deadline) {
            stopped_ = true;
            result_.reason = "timeout";
            return true;
        }
        return false;
    }

    Outcome open(const std::string& reason) {
        result_.reason = reason;
        return Outcome::open();
    }

    // Printed system with variables renamed by first occurrence.
    std::string canonical(const Node& n) {
        const ConjunctiveSystem& s = n.sys;
        std::map<std::string, std::string> rename;
        std::ostringstream os;
        auto side = [&](const Side& sd) {
            for (const auto& it : sd) {
                if (it.is_var) {
                    auto [r, ins] = rename.try_emplace(it.var, "v" + std::to_string(rename.size()));
                    os << r->second << ' ';
                } else {
                    os << '"' << quote_string(it.lit) << "\" ";
                }
            }
        };
        for (const auto& e : s.equations) {
            side(e.lhs);
            os << "= ";
            side(e.rhs);
            os << ";";
        }
        for (const auto& e : s.disequations) {
            side(e.lhs);
            os << "!= ";
            side(e.rhs);
            os << ";";
        }
        std::vector<std::string> rest;
        for (const auto& [v, _] : s.regular)
            if (!rename.count(v)) rest.push_back(v);
        for (const auto& v : s.len_vars)
            if (!rename.count(v) && !s.regular.count(v)) rest.push_back(v);
        for (const auto& v : rest) rename.emplace(v, "v" + std::to_string(rename.size()));
        std::map<std::string, std::string> lengths;
        for (const auto& [v, r] : rename) {
            lengths[length_var(v)] = "\x01" + r;
            if (s.len_vars.count(v)) os << '|' << r << '|';
            if (!s.has_constraint(v)) continue;
            os << r << ':';
            s.language(v).print(os);
        }
        for (const auto& f : s.lia) os << lia::to_string(lia::rename(f, lengths)) << ';';
        os << (n.same_class ? "S" : "");
        return os.str();
    }

    // Lengths alone already rule the node out.
    bool prune_by_lengths(const ConjunctiveSystem& s) {
        if (s.lia.empty() && s.equations.empty()) return false;
        std::vector<LiaFormula> fs = s.lia;
        fs.insert(fs.end(), s.lia_axioms.begin(), s.lia_axioms.end());
        std::set<std::string> measured = s.len_vars;
        for (const auto& e : s.equations) {
            fs.push_back(lia::eq(side_length(e.lhs), side_length(e.rhs)));
            collect_vars(e.lhs, measured);
            collect_vars(e.rhs, measured);
        }
        for (const auto& v : measured)
            if (s.has_constraint(v)) fs.push_back(length_constraint(v, s.language(v)));
        LiaOptions o;
        o.node_limit = 2000;
        return lia_check(lia::conj(fs), {}, o).status == LiaResult::Status::Unsat;
    }

    Outcome visit(Node node) {
        if (out_of_budget()) return Outcome::open();
        if (node.depth >= options_.max_depth) return open("search depth limit");
        ++node.depth;
        ++result_.steps;
        PreprocessOptions po;
        po.lia_entailment_checks = 2;
        auto pre = preprocess(std::move(node.sys), ProcedureKind::Stabilization, po);
        if (pre.status == PreprocessResult::Status::Unsat) return {};
        node.sys = std::move(pre.system);
        if (node.sys.conflict || prune_by_lengths(node.sys)) return {};
        std::string key = canonical(node);
        if (finished_.count(key)) return {};
        auto on = on_stack_.find(key);
        if (on != on_stack_.end()) {
            if (loop_shrinks(on->second, node)) return {Outcome::Kind::Unsat, on->second};
            path_[on->second].stuck = true;
            Outcome o = open("refinement loop without progress");
            o.low = on->second;
            return o;
        }
        std::size_t here = path_.size();
        path_.push_back({node.monotone, node.strict});
        on_stack_[key] = here;
        Outcome r = expand(node);
        if (r.kind == Outcome::Kind::Open && path_[here].stuck && !stopped_) r = split_empty(std::move(node));
        path_.pop_back();
        on_stack_.erase(key);
        if (r.low >= here) {
            if (r.kind == Outcome::Kind::Unsat) finished_.insert(key);
            r.low = kNone;
        }
        return r;
    }

    // Every step since the repeated state kept the total length of a
    // solution from growing and one step removed at least a letter, so a
    // shortest solution never runs through the loop.
    bool loop_shrinks(std::size_t from, const Node& repeat) const {
        bool strict = repeat.strict;
        if (!repeat.monotone) return false;
        for (std::size_t k = from + 1; k < path_.size(); ++k) {
            if (!path_[k].monotone) return false;
            strict = strict || path_[k].strict;
        }
        return strict;
    }

    // A loop that makes no progress often hides an empty variable: decide
    // x = ε against x nonempty for one variable of the first equation.
    Outcome split_empty(Node node) {
        const ConjunctiveSystem& s = node.sys;
        std::optional<std::string> pick;
        for (const auto& e : s.equations) {
            for (const Side* side : {&e.lhs, &e.rhs})
                for (const auto& it : *side) {
                    if (pick || !it.is_var) continue;
                    const Nfa& lang = s.language(it.var);
                    if (nfa::accepts_epsilon(lang) && !single_word_is_empty(lang)) pick = it.var;
                }
            if (pick) break;
        }
        if (!pick) return open("refinement loop without progress");
        const std::string x = *pick;
        Outcome acc;
        Node empty = node;
        substitute(empty.sys, x, {});
        empty.sys.trail.push_back({ModelStep::Kind::Define, x, {}, {}, {}});
        define_length(empty.sys, x, {});
        empty.sys.regular.erase(x);
        empty.monotone = true;
        empty.strict = false;
        Outcome a = visit(std::move(empty));
        if (a.kind == Outcome::Kind::Sat) return a;
        acc.add(a);
        if (stopped_) return Outcome::open();
        Node full = std::move(node);
        full.sys.restrict(x, nfa::plus(nfa::any_symbol(full.sys.alphabet_size())));
        full.monotone = true;
        full.strict = false;
        Outcome b = visit(std::move(full));
        if (b.kind == Outcome::Kind::Sat) return b;
        acc.add(b);
        return acc;
    }

    static bool single_word_is_empty(const Nfa& lang) {
        auto w = nfa::single_word(lang);
        return w && w->empty();
    }

    Outcome expand(const Node& node) {
        const ConjunctiveSystem& s = node.sys;
        if (!s.disequations.empty()) return expand_disequation(node);
        if (s.equations.empty()) return leaf(node);
        for (std::size_t k = 0; k < s.equations.size(); ++k) {
            for (int side = 1; side >= 0; --side) {
                const Equation& e = s.equations[k];
                const Side& f = side ? e.rhs : e.lhs;
                const Side& o = side ? e.lhs : e.rhs;
                if (orientable(s, f, o)) return discharge(node, k, f, o);
            }
        }
        return align_first(node);
    }

    Outcome expand_disequation(Node node) {
        Equation d = node.sys.disequations.front();
        node.sys.disequations.erase(node.sys.disequations.begin());
        std::string prefix = fresh("d") + "_";
        Outcome acc;
        for (auto& b : encode_disequation(d.lhs, d.rhs, *node.sys.symbols, prefix)) {
            Node child = node;
            for (auto& e : b.equations) child.sys.equations.push_back(std::move(e));
            for (auto& [v, lang] : b.regular) child.sys.restrict(v, lang);
            for (auto& f : b.lia) child.sys.lia.push_back(std::move(f));
            child.sys.len_vars.insert(b.len_vars.begin(), b.len_vars.end());
            child.same_class = child.same_class || b.same_class;
            child.monotone = false;
            Outcome r = visit(std::move(child));
            if (r.kind == Outcome::Kind::Sat) return r;
            acc.add(r);
            if (stopped_) return Outcome::open();
        }
        return acc;
    }

    // f consists of distinct variables private to this equation, without
    // length constraints: o = f only requires a factorization of o's value.
    static bool orientable(const ConjunctiveSystem& s, const Side& f, const Side& o) {
        auto occ = s.occurrences();
        std::set<std::string> seen, ov;
        collect_vars(o, ov);
        for (const auto& it : f) {
            if (!it.is_var) continue;
            if (!seen.insert(it.var).second) return false;
            if (occ[it.var] != 1 || s.len_vars.count(it.var) || ov.count(it.var)) return false;
        }
        return !seen.empty();
    }

    Outcome discharge(Node node, std::size_t k, Side f, Side o) {
        ConjunctiveSystem& s = node.sys;
        s.equations.erase(s.equations.begin() + static_cast<long>(k));
        node.monotone = true;
        node.strict = false;
        Nfa lf = side_nfa(s, f);
        if (nfa::is_included(side_nfa(s, o), lf)) {
            s.trail.push_back({ModelStep::Kind::Factor, "", {}, f, o});
            return visit(std::move(node));
        }
        std::vector<Nfa> parts;
        for (const auto& it : o) parts.push_back(item_nfa(s, it));
        bool truncated = false;
        auto aligned = detail::align(parts, {lf}, options_.noodle_cap, truncated);
        Outcome acc;
        if (truncated) acc.add(open("too many noodles"));
        for (const auto& al : aligned) {
            Node child = node;
            bool dead = false;
            std::map<std::string, Nfa> refined;
            for (const auto& seg : al.segments) {
                const Item& it = o[seg.i];
                if (!it.is_var) continue;
                auto r = refined.find(it.var);
                if (r == refined.end()) {
                    refined.emplace(it.var, seg.nfa);
                } else {
                    r->second = nfa::reduce(nfa::intersect(r->second, seg.nfa));
                    if (nfa::is_empty(r->second)) dead = true;
                }
            }
            if (dead) continue;
            for (auto& [v, lang] : refined) child.sys.regular[v] = lang;
            child.sys.trail.push_back({ModelStep::Kind::Factor, "", {}, f, o});
            Outcome r = visit(std::move(child));
            if (r.kind == Outcome::Kind::Sat) return r;
            acc.add(r);
            if (stopped_) return Outcome::open();
        }
        return acc;
    }

    static bool repeats(const Side& side) {
        std::set<std::string> seen;
        for (const auto& it : side)
            if (it.is_var && !seen.insert(it.var).second) return true;
        return false;
    }

    Side segment_side(ConjunctiveSystem& s, const Nfa& lang) {
        if (auto w = nfa::single_word(lang)) {
            if (w->empty()) return {};
            return {Item::literal(s.symbols->decode(*w))};
        }
        std::string z = fresh("z");
        if (!nfa::is_universal(lang)) s.regular[z] = lang;
        return {Item::variable(z)};
    }

    Outcome align_first(const Node& node) {
        const Equation e = node.sys.equations.front();
        std::vector<Nfa> left, right;
        for (const auto& it : e.lhs) left.push_back(item_nfa(node.sys, it));
        for (const auto& it : e.rhs) right.push_back(item_nfa(node.sys, it));
        bool truncated = false;
        auto aligned = detail::align(left, right, options_.noodle_cap, truncated);
        Outcome acc;
        if (truncated) acc.add(open("too many noodles"));
        bool left_once = !repeats(e.lhs), right_once = !repeats(e.rhs);
        for (const auto& al : aligned) {
            Node child = node;
            ConjunctiveSystem& s = child.sys;
            s.equations.erase(s.equations.begin());
            child.monotone = left_once || right_once;
            child.strict = false;
            for (const auto& seg : al.segments) {
                bool nonempty = !nfa::accepts_epsilon(seg.nfa);
                if (left_once && e.lhs[seg.i].is_var && !e.rhs[seg.j].is_var && nonempty) child.strict = true;
                if (right_once && e.rhs[seg.j].is_var && !e.lhs[seg.i].is_var && nonempty) child.strict = true;
            }
            std::vector<Side> lz(e.lhs.size()), rz(e.rhs.size());
            for (const auto& seg : al.segments) {
                Side piece = segment_side(s, seg.nfa);
                lz[seg.i].insert(lz[seg.i].end(), piece.begin(), piece.end());
                rz[seg.j].insert(rz[seg.j].end(), piece.begin(), piece.end());
            }
            std::vector<std::pair<std::string, Side>> occ;
            for (std::size_t i = 0; i < e.lhs.size(); ++i)
                if (e.lhs[i].is_var) occ.emplace_back(e.lhs[i].var, normalize_side(lz[i]));
            for (std::size_t j = 0; j < e.rhs.size(); ++j)
                if (e.rhs[j].is_var) occ.emplace_back(e.rhs[j].var, normalize_side(rz[j]));
            // Each variable becomes its shortest image; the other images
            // must agree with it.
            std::map<std::string, Side> image;
            for (const auto& [x, z] : occ) {
                auto [it, ins] = image.try_emplace(x, z);
                if (!ins && z.size() < it->second.size()) it->second = z;
            }
            std::map<std::string, bool> used;
            for (const auto& [x, z] : occ) {
                if (!used[x] && z == image[x]) {
                    used[x] = true;
                    continue;
                }
                s.equations.push_back({image[x], z});
            }
            for (const auto& [x, z] : image) {
                substitute(s, x, z);
                s.trail.push_back({ModelStep::Kind::Define, x, z, {}, {}});
                define_length(s, x, z);
                s.regular.erase(x);
            }
            Outcome r = visit(std::move(child));
            if (r.kind == Outcome::Kind::Sat) return r;
            acc.add(r);
            if (stopped_) return Outcome::open();
        }
        return acc;
    }

    Outcome leaf(const Node& node) {
        ++result_.leaves;
        const ConjunctiveSystem& s = node.sys;
        std::set<std::string> defined;
        for (const auto& st : s.trail)
            if (st.kind == ModelStep::Kind::Define) defined.insert(st.var);
        std::vector<std::string> free;
        for (const auto& [v, _] : s.regular)
            if (!defined.count(v)) free.push_back(v);
        for (const auto& v : s.len_vars)
            if (!defined.count(v) && !s.regular.count(v)) free.push_back(v);
        std::sort(free.begin(), free.end());
        std::vector<LiaFormula> fs = s.lia;
        for (const auto& v : free)
            if (s.len_vars.count(v)) fs.push_back(length_constraint(v, s.language(v)));
        LiaModel ints;
        if (!fs.empty()) {
            auto r = lia_check(lia::conj(fs));
            if (r.status == LiaResult::Status::Unsat) return {};
            if (r.status == LiaResult::Status::ResourceExceeded) return open("arithmetic resource limit");
            ints = std::move(r.model);
        }
        std::map<std::string, Word> values;
        for (std::size_t k = 0; k < free.size(); ++k) {
            const std::string& v = free[k];
            const Nfa& lang = s.language(v);
            std::optional<std::vector<Symbol>> w;
            auto len = ints.find(length_var(v));
            if (s.len_vars.count(v) && len != ints.end())
                w = nfa::extract_word(lang, len->second.get_ui());
            else
                w = nfa::shortest_word(lang);
            if (!w) throw std::logic_error("no word for " + v + " at a satisfiable leaf");
            values[v] = s.symbols->decode(*w, k);
        }
        values = replay_trail(s, std::move(values));
        if (!satisfies(original_, values, ints)) {
            if (node.same_class) return open("letters of one symbol class could not be separated");
            throw std::logic_error("stabilization produced a model violating the system");
        }
        std::set<std::string> keep = original_.variables();
        for (const auto& [v, _] : original_.regular) keep.insert(v);
        for (const auto& v : original_.len_vars) keep.insert(v);
        for (const auto& [v, w] : values)
            if (keep.count(v)) result_.model[v] = w;
        for (const auto& v : keep)
            if (!result_.model.count(v)) result_.model[v] = {};
        for (const auto& [v, val] : ints)
            if (!(v.size() > 1 && v.front() == '|') && v.rfind("k|", 0) != 0) result_.ints[v] = val;
        return Outcome::sat();
    }

    const ConjunctiveSystem& original_;
    const StabilizationOptions& options_;
    std::set<std::string> taken_;
    std::set<std::string> finished_;
    std::map<std::string, std::size_t> on_stack_;
    std::vector<PathEntry> path_;
    std::uint64_t counter_ = 0;
    bool stopped_ = false;
    StabilizationResult result_;
};

}  // namespace

StabilizationResult solve(const ConjunctiveSystem& sys, const StabilizationOptions& options) {
    StabilizationResult r;
    if (sys.conflict) {
        r.status = StabilizationResult::Status::Unsat;
        r.reason = "ground conflict";
        return r;
    }
    Search search(sys, options);
    return search.run();
}

}  // namespace strsat
