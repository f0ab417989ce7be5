#include "strsat/regex.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace strsat {

bool Regex::operator==(const Regex& o) const {
    if (kind != o.kind || word != o.word || lo != o.lo || hi != o.hi || loop_lo != o.loop_lo ||
        loop_hi != o.loop_hi || args.size() != o.args.size())
        return false;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!(*args[i] == *o.args[i])) return false;
    return true;
}

namespace re {

namespace {
RegexPtr make(Regex::Kind k, std::vector<RegexPtr> args = {}) {
    auto r = std::make_shared<Regex>();
    r->kind = k;
    r->args = std::move(args);
    return r;
}
}  // namespace

RegexPtr none() { return make(Regex::Kind::None); }
RegexPtr all() { return make(Regex::Kind::All); }
RegexPtr allchar() { return make(Regex::Kind::AllChar); }

RegexPtr str(Word w) {
    auto r = std::make_shared<Regex>();
    r->kind = Regex::Kind::Str;
    r->word = std::move(w);
    return r;
}

RegexPtr range(CodePoint lo, CodePoint hi) {
    auto r = std::make_shared<Regex>();
    r->kind = Regex::Kind::Range;
    r->lo = lo;
    r->hi = hi;
    return r;
}

RegexPtr concat(std::vector<RegexPtr> args) { return make(Regex::Kind::Concat, std::move(args)); }
RegexPtr unite(std::vector<RegexPtr> args) { return make(Regex::Kind::Union, std::move(args)); }
RegexPtr inter(std::vector<RegexPtr> args) { return make(Regex::Kind::Inter, std::move(args)); }
RegexPtr comp(RegexPtr r) { return make(Regex::Kind::Comp, {std::move(r)}); }
RegexPtr diff(RegexPtr a, RegexPtr b) { return make(Regex::Kind::Diff, {std::move(a), std::move(b)}); }
RegexPtr star(RegexPtr r) { return make(Regex::Kind::Star, {std::move(r)}); }
RegexPtr plus(RegexPtr r) { return make(Regex::Kind::Plus, {std::move(r)}); }
RegexPtr opt(RegexPtr r) { return make(Regex::Kind::Opt, {std::move(r)}); }

RegexPtr loop(RegexPtr r, unsigned lo, unsigned hi) {
    auto out = std::make_shared<Regex>();
    out->kind = Regex::Kind::Loop;
    out->loop_lo = lo;
    out->loop_hi = hi;
    out->args = {std::move(r)};
    return out;
}

}  // namespace re

namespace {

const char* op_name(Regex::Kind k) {
    switch (k) {
        case Regex::Kind::Concat: return "re.++";
        case Regex::Kind::Union: return "re.union";
        case Regex::Kind::Inter: return "re.inter";
        case Regex::Kind::Comp: return "re.comp";
        case Regex::Kind::Diff: return "re.diff";
        case Regex::Kind::Star: return "re.*";
        case Regex::Kind::Plus: return "re.+";
        case Regex::Kind::Opt: return "re.opt";
        default: return "?";
    }
}

}  // namespace

std::string to_smtlib(const Regex& r) {
    switch (r.kind) {
        case Regex::Kind::None: return "re.none";
        case Regex::Kind::All: return "re.all";
        case Regex::Kind::AllChar: return "re.allchar";
        case Regex::Kind::Str: return "(str.to_re " + quote_string(r.word) + ")";
        case Regex::Kind::Range:
            return "(re.range " + quote_string({r.lo}) + " " + quote_string({r.hi}) + ")";
        case Regex::Kind::Loop:
            return "((_ re.loop " + std::to_string(r.loop_lo) + " " + std::to_string(r.loop_hi) + ") " +
                   to_smtlib(*r.args[0]) + ")";
        default: {
            std::string out = std::string("(") + op_name(r.kind);
            for (const auto& a : r.args) out += " " + to_smtlib(*a);
            return out + ")";
        }
    }
}

void collect_alphabet(const Regex& r, std::vector<CodePoint>& points,
                      std::vector<std::pair<CodePoint, CodePoint>>& ranges) {
    if (r.kind == Regex::Kind::Str) points.insert(points.end(), r.word.begin(), r.word.end());
    if (r.kind == Regex::Kind::Range && r.lo <= r.hi) ranges.push_back({r.lo, r.hi});
    for (const auto& a : r.args) collect_alphabet(*a, points, ranges);
}

namespace {

// Memoized recognition of w[i, j) by a subexpression.
class Matcher {
public:
    explicit Matcher(const Word& w) : w_(w) {}

    bool match(const Regex& r, std::size_t i, std::size_t j) {
        auto key = std::make_tuple(&r, i, j);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool res = compute(r, i, j);
        memo_[key] = res;
        return res;
    }

private:
    bool compute(const Regex& r, std::size_t i, std::size_t j) {
        switch (r.kind) {
            case Regex::Kind::None: return false;
            case Regex::Kind::All: return true;
            case Regex::Kind::AllChar: return j == i + 1;
            case Regex::Kind::Str:
                return j - i == r.word.size() && std::equal(r.word.begin(), r.word.end(), w_.begin() + i);
            case Regex::Kind::Range: return j == i + 1 && r.lo <= w_[i] && w_[i] <= r.hi;
            case Regex::Kind::Concat: return match_seq(r.args, 0, i, j);
            case Regex::Kind::Union:
                for (const auto& a : r.args)
                    if (match(*a, i, j)) return true;
                return false;
            case Regex::Kind::Inter:
                for (const auto& a : r.args)
                    if (!match(*a, i, j)) return false;
                return true;
            case Regex::Kind::Comp: return !match(*r.args[0], i, j);
            case Regex::Kind::Diff: return match(*r.args[0], i, j) && !match(*r.args[1], i, j);
            case Regex::Kind::Star: return match_star(*r.args[0], i, j);
            case Regex::Kind::Plus:
                for (std::size_t k = i + 1; k <= j; ++k)
                    if (match(*r.args[0], i, k) && match_star(*r.args[0], k, j)) return true;
                return false;
            case Regex::Kind::Opt: return i == j || match(*r.args[0], i, j);
            case Regex::Kind::Loop: {
                if (r.loop_lo > r.loop_hi) return false;
                return match_count(*r.args[0], r.loop_lo, r.loop_hi, i, j);
            }
        }
        return false;
    }

    bool match_seq(const std::vector<RegexPtr>& parts, std::size_t idx, std::size_t i, std::size_t j) {
        if (idx == parts.size()) return i == j;
        if (idx + 1 == parts.size()) return match(*parts[idx], i, j);
        for (std::size_t k = i; k <= j; ++k)
            if (match(*parts[idx], i, k) && match_seq(parts, idx + 1, k, j)) return true;
        return false;
    }

    bool match_star(const Regex& r, std::size_t i, std::size_t j) {
        if (i == j) return true;
        auto key = std::make_tuple(i, j);
        auto& memo = star_memo_[&r];
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool res = false;
        for (std::size_t k = i + 1; k <= j && !res; ++k)
            res = match(r, i, k) && match_star(r, k, j);
        memo[key] = res;
        return res;
    }

    bool match_count(const Regex& r, unsigned lo, unsigned hi, std::size_t i, std::size_t j) {
        if (lo == 0 && i == j) return true;
        if (hi == 0) return i == j;
        for (std::size_t k = i; k <= j; ++k) {
            // An empty iteration never helps beyond satisfying the lower bound.
            if (k == i && lo == 0) continue;
            if (match(r, i, k) && match_count(r, lo == 0 ? 0 : lo - 1, hi - 1, k, j)) return true;
        }
        return false;
    }

    const Word& w_;
    std::map<std::tuple<const Regex*, std::size_t, std::size_t>, bool> memo_;
    std::map<const Regex*, std::map<std::tuple<std::size_t, std::size_t>, bool>> star_memo_;
};

}  // namespace

bool regex_matches(const Regex& r, const Word& w) {
    Matcher m(w);
    return m.match(r, 0, w.size());
}

}  // namespace strsat
