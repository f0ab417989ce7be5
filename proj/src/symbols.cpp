#include "strsat/symbols.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace strsat {

namespace {

bool is_preferred(CodePoint cp) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
}

// Readable members first, then everything else in ascending order.
const std::vector<CodePoint>& preferred_points() {
    static const std::vector<CodePoint> points = [] {
        std::vector<CodePoint> v;
        for (CodePoint c = 'a'; c <= 'z'; ++c) v.push_back(c);
        for (CodePoint c = 'A'; c <= 'Z'; ++c) v.push_back(c);
        for (CodePoint c = '0'; c <= '9'; ++c) v.push_back(c);
        return v;
    }();
    return points;
}

}  // namespace

SymbolTable::SymbolTable() { *this = build({}); }

SymbolTable SymbolTable::build_separable(std::vector<CodePoint> explicit_points,
                                         const std::vector<std::pair<CodePoint, CodePoint>>& ranges) {
    SymbolTable first = build(explicit_points, ranges);
    for (Symbol s = 0; s < first.size(); ++s)
        if (!first.is_explicit(s) && first.class_size(s) >= 2) explicit_points.push_back(first.representative(s));
    SymbolTable out = build(std::move(explicit_points), ranges);
    out.separable_ = true;
    return out;
}

SymbolTable SymbolTable::build(std::vector<CodePoint> explicit_points,
                               const std::vector<std::pair<CodePoint, CodePoint>>& ranges) {
    SymbolTable table{RawTag{}};
    table.kinds_.clear();
    table.explicit_.clear();
    table.layout_.clear();
    table.dummy_.reset();

    std::sort(explicit_points.begin(), explicit_points.end());
    explicit_points.erase(std::unique(explicit_points.begin(), explicit_points.end()),
                          explicit_points.end());
    for (CodePoint cp : explicit_points) {
        if (cp > kMaxCodePoint) throw std::invalid_argument("code point out of range");
        Kind k;
        k.is_explicit = true;
        k.point = cp;
        k.size = 1;
        table.explicit_.emplace(cp, static_cast<Symbol>(table.kinds_.size()));
        table.kinds_.push_back(std::move(k));
    }

    // Segment boundaries induced by ranges; inside a segment every code point
    // has the same range-membership signature.
    std::set<CodePoint> cuts{0};
    for (auto [lo, hi] : ranges) {
        if (lo > hi) continue;
        cuts.insert(lo);
        if (hi < kMaxCodePoint) cuts.insert(hi + 1);
    }
    std::vector<CodePoint> starts(cuts.begin(), cuts.end());

    std::map<std::vector<bool>, Symbol> by_signature;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        CodePoint seg_lo = starts[i];
        CodePoint seg_hi = (i + 1 < starts.size()) ? starts[i + 1] - 1 : kMaxCodePoint;
        std::vector<bool> signature;
        for (auto [lo, hi] : ranges) signature.push_back(lo <= hi && lo <= seg_lo && seg_hi <= hi);

        // Split the segment around explicit points.
        std::vector<Interval> pieces;
        CodePoint cur = seg_lo;
        auto it = std::lower_bound(explicit_points.begin(), explicit_points.end(), seg_lo);
        for (; it != explicit_points.end() && *it <= seg_hi; ++it) {
            if (*it > cur) pieces.push_back({cur, *it - 1});
            cur = *it + 1;
        }
        if (cur <= seg_hi) pieces.push_back({cur, seg_hi});
        if (pieces.empty()) continue;

        auto [pos, inserted] =
            by_signature.emplace(signature, static_cast<Symbol>(table.kinds_.size()));
        if (inserted) table.kinds_.push_back(Kind{});
        Kind& kind = table.kinds_[pos->second];
        for (const Interval& piece : pieces) {
            kind.intervals.push_back(piece);
            kind.size += static_cast<std::uint64_t>(piece.hi) - piece.lo + 1;
            table.layout_.push_back({piece, pos->second});
        }
        if (std::none_of(signature.begin(), signature.end(), [](bool b) { return b; }))
            table.dummy_ = pos->second;
    }
    std::sort(table.layout_.begin(), table.layout_.end(),
              [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
    return table;
}

Symbol SymbolTable::symbol_for(CodePoint cp) const {
    if (auto it = explicit_.find(cp); it != explicit_.end()) return it->second;
    auto it = std::upper_bound(layout_.begin(), layout_.end(), cp,
                               [](CodePoint c, const auto& e) { return c < e.first.lo; });
    if (it == layout_.begin()) throw std::out_of_range("code point not covered by alphabet");
    --it;
    if (cp > it->first.hi) throw std::out_of_range("code point not covered by alphabet");
    return it->second;
}

std::uint64_t SymbolTable::class_size(Symbol s) const { return kinds_.at(s).size; }

CodePoint SymbolTable::representative(Symbol s, std::size_t variant) const {
    const Kind& k = kinds_.at(s);
    if (k.is_explicit) return k.point;
    auto contains = [&](CodePoint cp) {
        return std::any_of(k.intervals.begin(), k.intervals.end(),
                           [cp](const Interval& iv) { return iv.lo <= cp && cp <= iv.hi; });
    };
    std::vector<CodePoint> readable;
    for (CodePoint cp : preferred_points())
        if (contains(cp)) readable.push_back(cp);
    std::uint64_t idx = variant % k.size;
    if (idx < readable.size()) return readable[idx];
    idx -= readable.size();
    for (const Interval& iv : k.intervals) {
        for (CodePoint cp = iv.lo;; ++cp) {
            if (!is_preferred(cp)) {
                if (idx == 0) return cp;
                --idx;
            }
            if (cp == iv.hi) break;
        }
    }
    return k.intervals.front().lo;
}

std::vector<Symbol> SymbolTable::symbols_in_range(CodePoint lo, CodePoint hi) const {
    std::vector<Symbol> out;
    if (lo > hi) return out;
    for (auto it = explicit_.lower_bound(lo); it != explicit_.end() && it->first <= hi; ++it)
        out.push_back(it->second);
    for (const auto& [iv, sym] : layout_)
        if (iv.lo <= hi && lo <= iv.hi) out.push_back(sym);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Symbol> SymbolTable::encode(std::span<const CodePoint> word) const {
    std::vector<Symbol> out;
    out.reserve(word.size());
    for (CodePoint cp : word) out.push_back(symbol_for(cp));
    return out;
}

Word SymbolTable::decode(std::span<const Symbol> word, std::size_t variant) const {
    Word out;
    out.reserve(word.size());
    for (Symbol s : word) out.push_back(representative(s, variant));
    return out;
}

std::string SymbolTable::describe(Symbol s) const {
    const Kind& k = kinds_.at(s);
    if (k.is_explicit) {
        if (k.point >= 0x20 && k.point < 0x7f) return std::string(1, static_cast<char>(k.point));
        return "\\u{" + std::to_string(k.point) + "}";
    }
    return "#" + std::to_string(s);
}

}  // namespace strsat

namespace strsat {

std::string quote_string(const Word& w) {
    std::string out = "\"";
    for (CodePoint cp : w) {
        if (cp == '"') {
            out += "\"\"";
        } else if (cp >= 0x20 && cp < 0x7f && cp != '\\') {
            out += static_cast<char>(cp);
        } else {
            std::ostringstream hex;
            hex << std::hex << cp;
            out += "\\u{" + hex.str() + "}";
        }
    }
    return out + "\"";
}

}  // namespace strsat
