#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace strsat {

/// Index of a letter in the solver's finite alphabet.
using Symbol = std::uint32_t;

/// A Unicode code point as used by SMT-LIB strings.
using CodePoint = std::uint32_t;

using Word = std::vector<CodePoint>;

/// Finite alphabet for one solve call.
///
/// Every code point mentioned in the input becomes its own explicit symbol.
/// All remaining code points are grouped into classes of points that no
/// constraint of the input can tell apart (same membership in every
/// `re.range`). Without ranges there is exactly one such class, the DUMMY
/// symbol. A class behaves like a single letter inside automata and is
/// concretized to one of its members when a model is printed.
class SymbolTable {
public:
    static constexpr CodePoint kMaxCodePoint = 0x2FFFF;

    struct Interval {
        CodePoint lo;
        CodePoint hi;  // inclusive
    };

    SymbolTable();

    static SymbolTable build(std::vector<CodePoint> explicit_points,
                             const std::vector<std::pair<CodePoint, CodePoint>>& ranges = {});

    /// Like build, but one member of every class of size >= 2 is promoted to
    /// an explicit symbol. Two distinct letters of a class can then always be
    /// renamed to that spare and another member, so letter disequalities need
    /// no same-class case.
    static SymbolTable build_separable(std::vector<CodePoint> explicit_points,
                                       const std::vector<std::pair<CodePoint, CodePoint>>& ranges = {});

    bool separable() const { return separable_; }

    std::size_t size() const { return kinds_.size(); }

    /// Symbol whose class contains `cp`.
    Symbol symbol_for(CodePoint cp) const;

    bool is_explicit(Symbol s) const { return kinds_[s].is_explicit; }

    /// Symbol of the class that holds code points outside every range, if
    /// such points exist.
    std::optional<Symbol> dummy() const { return dummy_; }

    /// Number of code points represented by symbol `s`.
    std::uint64_t class_size(Symbol s) const;

    /// The `variant`-th member of the class (wraps around); readable letters
    /// are preferred so that printed models stay legible.
    CodePoint representative(Symbol s, std::size_t variant = 0) const;

    /// All symbols whose class intersects [lo, hi]. Range endpoints are
    /// always explicit or class boundaries, so intersecting means contained.
    std::vector<Symbol> symbols_in_range(CodePoint lo, CodePoint hi) const;

    std::vector<Symbol> encode(std::span<const CodePoint> word) const;
    Word decode(std::span<const Symbol> word, std::size_t variant = 0) const;

    std::string describe(Symbol s) const;

private:
    struct RawTag {};
    explicit SymbolTable(RawTag) {}

    struct Kind {
        bool is_explicit = false;
        CodePoint point = 0;               // explicit symbols
        std::vector<Interval> intervals;   // classes
        std::uint64_t size = 0;
    };

    std::vector<Kind> kinds_;
    std::map<CodePoint, Symbol> explicit_;
    // Sorted, disjoint intervals of non-explicit code points with their class.
    std::vector<std::pair<Interval, Symbol>> layout_;
    std::optional<Symbol> dummy_;
    bool separable_ = false;
};

/// SMT-LIB string literal with `""` and `\u{..}` escapes.
std::string quote_string(const Word& w);

}  // namespace strsat
