#pragma once

#include <cstddef>
#include <vector>

#include "strsat/nfa.hpp"

namespace strsat::detail {

/// One block of an alignment: the part of the common word that lies in
/// left item `i` and right item `j`.
struct Segment {
    std::size_t i = 0, j = 0;
    Nfa nfa;
};

struct Alignment {
    std::vector<Segment> segments;
    std::size_t states = 0;
};

/// All ways of cutting a word of L(left_0 ... left_{n-1}) ∩ L(right_0 ... right_{m-1})
/// at the borders of both concatenations, each with the exact language of
/// every block. Sorted by total state count; `truncated` is set when more
/// than `cap` alignments exist.
std::vector<Alignment> align(const std::vector<Nfa>& left, const std::vector<Nfa>& right, std::size_t cap,
                             bool& truncated);

}  // namespace strsat::detail
