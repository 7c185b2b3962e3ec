#pragma once

// Chord diagrams for annular permutations: outer circle points 1..m
// clockwise, inner circle points m+1..m+n counterclockwise.

#include <string>

#include "sofree/annular.hpp"

namespace sofree {

// Byte-stable SVG with one <path class="cycle"> per cycle of length >= 2.
// Throws Error unless p is in S_NC(m,n).
std::string render_svg(const Permutation& p, Shape s);

}  // namespace sofree
