#pragma once

#include "cubeavoid/cube.hpp"

namespace cubeavoid {

// Representative-in-1..t convention: values congruent to 0 mod t reduce to t,
// so reduce_mod(x, t) is always in 1..t. This is the single most error-prone
// detail of the whole construction; it lives here and nowhere else.
int reduce_mod(int x, int t);

// Which of the two entry formulas a cell of the starting cube uses:
// plus_form is i-j+k (mod t), minus_form is j-i+k (mod t). Assigned by the
// cell's coordinate octant, never by back-solving the value.
enum class Orientation { plus_form, minus_form };

// One of the eight coordinate octants of a cube of order 2t. case_index runs
// 1..8 over the construction's case list: the four formula lines in order,
// primary range first, parenthesized range second.
struct OctantId {
    bool i_high = false;
    bool j_high = false;
    bool k_high = false;
    int case_index = 0;

    bool operator==(const OctantId&) const = default;
};

// Low half S1 = {1..t}, high half S2 = {t+1..2t}.
bool symbol_in_low_class(Symbol s, int t);

// Order-2t square: quadrant (i<=t, j<=t) holds j-i+1 (mod t), and so on.
LatinSquare starting_square(int t);

// Order-2t cube built from the eight-case entry formula; always Latin.
LatinCube starting_latin_cube(int t);

OctantId octant_of(const Cell& c, int t);
OctantId opposite(const OctantId& o);
Orientation orientation_of(const Cell& c, int t);

// Starting-cube entry without materializing the cube.
Symbol starting_entry(int i, int j, int k, int t);

}  // namespace cubeavoid
