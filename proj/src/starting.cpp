#include "cubeavoid/starting.hpp"

#include <stdexcept>

namespace cubeavoid {

int reduce_mod(int x, int t) {
    int r = x % t;
    if (r <= 0) r += t;
    return r;
}

bool symbol_in_low_class(Symbol s, int t) { return s <= t; }

LatinSquare starting_square(int t) {
    if (t < 1) throw std::invalid_argument("half order t must be >= 1");
    const int n = 2 * t;
    LatinSquare sq(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Symbol s;
            if (i <= t && j <= t)
                s = reduce_mod(j - i + 1, t);
            else if (i > t && j > t)
                s = reduce_mod(i - j + 1, t);
            else if (i <= t)  // j > t
                s = reduce_mod(j - i + 1, t) + t;
            else  // i > t, j <= t
                s = reduce_mod(i - j + 1, t) + t;
            sq.set(i, j, s);
        }
    return sq;
}

Symbol starting_entry(int i, int j, int k, int t) {
    const bool ih = i > t, jh = j > t, kh = k > t;
    // minus form j-i+k where the octant's class is S1 with that sign, etc.
    if ((!ih && !jh && !kh) || (ih && !jh && kh)) return reduce_mod(j - i + k, t);
    if ((ih && jh && !kh) || (!ih && jh && kh)) return reduce_mod(i - j + k, t);
    if ((!ih && jh && !kh) || (ih && jh && kh)) return reduce_mod(j - i + k, t) + t;
    return reduce_mod(i - j + k, t) + t;  // (ih && !jh && !kh) || (!ih && !jh && kh)
}

LatinCube starting_latin_cube(int t) {
    if (t < 1) throw std::invalid_argument("half order t must be >= 1");
    const int n = 2 * t;
    LatinCube cube(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) cube.set(i, j, k, starting_entry(i, j, k, t));
    return cube;
}

OctantId octant_of(const Cell& c, int t) {
    const int n = 2 * t;
    if (c.i < 1 || c.i > n || c.j < 1 || c.j > n || c.k < 1 || c.k > n)
        throw std::out_of_range("cell outside cube of order 2t");
    OctantId o;
    o.i_high = c.i > t;
    o.j_high = c.j > t;
    o.k_high = c.k > t;
    // Case list order: (lo,lo,lo), (hi,lo,hi), (hi,hi,lo), (lo,hi,hi),
    //                  (lo,hi,lo), (hi,hi,hi), (hi,lo,lo), (lo,lo,hi).
    if (!o.i_high && !o.j_high && !o.k_high)
        o.case_index = 1;
    else if (o.i_high && !o.j_high && o.k_high)
        o.case_index = 2;
    else if (o.i_high && o.j_high && !o.k_high)
        o.case_index = 3;
    else if (!o.i_high && o.j_high && o.k_high)
        o.case_index = 4;
    else if (!o.i_high && o.j_high && !o.k_high)
        o.case_index = 5;
    else if (o.i_high && o.j_high && o.k_high)
        o.case_index = 6;
    else if (o.i_high && !o.j_high && !o.k_high)
        o.case_index = 7;
    else
        o.case_index = 8;
    return o;
}

OctantId opposite(const OctantId& o) {
    OctantId r;
    r.i_high = !o.i_high;
    r.j_high = !o.j_high;
    r.k_high = !o.k_high;
    static constexpr int kOpposite[9] = {0, 6, 5, 8, 7, 2, 1, 4, 3};
    r.case_index = kOpposite[o.case_index];
    return r;
}

Orientation orientation_of(const Cell& c, int t) {
    OctantId o = octant_of(c, t);
    // Cases 1, 2 (j-i+k) and 5, 6 ((j-i+k)+t) are the minus form.
    return (o.case_index == 1 || o.case_index == 2 || o.case_index == 5 || o.case_index == 6)
               ? Orientation::minus_form
               : Orientation::plus_form;
}

}  // namespace cubeavoid
