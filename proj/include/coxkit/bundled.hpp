#pragma once

#include "coxkit/util.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

// Reference values for the bundled ten-generator example: a rank-10 system
// whose two distinguished generators have a normal closure that is an
// infinitely generated right-angled Coxeter group. The nerve of that closure
// is a flag triangulation of the 7-sphere whose f-polynomial has non-real
// roots, so the example doubles as the stress fixture for every module.
// Everything here was cross-computed with an independent implementation
// before being frozen.

namespace coxkit::bundled {

inline const char* kExampleName = "example_87";

inline const char* kExampleText =
    "# ten generators; t1 and t2 are the distinguished pair\n"
    "node t1\n"
    "node s2\n"
    "node s3\n"
    "node s4\n"
    "node b4\n"
    "node s5\n"
    "node s6\n"
    "node s7\n"
    "node s8\n"
    "node t2\n"
    "edge t1 s2 inf\n"
    "edge s2 s3 3\n"
    "edge s3 s4 3\n"
    "edge s4 b4 3\n"
    "edge s4 s5 3\n"
    "edge s5 s6 3\n"
    "edge s6 s7 3\n"
    "edge s7 s8 3\n"
    "edge s8 t2 4\n"
    "T t1 t2\n";

// Same diagram with the face K marked: the trivial chain at t1 plus the
// 3-step chain t2.s8.s7. The complementary part of K's centralizer is the
// 4-node branched diagram on {s3,s4,b4,s5}.
inline const char* kLinkKText =
    "node t1\n"
    "node s2\n"
    "node s3\n"
    "node s4\n"
    "node b4\n"
    "node s5\n"
    "node s6\n"
    "node s7\n"
    "node s8\n"
    "node t2\n"
    "edge t1 s2 inf\n"
    "edge s2 s3 3\n"
    "edge s3 s4 3\n"
    "edge s4 b4 3\n"
    "edge s4 s5 3\n"
    "edge s5 s6 3\n"
    "edge s6 s7 3\n"
    "edge s7 s8 3\n"
    "edge s8 t2 4\n"
    "T t1 t2\n"
    "link t1\n"
    "link t2 s8 s7\n";

// Face L: the 2-step chain t2.s8 alone; its centralizer complement is the
// 6-node subdiagram on {s2,s3,s4,b4,s5,s6}.
inline const char* kLinkLText =
    "node t1\n"
    "node s2\n"
    "node s3\n"
    "node s4\n"
    "node b4\n"
    "node s5\n"
    "node s6\n"
    "node s7\n"
    "node s8\n"
    "node t2\n"
    "edge t1 s2 inf\n"
    "edge s2 s3 3\n"
    "edge s3 s4 3\n"
    "edge s4 b4 3\n"
    "edge s4 s5 3\n"
    "edge s5 s6 3\n"
    "edge s6 s7 3\n"
    "edge s7 s8 3\n"
    "edge s8 t2 4\n"
    "T t1 t2\n"
    "link t2 s8\n";

struct Expected {
    // orders of the complement subdiagram and its two key subparabolics
    BigInt order_rest{"696729600"};       // E8
    BigInt order_rest_minus_s2{"322560"}; // D7
    BigInt order_rest_minus_s8{"2903040"};// E7

    // closure generator counts per distinguished generator
    BigInt count_t1{"2160"};
    BigInt count_t2{"240"};

    // two-variable f-polynomial, exponents (t1, t2) -> coefficient
    std::vector<std::pair<std::array<unsigned, 2>, long long>> f_terms{
        {{0, 0}, 1},
        {{0, 1}, 240},
        {{1, 0}, 2160},
        {{0, 2}, 6720},
        {{1, 1}, 30240},
        {{0, 3}, 60480},
        {{1, 2}, 181440},
        {{0, 4}, 241920},
        {{1, 3}, 604800},
        {{0, 5}, 483840},
        {{1, 4}, 1209600},
        {{0, 6}, 483840},
        {{1, 5}, 1451520},
        {{0, 7}, 207360},
        {{1, 6}, 967680},
        {{0, 8}, 17280},
        {{1, 7}, 276480},
    };

    // diagonal f(t,t), ascending degree
    std::vector<long long> f_diagonal{1,       2400,    36960,   241920,  846720,
                                      1693440, 1935360, 1175040, 293760};

    // numerator of 1/W-bar(t); denominator is (1+t)^8
    std::vector<long long> reciprocal_numerator{1,      -2392,  20188, -70504, 107590,
                                                -70504, 20188,  -2392, 1};

    // link f-polynomials, ascending degree
    std::vector<long long> f_link_L{1, 54, 486, 1800, 3240, 2808, 936};
    std::vector<long long> f_link_K{1, 8, 24, 32, 16};

    // spherical family census
    std::size_t family_count = 19;
    std::vector<std::pair<unsigned, unsigned>> grade_histogram{
        {0, 1}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 3}, {8, 3}};

    // poles of the closure growth series. `re`/`im` are six-digit frozen
    // values; `shown_re`/`shown_im` are the two-digit constants the numbers
    // are usually quoted as (the smallest one is quoted truncated, not
    // rounded, hence the pairing). Non-real entries stand for conjugate
    // pairs.
    struct Pole {
        double re;
        double im;
        double shown_re;
        double shown_im;
    };
    std::vector<Pole> poles{{0.000419544, 0.0, 0.00041, 0.0},
                            {0.242865, 0.159382, 0.24, 0.16},
                            {0.631430, 0.0, 0.63, 0.0},
                            {1.58371, 0.0, 1.6, 0.0},
                            {2.87803, 1.88873, 2.9, 1.9},
                            {2383.54, 0.0, 2400.0, 0.0}};

    int distinct_real_roots_of_diagonal = 4;
};

inline const Expected& expected() {
    static const Expected e;
    return e;
}

}  // namespace coxkit::bundled
