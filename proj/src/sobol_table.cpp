#include "hankelnet/netgen.hpp"

// First 50 dimensions of the Joe-Kuo direction-number set
// (one line per dimension: d a m_1 ... m_k). Byte-identical to
// data/sobol_directions.txt.

namespace hankelnet::detail {

extern const char kSobolTableText[];
const char kSobolTableText[] =
    "2 0 1\n"
    "3 1 1 3\n"
    "4 1 1 3 1\n"
    "5 2 1 1 1\n"
    "6 1 1 1 3 3\n"
    "7 4 1 3 5 13\n"
    "8 2 1 1 5 5 17\n"
    "9 4 1 1 5 5 5\n"
    "10 7 1 1 7 11 19\n"
    "11 11 1 1 5 1 1\n"
    "12 13 1 1 1 3 11\n"
    "13 14 1 3 5 5 31\n"
    "14 1 1 3 3 9 7 49\n"
    "15 13 1 1 1 15 21 21\n"
    "16 16 1 3 1 13 27 49\n"
    "17 19 1 1 1 15 7 5\n"
    "18 22 1 3 1 15 13 25\n"
    "19 25 1 1 5 5 19 61\n"
    "20 1 1 3 7 11 23 15 103\n"
    "21 4 1 3 7 13 13 15 69\n"
    "22 7 1 1 3 13 7 35 63\n"
    "23 8 1 3 5 9 1 25 53\n"
    "24 14 1 3 1 13 9 35 107\n"
    "25 19 1 3 1 5 27 61 31\n"
    "26 21 1 1 5 11 19 41 61\n"
    "27 28 1 3 5 3 3 13 69\n"
    "28 31 1 1 7 13 1 19 1\n"
    "29 32 1 3 7 5 13 19 59\n"
    "30 37 1 1 3 9 25 29 41\n"
    "31 41 1 3 5 13 23 1 55\n"
    "32 42 1 3 7 3 13 59 17\n"
    "33 50 1 3 1 3 5 53 69\n"
    "34 55 1 1 5 5 23 33 13\n"
    "35 56 1 1 7 7 1 61 123\n"
    "36 59 1 1 7 9 13 61 49\n"
    "37 62 1 3 3 5 3 55 33\n"
    "38 14 1 3 1 15 31 13 49 245\n"
    "39 21 1 3 5 15 31 59 63 97\n"
    "40 22 1 3 1 11 11 11 77 249\n"
    "41 38 1 3 1 11 27 43 71 9\n"
    "42 47 1 1 7 15 21 11 81 45\n"
    "43 49 1 3 7 3 25 31 65 79\n"
    "44 50 1 3 1 1 19 11 3 205\n"
    "45 52 1 1 5 9 19 21 29 157\n"
    "46 56 1 3 7 11 1 33 89 185\n"
    "47 67 1 3 3 3 15 9 79 71\n"
    "48 70 1 3 7 11 15 39 119 27\n"
    "49 84 1 1 3 1 11 31 97 225\n"
    "50 97 1 1 1 3 23 43 57 177\n"
    ;

}  // namespace hankelnet::detail
