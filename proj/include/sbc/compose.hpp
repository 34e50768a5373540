#pragma once
#include <vector>

#include "sbc/blocks.hpp"
#include "sbc/cube.hpp"
#include "sbc/latin.hpp"

namespace sbc {

// One block's replacement in the offset-and-sum composition: a verified
// start-0 base cube and an all-ones-line unit over the same mask, embedded
// at the block's host elements (distinguished element first for J).
struct Piece {
    UnitSpec kind;
    std::vector<int> block;  // 0-based host elements
    Cube base;
    Cube unit;
    Int line_count = 0;      // m_i = the kind's live-line count

    // Builds the piece with the library base for the kind.
    static Piece make(UnitSpec::Kind kind, std::vector<int> block);
};

struct Plan {
    int n = 0;
    std::vector<Piece> pieces;
};

// host = sum_i embed(base_i + a_i * unit_i) with a_i = sum_{j<i} m_j.
// Checks first that the pieces' live lines partition the host's 3n^2 lines
// and that every piece witness verifies.
Cube construction_cons(const Plan& plan);

// n = 7: the cyclic triple system, every element distinguished once.
// n = 13: blocks x+{0,1,3,9} mod 13, x distinguished.
// n = 17: affine plane of order 4 with an extended class, per fixed table.
// n = 11: the repaired assignment over the two-class-extended 9-point plane
//         (the leftover triples host J(3) pieces; K3xK(3) admits no witness).
Plan plan_special(int n);

// Point-deleted PBD(n+1,{4,5,6}): parallel-class blocks become Kmmm pieces,
// the rest K3xK pieces.
Plan plan_general(int n);

enum class GenStrategy { Auto, Library, Inflate, Special, Pbd };

// Verified SBC(n) for any n >= 2. Auto picks: library for {2,3,5}, special
// plans for {7,11,13,17}, inflation from the smallest prime factor for
// composites, the general PBD route for remaining primes.
Cube generate_sbc(int n, GenStrategy strategy = GenStrategy::Auto);

}  // namespace sbc
