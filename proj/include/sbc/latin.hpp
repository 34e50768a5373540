#pragma once
#include <Eigen/Dense>

#include "sbc/cube.hpp"

namespace sbc {

// n x n array over {0..n-1}, each symbol once per row and column.
struct LatinSquare {
    int n = 0;
    Eigen::MatrixXi cells;
};

bool is_latin(const LatinSquare& L);

// cells(i,j) = (i+j) mod n.
LatinSquare circulant_square(int n);

// cells(i,i) = i; odd n by the halving formula, even n >= 4 by backtracking
// with fixed variable order. n == 2 has no idempotent square.
LatinSquare idempotent_square(int n);

// 0/1 cube with a 1 at (i, j, L(i,j)); every line sum is 1.
Cube indicator_cube(const LatinSquare& L);

struct UnitSpec {
    enum Kind { Kmmm, K3xK, J } kind = Kmmm;
    int m = 0;
    int x = 0;  // distinguished index for J, 0-based

    static UnitSpec kmmm(int m) { return {Kmmm, m, 0}; }
    static UnitSpec k3xk(int m) { return {K3xK, m, 0}; }
    static UnitSpec j(int m, int x) { return {J, m, x}; }
};

// All-ones-line witness for the kind's mask: Kmmm = Latin indicator;
// K3xK = off-diagonal cells of an idempotent square; J adds cell (x,x,x).
Cube unit_cube(const UnitSpec& spec);

// SBC(n) -> SBC(mn): copy t = k*m + i of (base + 3tn^2 * unit) goes to block
// position (i,j,k) of the circulant square of order m.
Cube inflate(const Cube& base, int m);

// The block-diagonal even-n square whose 2n row+column sums are 0..2n-1.
// Odd n is a parity error: the total n(2n-1) would be odd.
Grid two_dim_square(int n);

}  // namespace sbc
