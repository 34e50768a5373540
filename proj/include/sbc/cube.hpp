#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace sbc {

using Int = std::int64_t;
using Grid = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using BoolGrid = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
using Mask = std::vector<BoolGrid>;  // mask[k](i, j)

// n x n x n cube of nonnegative integers over a cell mask. Cells are
// addressed (i, j, k) = (row, column, layer), 0-based in code; the text
// formats print layers as n x n grids in the order k = 1..n.
struct Cube {
    int n = 0;
    Int start = 0;
    Mask mask;                 // true = cell participates
    std::vector<Grid> layer;   // layer[k](i, j); zero wherever mask is false

    Cube() = default;
    explicit Cube(int n_, Int start_ = 0);

    Int at(int i, int j, int k) const { return layer[k](i, j); }
    bool live(int i, int j, int k) const { return mask[k](i, j); }

    bool operator==(const Cube& o) const;
};

Mask full_mask(int n);
Mask distinct_mask(int n);          // live iff i, j, k pairwise distinct
Mask j_mask(int n, int x);          // distinct_mask plus cells with >= 2 indices equal to x
long live_cell_count(const Mask& m);

// Throws structural_error on a negative entry or a nonzero entry on a
// masked-out cell.
void check_wellformed(const Cube& c);

// Per-axis line sums. A line is live iff it contains at least one masked
// cell; dead lines are excluded from verification entirely.
struct LineProfile {
    Grid xsums;    // xsums(j, k) = sum over i
    Grid ysums;    // ysums(i, k) = sum over j
    Grid zsums;    // zsums(i, j) = sum over k
    BoolGrid xlive, ylive, zlive;

    long live_count() const;
    std::vector<Int> live_sums() const;  // unsorted
    Int total() const { return xsums.sum(); }
};

LineProfile line_profile(const Cube& c);

struct VerificationReport {
    bool accepted = false;
    Int start = 0;
    long line_count = 0;           // L; expected range is [start, start+L-1]
    std::vector<Int> observed;     // sorted live-line sums
    std::string first_defect;      // empty when accepted
};

VerificationReport verify_consecutive(const Cube& c);

// cube + a*unit, entrywise. unit must sum to 1 along every line live in
// cube's mask and be zero outside it.
Cube add_unit_multiple(const Cube& cube, const Cube& unit, Int a);

// One injection per axis, piece index -> host index.
struct AxisMaps {
    std::vector<int> row, col, lay;
};

// host entries += piece entries at mapped coordinates; host mask unchanged.
Cube embed_accumulate(Cube host, const Cube& piece, const AxisMaps& maps);

// The 6 axis permutations of a cube; perm indexes permutations of (i,j,k)
// in lexicographic order, 0 = identity.
Cube permute_axes(const Cube& c, int perm);

}  // namespace sbc
