#pragma once
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sbc/cube.hpp"
#include "sbc/latin.hpp"

namespace sbc {

// Point set {0..v-1} with display names (adjoined points carry names like
// "inf1"), a block list, and optional parallel classes (block-index groups).
struct BlockDesign {
    int v = 0;
    std::vector<std::string> names;           // size v; defaults to "1".."v"
    std::vector<std::vector<int>> blocks;     // 0-based point indices, sorted
    std::vector<std::vector<int>> classes;    // each entry: block indices
    std::string provenance;                   // construction route, in-memory only

    BlockDesign() = default;
    explicit BlockDesign(int v_);
    const std::string& name_of(int p) const { return names[p]; }
};

struct PbdReport {
    bool accepted = false;
    std::string detail;  // first defect when rejected
};

// Every unordered pair in exactly one block; block sizes within K (when
// given); listed classes partition the point set.
PbdReport verify_pbd(const BlockDesign& d, const std::set<int>* K = nullptr);

// q a prime power. PBD(q^2, {q}) with the q+1 parallel classes recorded.
BlockDesign affine_plane(int q);
// PBD(q^2+q+1, {q+1}).
BlockDesign projective_plane(int q);
// Base block {0,1,3} developed mod 7.
BlockDesign sts7();

// MacNeish bound: min over prime-power factors p^e of (p^e - 1).
int mols_bound(int m);
// k mutually orthogonal Latin squares of order m (field construction and
// direct products). k = -1 means the full MacNeish count.
std::vector<LatinSquare> mols(int m, int k = -1);
// k groups of size m (point r*m+x), blocks of size k; needs k-2 MOLS.
BlockDesign transversal_design(int k, int m);

// Removes x; blocks through x shrink by one and are recorded as the parallel
// class A (they partition the remaining points). Shrinking any block below
// two points is a degenerate-error.
BlockDesign delete_point(const BlockDesign& d, int x);

// Construct a verified PBD(v,{4,5,6}); throws unavailable_error for
// v in {7..12, 14, 15, 18, 19, 23} and v < 4. See pbd456.cpp for the route
// table (planes, truncated transversal designs, bundled tables, search).
BlockDesign pbd456(int v);

// Weights on 3-subsets of {0..v-1}; f~({i,j}) = sum_k f({i,j,k}).
struct SbtsWeights {
    int v = 0;
    std::map<std::array<int, 3>, Int> w;  // keys sorted ascending; absent = 0

    Int get(int a, int b, int c) const;
    void set(int a, int b, int c, Int val);
};

struct SbtsReport {
    bool accepted = false;
    std::map<std::pair<int, int>, Int> pair_sums;
    std::string detail;
};

// Accepted iff the pair sums are exactly {0 .. C(v,2)-1}.
SbtsReport sbts_pair_sums(const SbtsWeights& w);

// Design file schema {"v", "points", "blocks", "classes"}.
std::string encode_design(const BlockDesign& d);
BlockDesign decode_design(const std::string& text);

}  // namespace sbc
