#pragma once
#include <string>
#include <vector>

#include "sbc/cube.hpp"

namespace sbc {

// The eight explicit cubes the composition rests on. SBC2 is the introductory
// figure; the rest are the bundled tables. J-witness kinds fix the
// distinguished element at index 1 (first row/column/layer).
enum class BlockKind {
    SBC2,
    SBC3,
    SBC5,
    SBHC4_14,
    SBHC5_15,
    SBHC6_16,
    SBHC3_12,  // J3 witness
    SBHC4_13,  // J4 witness
};

const std::vector<BlockKind>& all_block_kinds();
std::string to_string(BlockKind k);
BlockKind block_kind_from_string(const std::string& s);

// Expected live-line count for the kind's canonical mask.
long block_line_count(BlockKind k);

// Loads the bundled table, re-derives the canonical mask, and re-verifies the
// consecutive-sum property; a transcription mismatch throws.
Cube block_cube(BlockKind k);

}  // namespace sbc
