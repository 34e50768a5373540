#include "sbc/blocks.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "sbc/codec.hpp"
#include "sbc/errors.hpp"
#include "sbc/pbd.hpp"

namespace sbc {

namespace {

struct KindInfo {
    const char* name;
    const char* file;
    int n;
    int kind;  // 0 full, 1 distinct, 2 J-mask at x=0
    long lines;
};

const KindInfo& info(BlockKind k) {
    static const std::map<BlockKind, KindInfo> table{
        {BlockKind::SBC2, {"SBC2", "sbc2.txt", 2, 0, 12}},
        {BlockKind::SBC3, {"SBC3", "sbc3.txt", 3, 0, 27}},
        {BlockKind::SBC5, {"SBC5", "sbc5.txt", 5, 0, 75}},
        {BlockKind::SBHC4_14, {"SBHC4_14", "sbhc4_14.txt", 4, 1, 36}},
        {BlockKind::SBHC5_15, {"SBHC5_15", "sbhc5_15.txt", 5, 1, 60}},
        {BlockKind::SBHC6_16, {"SBHC6_16", "sbhc6_16.txt", 6, 1, 90}},
        {BlockKind::SBHC3_12, {"SBHC3_12", "sbhc3_12.txt", 3, 2, 21}},
        {BlockKind::SBHC4_13, {"SBHC4_13", "sbhc4_13.txt", 4, 2, 39}},
    };
    return table.at(k);
}

}  // namespace

const std::vector<BlockKind>& all_block_kinds() {
    static const std::vector<BlockKind> kinds{
        BlockKind::SBC2,     BlockKind::SBC3,     BlockKind::SBC5,
        BlockKind::SBHC4_14, BlockKind::SBHC5_15, BlockKind::SBHC6_16,
        BlockKind::SBHC3_12, BlockKind::SBHC4_13};
    return kinds;
}

std::string to_string(BlockKind k) { return info(k).name; }

BlockKind block_kind_from_string(const std::string& s) {
    for (BlockKind k : all_block_kinds())
        if (to_string(k) == s) return k;
    throw argument_error("unknown block kind: " + s);
}

long block_line_count(BlockKind k) { return info(k).lines; }

Cube block_cube(BlockKind k) {
    static std::mutex mu;
    static std::map<BlockKind, Cube> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;

    const KindInfo& ki = info(k);
    const std::string path = data_dir() + "/blocks/" + ki.file;
    std::ifstream in(path);
    if (!in) throw unavailable_error("block table not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Cube c = decode_cube_text(ss.str());
    if (c.n != ki.n)
        throw structural_error(std::string(ki.name) + ": table has side " +
                               std::to_string(c.n));
    // the dot pattern must reproduce the canonical mask exactly
    Mask want = ki.kind == 0   ? full_mask(ki.n)
                : ki.kind == 1 ? distinct_mask(ki.n)
                               : j_mask(ki.n, 0);
    for (int kk = 0; kk < c.n; ++kk)
        if ((c.mask[kk] != want[kk]).any())
            throw structural_error(std::string(ki.name) + ": hole pattern mismatch in layer " +
                                   std::to_string(kk + 1));
    VerificationReport r = verify_consecutive(c);
    if (!r.accepted || r.line_count != ki.lines)
        throw structural_error(std::string(ki.name) +
                               ": bundled table fails verification: " + r.first_defect);
    memo[k] = c;
    return c;
}

}  // namespace sbc
