#pragma once
#include <cstdint>
#include <optional>

#include "sbc/cube.hpp"
#include "sbc/design.hpp"

namespace sbc {

enum class SearchStatus { Found, ExhaustedNone, BudgetExceeded };

// Pruning toggles exist for the soundness regression: disabling a rule may
// only slow the search down, never flip ExhaustedNone to Found.
struct PruneFlags {
    bool entry_caps = true;        // entry <= max remaining target - line partial
    bool last_cell_targets = true; // a line's final cell ranges over unused targets
};

struct SearchProblem {
    Mask mask;
    Int start = 0;
    std::uint64_t budget = 50'000'000;
    std::uint64_t seed = 0;  // 0 = ascending value order
    PruneFlags prunes;
};

struct CubeSearchResult {
    SearchStatus status = SearchStatus::ExhaustedNone;
    std::optional<Cube> cube;
    std::uint64_t nodes = 0;
};

// Depth-first search over masked cells: always extends the live line with
// the fewest free cells. Found witnesses verify; ExhaustedNone is a proof of
// nonexistence. Deterministic in (mask, start, seed, budget).
CubeSearchResult search_cube(const SearchProblem& p);

struct SbtsSearchResult {
    SearchStatus status = SearchStatus::ExhaustedNone;
    std::optional<SbtsWeights> weights;
    std::uint64_t nodes = 0;
};

SbtsSearchResult search_sbts(int v, std::uint64_t budget = 50'000'000,
                             std::uint64_t seed = 0);

}  // namespace sbc
