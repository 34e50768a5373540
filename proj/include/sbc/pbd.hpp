#pragma once
#include <cstdint>
#include <optional>
#include <string>

#include "sbc/design.hpp"

namespace sbc {

// True when pbd456(v) has a construction route that does not depend on the
// fallback search (direct table, bundled data, or recursion).
bool pbd456_available(int v);

// Seeded randomized backtracking: exact cover of all pairs by {4,5,6}-blocks,
// branching on the tightest uncovered pair. Deterministic per (v, seed).
std::optional<BlockDesign> pbd_backtrack_search(int v, std::uint64_t seed,
                                                std::uint64_t max_nodes);

// Directory used for synthesized-design caching; honors SBC_CACHE_DIR.
std::string pbd_cache_dir();
// Bundled data directory; honors SBC_DATA_DIR, falls back to the source tree.
std::string data_dir();

}  // namespace sbc
