#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "gf.hpp"
#include "sbc/design.hpp"
#include "sbc/errors.hpp"
#include "sbc/pbd.hpp"

#ifndef SBC_DATA_DIR_DEFAULT
#define SBC_DATA_DIR_DEFAULT ""
#endif

namespace sbc {

namespace fs = std::filesystem;

std::string data_dir() {
    if (const char* e = std::getenv("SBC_DATA_DIR")) return e;
    return SBC_DATA_DIR_DEFAULT;
}

std::string pbd_cache_dir() {
    if (const char* e = std::getenv("SBC_CACHE_DIR")) return e;
    if (const char* x = std::getenv("XDG_CACHE_HOME")) return std::string(x) + "/sbcube";
    if (const char* h = std::getenv("HOME")) return std::string(h) + "/.cache/sbcube";
    return ".sbcube-cache";
}

namespace {

const std::set<int> kRefused{7, 8, 9, 10, 11, 12, 14, 15, 18, 19, 23};
const std::set<int> kSizes456{4, 5, 6};

BlockDesign checked(BlockDesign d, const std::string& provenance) {
    PbdReport r = verify_pbd(d, &kSizes456);
    if (!r.accepted)
        throw precondition_error("pbd456 construction '" + provenance +
                                 "' failed verification: " + r.detail);
    return d;
}

// ---- point deletion on raw block lists (keeps every block >= 4) ----
BlockDesign delete_set(const BlockDesign& d, const std::vector<int>& pts) {
    std::vector<char> del(d.v, 0);
    for (int p : pts) del[p] = 1;
    BlockDesign out;
    out.v = d.v - (int)pts.size();
    std::vector<int> remap(d.v, -1);
    int idx = 0;
    for (int p = 0; p < d.v; ++p)
        if (!del[p]) {
            remap[p] = idx++;
            out.names.push_back(d.names[p]);
        }
    for (const auto& b : d.blocks) {
        std::vector<int> nb;
        for (int p : b)
            if (!del[p]) nb.push_back(remap[p]);
        if ((int)nb.size() >= 2) {
            std::sort(nb.begin(), nb.end());
            out.blocks.push_back(nb);
        }
    }
    return out;
}

// AG(2,q) with the first parallel class extended by one new point.
BlockDesign extended_affine(int q) {
    BlockDesign a = affine_plane(q);
    BlockDesign d(q * q + 1);
    d.names[q * q] = "inf1";
    for (size_t ci = 0; ci < a.classes.size(); ++ci)
        for (int bi : a.classes[ci]) {
            std::vector<int> blk = a.blocks[bi];
            if (ci == 0) blk.push_back(q * q);
            d.blocks.push_back(blk);
        }
    return d;
}

// The conic {(x, x^2)} plus the vertical direction: a (q+1)-arc of PG(2,q).
std::vector<int> conic_arc(int q, int k) {
    const auto& F = detail::gf(q);
    std::vector<int> arc;
    for (int x = 0; x < q; ++x) arc.push_back(x * q + F.mul(x, x));
    arc.push_back(q * q + q);  // infinite point of the vertical class
    std::sort(arc.begin(), arc.end());
    arc.resize(k);
    return arc;
}

// PG(2,7) minus a triangle of lines: a PBD(36,{5,6}). Deleting a further
// cap (no block drops below four points) reaches 35..32.
BlockDesign pg7_triangle(int k_extra) {
    BlockDesign p = projective_plane(7);
    auto meet = [&](size_t a, size_t b) {
        std::vector<int> out;
        std::set_intersection(p.blocks[a].begin(), p.blocks[a].end(), p.blocks[b].begin(),
                              p.blocks[b].end(), std::back_inserter(out));
        return out;
    };
    size_t tri[3] = {0, 0, 0};
    bool found = false;
    for (size_t a = 0; a < p.blocks.size() && !found; ++a)
        for (size_t b = a + 1; b < p.blocks.size() && !found; ++b)
            for (size_t c = b + 1; c < p.blocks.size() && !found; ++c) {
                std::set<int> pts;
                for (auto& q : {meet(a, b), meet(a, c), meet(b, c)})
                    for (int x : q) pts.insert(x);
                if (pts.size() == 3) {
                    tri[0] = a;
                    tri[1] = b;
                    tri[2] = c;
                    found = true;
                }
            }
    std::set<int> del;
    for (size_t t : tri) del.insert(p.blocks[t].begin(), p.blocks[t].end());
    BlockDesign base = delete_set(p, std::vector<int>(del.begin(), del.end()));
    if (k_extra == 0) return base;
    // deterministic first-found cap of size k_extra
    std::vector<std::vector<int>> blocks_of(base.v);
    for (size_t bi = 0; bi < base.blocks.size(); ++bi)
        for (int x : base.blocks[bi]) blocks_of[x].push_back((int)bi);
    std::vector<int> slack;
    for (const auto& b : base.blocks) slack.push_back((int)b.size() - 4);
    std::vector<int> cap;
    std::function<bool(int)> dfs = [&](int from) {
        if ((int)cap.size() == k_extra) return true;
        for (int pt = from; pt < base.v; ++pt) {
            bool ok = true;
            for (int bi : blocks_of[pt])
                if (slack[bi] == 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (int bi : blocks_of[pt]) --slack[bi];
            cap.push_back(pt);
            if (dfs(pt + 1)) return true;
            cap.pop_back();
            for (int bi : blocks_of[pt]) ++slack[bi];
        }
        return false;
    };
    if (!dfs(0)) throw unavailable_error("pg7 surgery: no deletable cap");
    return delete_set(base, cap);
}

std::string bundled_path(int v) {
    return data_dir() + "/pbd/v" + std::to_string(v) + ".json";
}

std::optional<BlockDesign> load_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        BlockDesign d = decode_design(ss.str());
        if (!verify_pbd(d, &kSizes456).accepted) return std::nullopt;
        return d;
    } catch (const parse_error&) {
        return std::nullopt;
    }
}

void cache_store(int v, const BlockDesign& d) {
    std::error_code ec;
    fs::create_directories(pbd_cache_dir(), ec);
    if (ec) return;
    fs::path final = fs::path(pbd_cache_dir()) / ("pbd456_v" + std::to_string(v) + ".json");
    fs::path tmp = final;
    tmp += ".tmp" + std::to_string(::getpid());
    std::ofstream out(tmp);
    if (!out) return;
    out << encode_design(d);
    out.close();
    fs::rename(tmp, final, ec);  // atomic publish
    if (ec) fs::remove(tmp, ec);
}

std::optional<BlockDesign> cache_load(int v) {
    fs::path p = fs::path(pbd_cache_dir()) / ("pbd456_v" + std::to_string(v) + ".json");
    return load_design_file(p.string());
}

// ---- recursion over truncated transversal designs ----
struct TdRoute {
    int k;        // groups in the base TD (5 or 6)
    int m;        // group size
    int t1, t2;   // truncated group sizes (t2 < 0: single truncation)
    bool adjoin;  // one extra point shared by every group fill
};

bool avail(int v);

bool fill_ok(int t, bool adjoin) {
    if (adjoin) return t == 0 || (t >= 3 && avail(t + 1));
    return t == 0 || t == 1 || avail(t);
}

std::optional<TdRoute> td_route(int v) {
    for (int k : {5, 6})
        for (int adjoin = 0; adjoin <= 1; ++adjoin)
            for (int m = 4; (k - 1) * m <= v; ++m) {
                int t = v - (k - 1) * m - adjoin;
                if (t < 0 || t > m) continue;
                if (mols_bound(m) < k - 2) continue;
                if (!avail(adjoin ? m + 1 : m)) continue;
                if (!fill_ok(t, adjoin)) continue;
                return TdRoute{k, m, t, -1, (bool)adjoin};
            }
    for (int adjoin = 0; adjoin <= 1; ++adjoin)
        for (int m = 4; 4 * m <= v; ++m) {
            if (mols_bound(m) < 4) continue;
            if (!avail(adjoin ? m + 1 : m)) continue;
            int rest = v - 4 * m - adjoin;
            if (rest < 0 || rest > 2 * m) continue;
            for (int t1 = std::min(m, rest); 2 * t1 >= rest; --t1) {
                int t2 = rest - t1;
                if (fill_ok(t1, adjoin) && fill_ok(t2, adjoin))
                    return TdRoute{6, m, t1, t2, (bool)adjoin};
            }
        }
    return std::nullopt;
}

BlockDesign build_td(int v, const TdRoute& r) {
    std::vector<int> trunc;
    if (r.t2 >= 0) {
        trunc = {r.t1, r.t2};
    } else {
        trunc = {r.t1};
    }
    const int nfull = r.k - (int)trunc.size();
    BlockDesign td = transversal_design(r.k, r.m);
    std::map<int, int> remap;
    for (int p = 0; p < nfull * r.m; ++p) remap[p] = p;
    int off = nfull * r.m;
    for (size_t gi = 0; gi < trunc.size(); ++gi)
        for (int x = 0; x < trunc[gi]; ++x) remap[(nfull + (int)gi) * r.m + x] = off++;
    BlockDesign out(v);
    for (const auto& b : td.blocks) {
        std::vector<int> nb;
        for (int p : b) {
            auto it = remap.find(p);
            if (it != remap.end()) nb.push_back(it->second);
        }
        if (nb.size() >= 2) {
            std::sort(nb.begin(), nb.end());
            out.blocks.push_back(nb);
        }
    }
    const int inf = off;  // == v-1 when adjoining
    std::vector<std::vector<int>> groups;
    for (int g = 0; g < nfull; ++g) {
        std::vector<int> gr;
        for (int x = 0; x < r.m; ++x) gr.push_back(g * r.m + x);
        groups.push_back(gr);
    }
    int o = nfull * r.m;
    for (int t : trunc) {
        std::vector<int> gr;
        for (int x = 0; x < t; ++x) gr.push_back(o + x);
        o += t;
        groups.push_back(gr);
    }
    for (const auto& g : groups) {
        std::vector<int> pts = g;
        if (r.adjoin) pts.push_back(inf);
        if (pts.size() <= 1) continue;
        BlockDesign sub = pbd456((int)pts.size());
        for (const auto& sb : sub.blocks) {
            std::vector<int> nb;
            for (int i : sb) nb.push_back(pts[i]);
            std::sort(nb.begin(), nb.end());
            out.blocks.push_back(nb);
        }
    }
    return out;
}

// availability = reachable without running the fallback search
std::map<int, int> g_avail;  // 1 yes, -1 no
std::recursive_mutex g_mu;

bool avail_direct(int v) {
    static const std::set<int> direct{4, 5, 6, 13, 16, 17, 20, 21, 24, 25,
                                      26, 27, 28, 29, 30, 31, 32, 33, 34, 35, 36};
    if (direct.count(v)) return true;
    if (v == 22) return (bool)load_design_file(bundled_path(v));
    return false;
}

bool avail(int v) {
    if (v < 4 || kRefused.count(v)) return false;
    std::lock_guard<std::recursive_mutex> lock(g_mu);
    auto it = g_avail.find(v);
    if (it != g_avail.end()) return it->second > 0;
    g_avail[v] = -1;  // guard against cycles while probing
    bool ok = avail_direct(v) || (bool)load_design_file(bundled_path(v)) ||
              (bool)td_route(v);
    g_avail[v] = ok ? 1 : -1;
    return ok;
}

BlockDesign construct_direct(int v) {
    switch (v) {
        case 4:
        case 5:
        case 6: {
            BlockDesign d(v);
            std::vector<int> all(v);
            for (int i = 0; i < v; ++i) all[i] = i;
            d.blocks.push_back(all);
            d.provenance = "single block";
            return d;
        }
        case 13: {
            BlockDesign d = projective_plane(3);
            d.provenance = "projective_plane(3)";
            return d;
        }
        case 16: {
            BlockDesign d = affine_plane(4);
            d.provenance = "affine_plane(4)";
            return d;
        }
        case 17: {
            BlockDesign d = extended_affine(4);
            d.provenance = "affine_plane(4) + extended class";
            return d;
        }
        case 20: {
            BlockDesign d = delete_point(projective_plane(4), 20);
            d.provenance = "projective_plane(4) - point";
            return d;
        }
        case 21: {
            BlockDesign d = projective_plane(4);
            d.provenance = "projective_plane(4)";
            return d;
        }
        case 24: {
            BlockDesign d = delete_point(affine_plane(5), 24);
            d.provenance = "affine_plane(5) - point";
            return d;
        }
        case 25: {
            BlockDesign d = affine_plane(5);
            d.provenance = "affine_plane(5)";
            return d;
        }
        default:
            break;
    }
    if (26 <= v && v <= 31) {
        BlockDesign d = delete_set(projective_plane(5), conic_arc(5, 31 - v));
        d.provenance = "projective_plane(5) - " + std::to_string(31 - v) + "-arc";
        return d;
    }
    if (32 <= v && v <= 36) {
        BlockDesign d = pg7_triangle(36 - v);
        d.provenance = "projective_plane(7) - line triangle - " + std::to_string(36 - v) +
                       " points";
        return d;
    }
    throw unavailable_error("no direct construction");
}

}  // namespace

bool pbd456_available(int v) { return avail(v); }

BlockDesign pbd456(int v) {
    if (v < 4 || kRefused.count(v))
        throw unavailable_error("no PBD(" + std::to_string(v) +
                                ",{4,5,6}) is available (excluded order)");
    {
        std::lock_guard<std::recursive_mutex> lock(g_mu);
        static std::map<int, BlockDesign> memo;
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;

        BlockDesign result;
        bool have = false;
        if (auto c = cache_load(v)) {
            result = std::move(*c);
            result.provenance = "cache";
            have = true;
        }
        if (!have && avail_direct(v) && v != 22) {
            result = checked(construct_direct(v), "direct");
            have = true;
        }
        if (!have) {
            if (auto b = load_design_file(bundled_path(v))) {
                result = std::move(*b);
                result.provenance = "bundled table";
                have = true;
            }
        }
        if (!have) {
            if (auto r = td_route(v)) {
                std::ostringstream os;
                os << "td(" << r->k << "," << r->m << ") t=" << r->t1;
                if (r->t2 >= 0) os << "+" << r->t2;
                if (r->adjoin) os << " +inf";
                result = checked(build_td(v, *r), os.str());
                result.provenance = os.str();
                have = true;
            }
        }
        if (!have) {
            for (std::uint64_t seed = 0; seed < 64 && !have; ++seed) {
                if (auto s = pbd_backtrack_search(v, seed, 8'000'000)) {
                    result = std::move(*s);
                    result.provenance = "search(seed=" + std::to_string(seed) + ")";
                    have = true;
                }
            }
        }
        if (!have)
            throw unavailable_error("no PBD(" + std::to_string(v) +
                                    ",{4,5,6}) construction route succeeded");
        PbdReport final = verify_pbd(result, &kSizes456);
        if (!final.accepted)
            throw precondition_error("pbd456(" + std::to_string(v) +
                                     "): verification failed: " + final.detail);
        cache_store(v, result);
        memo[v] = result;
        return result;
    }
}

std::optional<BlockDesign> pbd_backtrack_search(int v, std::uint64_t seed,
                                                std::uint64_t max_nodes) {
    if (v < 4) return std::nullopt;
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 12345);
    std::vector<char> cov((size_t)v * v, 0);
    std::vector<int> deg(v, v - 1);
    long remaining = (long)v * (v - 1) / 2;
    std::uint64_t nodes = 0;
    std::vector<std::vector<int>> blocks;

    auto feasible = [](long r) {
        // r expressible as 6a+10b+15c
        static std::map<long, bool> memo;
        auto it = memo.find(r);
        if (it != memo.end()) return it->second;
        bool ok = false;
        for (long c = 0; 15 * c <= r && !ok; ++c)
            for (long b = 0; 15 * c + 10 * b <= r && !ok; ++b)
                if ((r - 15 * c - 10 * b) % 6 == 0) ok = true;
        memo[r] = ok;
        return ok;
    };

    auto cover = [&](const std::vector<int>& b, int dir) {
        for (size_t s = 0; s < b.size(); ++s)
            for (size_t t = s + 1; t < b.size(); ++t) {
                cov[(size_t)b[s] * v + b[t]] = cov[(size_t)b[t] * v + b[s]] = (char)(dir > 0);
                deg[b[s]] -= dir;
                deg[b[t]] -= dir;
                remaining -= dir;
            }
    };

    std::function<bool(std::vector<int>&, int, std::vector<std::vector<int>>&, int)>
        extensions = [&](std::vector<int>& blk, int size,
                         std::vector<std::vector<int>>& out, int cap) -> bool {
        if ((int)blk.size() == size) {
            out.push_back(blk);
            return (int)out.size() < cap;
        }
        if (++nodes > max_nodes) return false;
        std::vector<int> cand;
        for (int p = 0; p < v; ++p) {
            if (std::find(blk.begin(), blk.end(), p) != blk.end()) continue;
            bool ok = true;
            for (int q : blk)
                if (cov[(size_t)p * v + q]) {
                    ok = false;
                    break;
                }
            if (ok) cand.push_back(p);
        }
        std::shuffle(cand.begin(), cand.end(), rng);
        for (int p : cand) {
            blk.push_back(p);
            bool cont = extensions(blk, size, out, cap);
            blk.pop_back();
            if (!cont) return false;
        }
        return true;
    };

    std::function<bool()> dfs = [&]() -> bool {
        if (++nodes > max_nodes) return false;
        if (remaining == 0) return true;
        if (!feasible(remaining)) return false;
        int a = -1;
        for (int p = 0; p < v; ++p)
            if (deg[p] > 0 && (a < 0 || deg[p] < deg[a])) a = p;
        int b = -1;
        for (int q = 0; q < v; ++q)
            if (q != a && !cov[(size_t)a * v + q] && (b < 0 || deg[q] < deg[b])) b = q;
        int sizes[3] = {4, 5, 6};
        std::shuffle(sizes, sizes + 3, rng);
        for (int size : sizes) {
            if (!feasible(remaining - (long)size * (size - 1) / 2)) continue;
            std::vector<std::vector<int>> outs;
            std::vector<int> blk{a, b};
            extensions(blk, size, outs, 40);
            std::shuffle(outs.begin(), outs.end(), rng);
            if (outs.size() > 18) outs.resize(18);
            for (auto& cand : outs) {
                cover(cand, +1);
                bool degok = true;
                for (int p : cand)
                    if (deg[p] == 1 || deg[p] == 2) {
                        degok = false;
                        break;
                    }
                if (degok) {
                    blocks.push_back(cand);
                    if (dfs()) return true;
                    blocks.pop_back();
                }
                cover(cand, -1);
                if (nodes > max_nodes) return false;
            }
        }
        return false;
    };

    if (!dfs()) return std::nullopt;
    BlockDesign d(v);
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
        d.blocks.push_back(b);
    }
    std::sort(d.blocks.begin(), d.blocks.end());
    return d;
}

}  // namespace sbc
