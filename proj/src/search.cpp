#include "sbc/search.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "sbc/errors.hpp"

namespace sbc {

namespace {

struct TargetPool {
    std::set<Int> unused;

    bool take(Int t) {
        auto it = unused.find(t);
        if (it == unused.end()) return false;
        unused.erase(it);
        return true;
    }
    void put(Int t) { unused.insert(t); }
    Int max_unused() const { return unused.empty() ? -1 : *unused.rbegin(); }
};

struct CubeState {
    int n;
    Int start, maxt;
    const SearchProblem* prob;
    std::mt19937_64 rng;
    std::uint64_t nodes = 0;

    // cells
    std::vector<std::array<int, 3>> cell_ijk;
    std::vector<std::array<int, 3>> cell_lines;  // indices into lines
    std::vector<Int> value;                      // -1 = free

    // live lines
    std::vector<std::vector<int>> line_cells;
    std::vector<int> line_free;
    std::vector<Int> line_sum;
    std::vector<char> line_settled;
    int unsettled = 0;

    TargetPool pool;

    SearchStatus dfs();
    SearchStatus settle_then_branch(int line);
    std::vector<Int> value_order(Int cap);
};

std::vector<Int> CubeState::value_order(Int cap) {
    std::vector<Int> vals;
    vals.reserve(cap + 1);
    for (Int v = 0; v <= cap; ++v) vals.push_back(v);
    if (prob->seed != 0) std::shuffle(vals.begin(), vals.end(), rng);
    return vals;
}

SearchStatus CubeState::dfs() {
    if (++nodes > prob->budget) return SearchStatus::BudgetExceeded;
    if (unsettled == 0) return SearchStatus::Found;
    int best = -1;
    for (int li = 0; li < (int)line_cells.size(); ++li)
        if (!line_settled[li] && (best < 0 || line_free[li] < line_free[best])) best = li;
    return settle_then_branch(best);
}

SearchStatus CubeState::settle_then_branch(int li) {
    if (line_free[li] == 0) {
        if (!pool.take(line_sum[li])) return SearchStatus::ExhaustedNone;
        line_settled[li] = 1;
        --unsettled;
        SearchStatus r = dfs();
        ++unsettled;
        line_settled[li] = 0;
        pool.put(line_sum[li]);
        return r;
    }
    // choose the first free cell on the line
    int cell = -1;
    for (int c : line_cells[li])
        if (value[c] < 0) {
            cell = c;
            break;
        }
    // upper bound for the entry over all three of its lines
    Int cap = maxt - start;
    if (prob->prunes.entry_caps) {
        for (int l2 : cell_lines[cell]) {
            Int rem = pool.max_unused();
            if (rem < 0) return SearchStatus::ExhaustedNone;
            cap = std::min(cap, rem - line_sum[l2]);
        }
        if (cap < 0) return SearchStatus::ExhaustedNone;
    }
    std::vector<Int> vals;
    if (line_free[li] == 1 && prob->prunes.last_cell_targets) {
        // the value decides this line's sum: range over unused targets
        for (Int t : pool.unused) {
            Int v = t - line_sum[li];
            if (v >= 0 && v <= cap) vals.push_back(v);
        }
        if (prob->seed != 0) std::shuffle(vals.begin(), vals.end(), rng);
    } else {
        vals = value_order(cap);
    }
    bool budget_hit = false;
    for (Int v : vals) {
        value[cell] = v;
        for (int l2 : cell_lines[cell]) {
            line_sum[l2] += v;
            --line_free[l2];
        }
        SearchStatus r = dfs();
        if (r == SearchStatus::Found) return r;  // keep the assignment
        for (int l2 : cell_lines[cell]) {
            line_sum[l2] -= v;
            ++line_free[l2];
        }
        value[cell] = -1;
        if (r == SearchStatus::BudgetExceeded) {
            budget_hit = true;
            break;
        }
    }
    return budget_hit ? SearchStatus::BudgetExceeded : SearchStatus::ExhaustedNone;
}

}  // namespace

CubeSearchResult search_cube(const SearchProblem& p) {
    const int n = (int)p.mask.size();
    if (n <= 0) throw argument_error("empty mask");
    if (p.budget == 0) throw argument_error("budget must be positive");
    CubeState st;
    st.n = n;
    st.start = p.start;
    st.prob = &p;
    st.rng.seed(p.seed);

    // line ids: axis*(n*n) + a*n + b
    std::vector<int> line_index(3 * n * n, -1);
    auto line_of = [&](int axis, int a, int b) { return axis * n * n + a * n + b; };
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!p.mask[k](i, j)) continue;
                int cid = (int)st.cell_ijk.size();
                st.cell_ijk.push_back({i, j, k});
                st.value.push_back(-1);
                std::array<int, 3> ls{line_of(0, j, k), line_of(1, i, k), line_of(2, i, j)};
                std::array<int, 3> mapped{};
                for (int a = 0; a < 3; ++a) {
                    int& idx = line_index[ls[a]];
                    if (idx < 0) {
                        idx = (int)st.line_cells.size();
                        st.line_cells.emplace_back();
                    }
                    st.line_cells[idx].push_back(cid);
                    mapped[a] = idx;
                }
                st.cell_lines.push_back(mapped);
            }
    if (st.cell_ijk.empty()) throw argument_error("mask has no live cell");
    const long L = (long)st.line_cells.size();
    st.maxt = p.start + L - 1;
    st.line_free.resize(L);
    st.line_sum.assign(L, 0);
    st.line_settled.assign(L, 0);
    for (long li = 0; li < L; ++li) st.line_free[li] = (int)st.line_cells[li].size();
    st.unsettled = (int)L;
    for (Int t = p.start; t <= st.maxt; ++t) st.pool.put(t);

    CubeSearchResult res;
    res.status = st.dfs();
    res.nodes = st.nodes;
    if (res.status == SearchStatus::Found) {
        Cube c(n, p.start);
        c.mask = p.mask;
        for (size_t cid = 0; cid < st.cell_ijk.size(); ++cid) {
            auto [i, j, k] = st.cell_ijk[cid];
            c.layer[k](i, j) = st.value[cid];
        }
        // hold the Found invariant: the witness must verify
        VerificationReport r = verify_consecutive(c);
        if (!r.accepted) throw structural_error("search produced a non-verifying witness");
        res.cube = std::move(c);
    }
    return res;
}

namespace {

struct SbtsState {
    int v;
    Int maxt;
    std::uint64_t budget, nodes = 0;
    std::mt19937_64 rng;
    bool shuffle;

    std::vector<std::array<int, 3>> triples;
    std::vector<std::array<int, 3>> triple_pairs;  // pair ids
    std::vector<Int> weight;                       // -1 = free
    std::vector<std::vector<int>> pair_triples;
    std::vector<int> pair_free;
    std::vector<Int> pair_sum;
    std::vector<char> pair_settled;
    int unsettled;
    TargetPool pool;

    SearchStatus dfs();
};

SearchStatus SbtsState::dfs() {
    if (++nodes > budget) return SearchStatus::BudgetExceeded;
    if (unsettled == 0) return SearchStatus::Found;
    int best = -1;
    for (int pi = 0; pi < (int)pair_triples.size(); ++pi)
        if (!pair_settled[pi] && (best < 0 || pair_free[pi] < pair_free[best])) best = pi;
    const int pi = best;
    if (pair_free[pi] == 0) {
        if (!pool.take(pair_sum[pi])) return SearchStatus::ExhaustedNone;
        pair_settled[pi] = 1;
        --unsettled;
        SearchStatus r = dfs();
        ++unsettled;
        pair_settled[pi] = 0;
        pool.put(pair_sum[pi]);
        return r;
    }
    int tri = -1;
    for (int t : pair_triples[pi])
        if (weight[t] < 0) {
            tri = t;
            break;
        }
    Int cap = maxt;
    for (int p2 : triple_pairs[tri]) {
        Int rem = pool.max_unused();
        if (rem < 0) return SearchStatus::ExhaustedNone;
        cap = std::min(cap, rem - pair_sum[p2]);
    }
    if (cap < 0) return SearchStatus::ExhaustedNone;
    std::vector<Int> vals;
    if (pair_free[pi] == 1) {
        for (Int t : pool.unused) {
            Int w = t - pair_sum[pi];
            if (w >= 0 && w <= cap) vals.push_back(w);
        }
    } else {
        vals.reserve(cap + 1);
        for (Int w = 0; w <= cap; ++w) vals.push_back(w);
    }
    if (shuffle) std::shuffle(vals.begin(), vals.end(), rng);
    bool budget_hit = false;
    for (Int w : vals) {
        weight[tri] = w;
        for (int p2 : triple_pairs[tri]) {
            pair_sum[p2] += w;
            --pair_free[p2];
        }
        SearchStatus r = dfs();
        if (r == SearchStatus::Found) return r;  // keep the assignment
        for (int p2 : triple_pairs[tri]) {
            pair_sum[p2] -= w;
            ++pair_free[p2];
        }
        weight[tri] = -1;
        if (r == SearchStatus::BudgetExceeded) {
            budget_hit = true;
            break;
        }
    }
    return budget_hit ? SearchStatus::BudgetExceeded : SearchStatus::ExhaustedNone;
}

}  // namespace

SbtsSearchResult search_sbts(int v, std::uint64_t budget, std::uint64_t seed) {
    if (v < 3) throw argument_error("v must be >= 3");
    SbtsState st;
    st.v = v;
    st.budget = budget;
    st.rng.seed(seed);
    st.shuffle = seed != 0;
    std::vector<std::vector<int>> pair_id(v, std::vector<int>(v, -1));
    int np = 0;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j) pair_id[i][j] = np++;
    st.pair_triples.resize(np);
    st.pair_free.assign(np, 0);
    st.pair_sum.assign(np, 0);
    st.pair_settled.assign(np, 0);
    st.unsettled = np;
    st.maxt = np - 1;
    for (Int t = 0; t < np; ++t) st.pool.put(t);
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
            for (int c = b + 1; c < v; ++c) {
                int tid = (int)st.triples.size();
                st.triples.push_back({a, b, c});
                st.weight.push_back(-1);
                std::array<int, 3> ps{pair_id[a][b], pair_id[a][c], pair_id[b][c]};
                st.triple_pairs.push_back(ps);
                for (int p : ps) {
                    st.pair_triples[p].push_back(tid);
                    ++st.pair_free[p];
                }
            }
    SbtsSearchResult res;
    res.status = st.dfs();
    res.nodes = st.nodes;
    if (res.status == SearchStatus::Found) {
        SbtsWeights w;
        w.v = v;
        for (size_t t = 0; t < st.triples.size(); ++t)
            if (st.weight[t] > 0)
                w.set(st.triples[t][0], st.triples[t][1], st.triples[t][2], st.weight[t]);
        SbtsReport rep = sbts_pair_sums(w);
        if (!rep.accepted) throw structural_error("sbts search produced a bad witness");
        res.weights = std::move(w);
    }
    return res;
}

}  // namespace sbc
