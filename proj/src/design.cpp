#include "sbc/design.hpp"

#include <algorithm>
#include <json.hpp>

#include "gf.hpp"
#include "sbc/errors.hpp"

namespace sbc {

using detail::gf;

BlockDesign::BlockDesign(int v_) : v(v_) {
    names.reserve(v_);
    for (int i = 1; i <= v_; ++i) names.push_back(std::to_string(i));
}

PbdReport verify_pbd(const BlockDesign& d, const std::set<int>* K) {
    PbdReport r;
    const int v = d.v;
    if (v <= 0 || (int)d.names.size() != v) {
        r.detail = "bad point set";
        return r;
    }
    std::vector<char> seen((size_t)v * v, 0);
    long covered = 0;
    for (size_t bi = 0; bi < d.blocks.size(); ++bi) {
        const auto& b = d.blocks[bi];
        if (K && !K->count((int)b.size())) {
            r.detail = "block " + std::to_string(bi) + " has size " + std::to_string(b.size());
            return r;
        }
        for (size_t s = 0; s < b.size(); ++s) {
            if (b[s] < 0 || b[s] >= v) {
                r.detail = "block " + std::to_string(bi) + ": point out of range";
                return r;
            }
            for (size_t t = s + 1; t < b.size(); ++t) {
                int x = b[s], y = b[t];
                if (x == y) {
                    r.detail = "block " + std::to_string(bi) + ": repeated point";
                    return r;
                }
                size_t idx = (size_t)std::min(x, y) * v + std::max(x, y);
                if (seen[idx]) {
                    r.detail = "pair {" + d.name_of(std::min(x, y)) + "," +
                               d.name_of(std::max(x, y)) + "} covered twice";
                    return r;
                }
                seen[idx] = 1;
                ++covered;
            }
        }
    }
    if (covered != (long)v * (v - 1) / 2) {
        r.detail = "covered " + std::to_string(covered) + " of " +
                   std::to_string((long)v * (v - 1) / 2) + " pairs";
        return r;
    }
    for (size_t ci = 0; ci < d.classes.size(); ++ci) {
        std::vector<char> hit(v, 0);
        for (int bi : d.classes[ci]) {
            if (bi < 0 || bi >= (int)d.blocks.size()) {
                r.detail = "class " + std::to_string(ci) + ": bad block index";
                return r;
            }
            for (int x : d.blocks[bi]) {
                if (hit[x]) {
                    r.detail = "class " + std::to_string(ci) + ": point " + d.name_of(x) +
                               " repeated";
                    return r;
                }
                hit[x] = 1;
            }
        }
        for (int x = 0; x < v; ++x)
            if (!hit[x]) {
                r.detail = "class " + std::to_string(ci) + ": point " + d.name_of(x) +
                           " uncovered";
                return r;
            }
    }
    r.accepted = true;
    return r;
}

BlockDesign affine_plane(int q) {
    if (!detail::is_prime_power(q)) throw argument_error("affine plane order must be a prime power");
    const auto& F = gf(q);
    BlockDesign d(q * q);  // point (x, y) -> x*q + y
    for (int a = 0; a < q; ++a) {
        std::vector<int> cls;
        for (int b = 0; b < q; ++b) {
            std::vector<int> blk;
            for (int x = 0; x < q; ++x) blk.push_back(x * q + F.add(F.mul(a, x), b));
            std::sort(blk.begin(), blk.end());
            d.blocks.push_back(blk);
            cls.push_back((int)d.blocks.size() - 1);
        }
        d.classes.push_back(cls);
    }
    std::vector<int> cls;
    for (int c = 0; c < q; ++c) {
        std::vector<int> blk;
        for (int y = 0; y < q; ++y) blk.push_back(c * q + y);
        d.blocks.push_back(blk);
        cls.push_back((int)d.blocks.size() - 1);
    }
    d.classes.push_back(cls);
    return d;
}

BlockDesign projective_plane(int q) {
    BlockDesign a = affine_plane(q);
    BlockDesign d(q * q + q + 1);
    for (int i = 0; i < q + 1; ++i) d.names[q * q + i] = "inf" + std::to_string(i + 1);
    std::vector<int> infline;
    for (size_t ci = 0; ci < a.classes.size(); ++ci) {
        int infp = q * q + (int)ci;
        infline.push_back(infp);
        for (int bi : a.classes[ci]) {
            std::vector<int> blk = a.blocks[bi];
            blk.push_back(infp);
            d.blocks.push_back(blk);
        }
    }
    d.blocks.push_back(infline);
    return d;
}

BlockDesign sts7() {
    BlockDesign d(7);
    for (int i = 0; i < 7; ++i) d.names[i] = std::to_string(i);
    for (int x = 0; x < 7; ++x) {
        std::vector<int> blk{x, (x + 1) % 7, (x + 3) % 7};
        std::sort(blk.begin(), blk.end());
        d.blocks.push_back(blk);
    }
    return d;
}

int mols_bound(int m) {
    if (m < 2) return 0;
    int b = m;
    for (const auto& f : detail::factorize(m)) b = std::min(b, f.pe - 1);
    return b;
}

namespace {

std::vector<LatinSquare> mols_prime_power(int q, int k) {
    const auto& F = gf(q);
    std::vector<LatinSquare> out;
    for (int a = 1; a <= k; ++a) {
        LatinSquare L{q, Eigen::MatrixXi(q, q)};
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) L.cells(i, j) = F.add(F.mul(a, i), j);
        out.push_back(std::move(L));
    }
    return out;
}

std::vector<LatinSquare> mols_product(const std::vector<LatinSquare>& A,
                                      const std::vector<LatinSquare>& B) {
    const int k = (int)std::min(A.size(), B.size());
    const int m1 = A[0].n, m2 = B[0].n;
    std::vector<LatinSquare> out;
    for (int t = 0; t < k; ++t) {
        LatinSquare L{m1 * m2, Eigen::MatrixXi(m1 * m2, m1 * m2)};
        for (int i1 = 0; i1 < m1; ++i1)
            for (int i2 = 0; i2 < m2; ++i2)
                for (int j1 = 0; j1 < m1; ++j1)
                    for (int j2 = 0; j2 < m2; ++j2)
                        L.cells(i1 * m2 + i2, j1 * m2 + j2) =
                            A[t].cells(i1, j1) * m2 + B[t].cells(i2, j2);
        out.push_back(std::move(L));
    }
    return out;
}

}  // namespace

std::vector<LatinSquare> mols(int m, int k) {
    const int bound = mols_bound(m);
    if (k < 0) k = bound;
    if (k == 0) return {};
    if (k > bound)
        throw unavailable_error("requested " + std::to_string(k) + " MOLS of order " +
                                std::to_string(m) + ", construction provides " +
                                std::to_string(bound));
    auto factors = detail::factorize(m);
    std::vector<LatinSquare> cur = mols_prime_power(factors[0].pe, k);
    for (size_t i = 1; i < factors.size(); ++i)
        cur = mols_product(cur, mols_prime_power(factors[i].pe, k));
    return cur;
}

BlockDesign transversal_design(int k, int m) {
    if (k < 3) throw argument_error("transversal design needs k >= 3");
    std::vector<LatinSquare> Ls = mols(m, k - 2);  // throws when unavailable
    BlockDesign d(k * m);
    for (int r = 0; r < k; ++r) {
        for (int x = 0; x < m; ++x) d.names[r * m + x] = std::to_string(r + 1) + "." + std::to_string(x + 1);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::vector<int> blk{i, m + j};
            for (int t = 0; t < k - 2; ++t) blk.push_back((t + 2) * m + Ls[t].cells(i, j));
            d.blocks.push_back(blk);
        }
    return d;
}

BlockDesign delete_point(const BlockDesign& d, int x) {
    if (x < 0 || x >= d.v) throw argument_error("point out of range");
    PbdReport pr = verify_pbd(d);
    if (!pr.accepted) throw precondition_error("delete_point: input is not a PBD: " + pr.detail);
    BlockDesign out;
    out.v = d.v - 1;
    std::vector<int> remap(d.v, -1);
    int idx = 0;
    for (int p = 0; p < d.v; ++p)
        if (p != x) {
            remap[p] = idx++;
            out.names.push_back(d.names[p]);
        }
    std::vector<int> aclass;
    for (const auto& b : d.blocks) {
        std::vector<int> nb;
        bool had = false;
        for (int p : b) {
            if (p == x)
                had = true;
            else
                nb.push_back(remap[p]);
        }
        if (nb.size() < 2)
            throw precondition_error("delete_point: block shrinks below two points");
        std::sort(nb.begin(), nb.end());
        out.blocks.push_back(nb);
        if (had) aclass.push_back((int)out.blocks.size() - 1);
    }
    out.classes.push_back(aclass);
    PbdReport check = verify_pbd(out);
    if (!check.accepted)
        throw precondition_error("delete_point: result fails verification: " + check.detail);
    return out;
}

Int SbtsWeights::get(int a, int b, int c) const {
    std::array<int, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    auto it = w.find(key);
    return it == w.end() ? 0 : it->second;
}

void SbtsWeights::set(int a, int b, int c, Int val) {
    std::array<int, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    if (key[0] == key[1] || key[1] == key[2]) throw argument_error("not a 3-subset");
    if (key[0] < 0 || key[2] >= v) throw argument_error("point out of range");
    if (val < 0) throw argument_error("negative weight");
    if (val == 0)
        w.erase(key);
    else
        w[key] = val;
}

SbtsReport sbts_pair_sums(const SbtsWeights& wts) {
    if (wts.v < 3) throw argument_error("v must be >= 3");
    SbtsReport r;
    for (int i = 0; i < wts.v; ++i)
        for (int j = i + 1; j < wts.v; ++j) r.pair_sums[{i, j}] = 0;
    for (const auto& [key, val] : wts.w) {
        if (val < 0 || key[0] < 0 || key[2] >= wts.v || key[0] == key[1] || key[1] == key[2]) {
            r.detail = "malformed weight entry";
            return r;
        }
        r.pair_sums[{key[0], key[1]}] += val;
        r.pair_sums[{key[0], key[2]}] += val;
        r.pair_sums[{key[1], key[2]}] += val;
    }
    std::vector<Int> sums;
    sums.reserve(r.pair_sums.size());
    for (const auto& [p, s] : r.pair_sums) sums.push_back(s);
    std::sort(sums.begin(), sums.end());
    r.accepted = true;
    for (size_t i = 0; i < sums.size(); ++i)
        if (sums[i] != (Int)i) {
            r.accepted = false;
            r.detail = "pair sums are not {0.." + std::to_string(sums.size() - 1) + "}";
            break;
        }
    return r;
}

using json = nlohmann::ordered_json;

std::string encode_design(const BlockDesign& d) {
    json j;
    j["v"] = d.v;
    j["points"] = d.names;
    json blocks = json::array();
    for (const auto& b : d.blocks) {
        json blk = json::array();
        for (int p : b) blk.push_back(d.names[p]);
        blocks.push_back(blk);
    }
    j["blocks"] = blocks;
    if (!d.classes.empty()) j["classes"] = d.classes;
    return j.dump(1) + "\n";
}

BlockDesign decode_design(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("design document: ") + e.what());
    }
    if (!j.is_object() || !j.contains("v") || !j["v"].is_number_integer())
        throw parse_error("design document: missing integer field \"v\"");
    BlockDesign d;
    d.v = j["v"].get<int>();
    if (d.v <= 0) throw parse_error("field \"v\": must be positive");
    std::map<std::string, int> index;
    if (j.contains("points")) {
        if (!j["points"].is_array() || (int)j["points"].size() != d.v)
            throw parse_error("field \"points\": expected " + std::to_string(d.v) + " names");
        for (const auto& p : j["points"]) d.names.push_back(p.get<std::string>());
    } else {
        for (int i = 1; i <= d.v; ++i) d.names.push_back(std::to_string(i));
    }
    for (int i = 0; i < d.v; ++i) {
        if (index.count(d.names[i])) throw parse_error("field \"points\": duplicate name");
        index[d.names[i]] = i;
    }
    if (!j.contains("blocks") || !j["blocks"].is_array())
        throw parse_error("design document: missing field \"blocks\"");
    for (const auto& blk : j["blocks"]) {
        std::vector<int> b;
        for (const auto& p : blk) {
            std::string name = p.is_string() ? p.get<std::string>() : p.dump();
            auto it = index.find(name);
            if (it == index.end()) throw parse_error("blocks: unknown point \"" + name + "\"");
            b.push_back(it->second);
        }
        std::sort(b.begin(), b.end());
        d.blocks.push_back(b);
    }
    if (j.contains("classes"))
        for (const auto& cls : j["classes"]) {
            std::vector<int> c;
            for (const auto& bi : cls) c.push_back(bi.get<int>());
            d.classes.push_back(c);
        }
    return d;
}

}  // namespace sbc
