#include "sbc/cube.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "sbc/errors.hpp"

namespace sbc {

Cube::Cube(int n_, Int start_) : n(n_), start(start_) {
    if (n_ <= 0) throw argument_error("cube side must be positive");
    mask = full_mask(n_);
    layer.assign(n_, Grid::Zero(n_, n_));
}

bool Cube::operator==(const Cube& o) const {
    if (n != o.n || start != o.start) return false;
    for (int k = 0; k < n; ++k) {
        if (layer[k] != o.layer[k]) return false;
        if ((mask[k] != o.mask[k]).any()) return false;
    }
    return true;
}

Mask full_mask(int n) {
    return Mask(n, BoolGrid::Constant(n, n, true));
}

Mask distinct_mask(int n) {
    Mask m(n, BoolGrid::Constant(n, n, false));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m[k](i, j) = (i != j && j != k && i != k);
    return m;
}

Mask j_mask(int n, int x) {
    Mask m = distinct_mask(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if ((i == x) + (j == x) + (k == x) >= 2) m[k](i, j) = true;
    return m;
}

long live_cell_count(const Mask& m) {
    long c = 0;
    for (const auto& g : m) c += g.count();
    return c;
}

void check_wellformed(const Cube& c) {
    if (c.n <= 0 || (int)c.layer.size() != c.n || (int)c.mask.size() != c.n)
        throw structural_error("cube shape mismatch");
    if (c.start < 0) throw structural_error("negative start");
    for (int k = 0; k < c.n; ++k) {
        if (c.layer[k].rows() != c.n || c.layer[k].cols() != c.n ||
            c.mask[k].rows() != c.n || c.mask[k].cols() != c.n)
            throw structural_error("layer shape mismatch");
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j) {
                Int v = c.layer[k](i, j);
                if (v < 0) throw structural_error("negative entry at (" +
                    std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                    std::to_string(k + 1) + ")");
                if (v != 0 && !c.mask[k](i, j))
                    throw structural_error("entry on masked-out cell (" +
                        std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                        std::to_string(k + 1) + ")");
            }
    }
}

LineProfile line_profile(const Cube& c) {
    check_wellformed(c);
    const int n = c.n;
    LineProfile p;
    p.xsums = Grid::Zero(n, n);
    p.ysums = Grid::Zero(n, n);
    p.zsums = Grid::Zero(n, n);
    p.xlive = BoolGrid::Constant(n, n, false);
    p.ylive = BoolGrid::Constant(n, n, false);
    p.zlive = BoolGrid::Constant(n, n, false);
    for (int k = 0; k < n; ++k) {
        const Grid& L = c.layer[k];
        p.xsums.col(k) = L.colwise().sum().transpose();  // fix j: sum over i
        p.ysums.col(k) = L.rowwise().sum();              // fix i: sum over j
        p.zsums += L;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (c.mask[k](i, j)) {
                    p.xlive(j, k) = true;
                    p.ylive(i, k) = true;
                    p.zlive(i, j) = true;
                }
    }
    return p;
}

long LineProfile::live_count() const {
    return xlive.count() + ylive.count() + zlive.count();
}

std::vector<Int> LineProfile::live_sums() const {
    std::vector<Int> out;
    out.reserve(live_count());
    const long n = xsums.rows();
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
            if (xlive(a, b)) out.push_back(xsums(a, b));
            if (ylive(a, b)) out.push_back(ysums(a, b));
            if (zlive(a, b)) out.push_back(zsums(a, b));
        }
    return out;
}

VerificationReport verify_consecutive(const Cube& c) {
    LineProfile p = line_profile(c);
    VerificationReport r;
    r.start = c.start;
    r.observed = p.live_sums();
    std::sort(r.observed.begin(), r.observed.end());
    r.line_count = (long)r.observed.size();
    const Int lo = c.start, hi = c.start + r.line_count - 1;
    std::map<Int, long> mult;
    for (Int s : r.observed) ++mult[s];
    Int first_missing = -1, first_dup = -1, first_out = -1;
    long dup_count = 0;
    for (Int t = lo; t <= hi; ++t) {
        auto it = mult.find(t);
        if (it == mult.end() && first_missing < 0) first_missing = t;
        if (it != mult.end() && it->second > 1 && first_dup < 0) {
            first_dup = t;
            dup_count = it->second;
        }
    }
    for (Int s : r.observed)
        if (s < lo || s > hi) {
            first_out = s;
            break;
        }
    r.accepted = (first_missing < 0 && first_dup < 0 && first_out < 0);
    if (!r.accepted) {
        std::ostringstream os;
        bool sep = false;
        if (first_missing >= 0) {
            os << "value " << first_missing << " missing";
            sep = true;
        }
        if (first_dup >= 0) {
            os << (sep ? ", " : "") << "value " << first_dup << " multiplicity "
               << dup_count;
            sep = true;
        }
        if (first_out >= 0)
            os << (sep ? ", " : "") << "value " << first_out << " outside ["
               << lo << "," << hi << "]";
        r.first_defect = os.str();
    }
    return r;
}

Cube add_unit_multiple(const Cube& cube, const Cube& unit, Int a) {
    check_wellformed(cube);
    check_wellformed(unit);
    if (a < 0) throw argument_error("negative multiple");
    if (unit.n != cube.n) throw argument_error("dimension mismatch");
    // unit must be zero outside cube's mask and sum to 1 on every live line
    for (int k = 0; k < cube.n; ++k)
        for (int i = 0; i < cube.n; ++i)
            for (int j = 0; j < cube.n; ++j)
                if (unit.layer[k](i, j) != 0 && !cube.mask[k](i, j))
                    throw precondition_error("unit-invalid: entry outside host mask");
    LineProfile pc = line_profile(cube);
    LineProfile pu = line_profile(unit);
    const int n = cube.n;
    for (int a1 = 0; a1 < n; ++a1)
        for (int b1 = 0; b1 < n; ++b1) {
            if (pc.xlive(a1, b1) && pu.xsums(a1, b1) != 1)
                throw precondition_error("unit-invalid: x-line sum != 1");
            if (pc.ylive(a1, b1) && pu.ysums(a1, b1) != 1)
                throw precondition_error("unit-invalid: y-line sum != 1");
            if (pc.zlive(a1, b1) && pu.zsums(a1, b1) != 1)
                throw precondition_error("unit-invalid: z-line sum != 1");
        }
    Cube out = cube;
    for (int k = 0; k < n; ++k) out.layer[k] += a * unit.layer[k];
    out.start = cube.start + a;
    return out;
}

Cube embed_accumulate(Cube host, const Cube& piece, const AxisMaps& maps) {
    check_wellformed(piece);
    auto check_inj = [&](const std::vector<int>& m) {
        if ((int)m.size() != piece.n) throw argument_error("map arity mismatch");
        std::vector<int> s = m;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw argument_error("non-injective axis map");
        for (int x : m)
            if (x < 0 || x >= host.n) throw argument_error("map index out of range");
    };
    check_inj(maps.row);
    check_inj(maps.col);
    check_inj(maps.lay);
    for (int k = 0; k < piece.n; ++k)
        for (int i = 0; i < piece.n; ++i)
            for (int j = 0; j < piece.n; ++j)
                if (piece.mask[k](i, j))
                    host.layer[maps.lay[k]](maps.row[i], maps.col[j]) +=
                        piece.layer[k](i, j);
    return host;
}

Cube permute_axes(const Cube& c, int perm) {
    static const std::array<std::array<int, 3>, 6> perms = {{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    if (perm < 0 || perm >= 6) throw argument_error("perm in 0..5");
    const auto& pp = perms[perm];
    Cube out(c.n, c.start);
    for (int k = 0; k < c.n; ++k)
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j) {
                int idx[3] = {i, j, k};
                int ni = idx[pp[0]], nj = idx[pp[1]], nk = idx[pp[2]];
                out.layer[nk](ni, nj) = c.layer[k](i, j);
                out.mask[nk](ni, nj) = c.mask[k](i, j);
            }
    return out;
}

}  // namespace sbc
