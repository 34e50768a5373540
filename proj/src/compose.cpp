#include "sbc/compose.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sbc/design.hpp"
#include "sbc/errors.hpp"

namespace sbc {

namespace {

Cube base_for(UnitSpec::Kind kind, int m) {
    switch (kind) {
        case UnitSpec::Kmmm:
            switch (m) {
                case 2: return block_cube(BlockKind::SBC2);
                case 3: return block_cube(BlockKind::SBC3);
                case 4: return inflate(block_cube(BlockKind::SBC2), 2);
                case 5: return block_cube(BlockKind::SBC5);
            }
            break;
        case UnitSpec::K3xK:
            switch (m) {
                case 4: return block_cube(BlockKind::SBHC4_14);
                case 5: return block_cube(BlockKind::SBHC5_15);
                case 6: return block_cube(BlockKind::SBHC6_16);
            }
            break;
        case UnitSpec::J:
            switch (m) {
                case 3: return block_cube(BlockKind::SBHC3_12);
                case 4: return block_cube(BlockKind::SBHC4_13);
            }
            break;
    }
    throw unavailable_error("no library base for piece kind of order " + std::to_string(m));
}

Int kind_lines(UnitSpec::Kind kind, int m) {
    switch (kind) {
        case UnitSpec::Kmmm: return 3L * m * m;
        case UnitSpec::K3xK: return 3L * m * (m - 1);
        case UnitSpec::J: return 3L * m * (m - 1) + 3;
    }
    return 0;
}

}  // namespace

Piece Piece::make(UnitSpec::Kind kind, std::vector<int> block) {
    Piece p;
    const int m = (int)block.size();
    p.kind = kind == UnitSpec::J ? UnitSpec::j(m, 0)
             : kind == UnitSpec::K3xK ? UnitSpec::k3xk(m)
                                      : UnitSpec::kmmm(m);
    p.block = std::move(block);
    p.base = base_for(kind, m);
    p.unit = unit_cube(p.kind);
    p.line_count = kind_lines(kind, m);
    return p;
}

namespace {

// host lines (axis, a, b) covered by a piece
void piece_lines(const Piece& p, std::vector<std::array<int, 3>>& out) {
    const int m = (int)p.block.size();
    for (int axis = 0; axis < 3; ++axis)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                bool covered = p.kind.kind == UnitSpec::Kmmm ? true
                               : a != b ? true
                                        : (p.kind.kind == UnitSpec::J && a == p.kind.x);
                if (covered)
                    out.push_back({axis, p.block[a], p.block[b]});
            }
}

}  // namespace

Cube construction_cons(const Plan& plan) {
    const int n = plan.n;
    if (n < 2) throw argument_error("host side must be >= 2");
    // partition check: every host line claimed exactly once
    std::vector<int> claim(3L * n * n, -1);
    for (size_t pi = 0; pi < plan.pieces.size(); ++pi) {
        const Piece& p = plan.pieces[pi];
        std::vector<std::array<int, 3>> lines;
        piece_lines(p, lines);
        if ((Int)lines.size() != p.line_count)
            throw precondition_error("piece line_count mismatch");
        for (auto [axis, a, b] : lines) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw precondition_error("piece maps outside the host");
            long idx = ((long)axis * n + a) * n + b;
            if (claim[idx] >= 0) {
                std::ostringstream os;
                os << "plan-invalid: host line (axis " << axis << ", " << a + 1 << ","
                   << b + 1 << ") claimed by pieces " << claim[idx] << " and " << pi;
                throw precondition_error(os.str());
            }
            claim[idx] = (int)pi;
        }
    }
    for (long idx = 0; idx < (long)claim.size(); ++idx)
        if (claim[idx] < 0) {
            std::ostringstream os;
            int b = (int)(idx % n), a = (int)((idx / n) % n), axis = (int)(idx / n / n);
            os << "plan-invalid: host line (axis " << axis << ", " << a + 1 << "," << b + 1
               << ") uncovered";
            throw precondition_error(os.str());
        }
    // piece witnesses
    for (const Piece& p : plan.pieces) {
        VerificationReport rb = verify_consecutive(p.base);
        if (!rb.accepted || p.base.start != 0 || rb.line_count != p.line_count)
            throw precondition_error("piece base is not an accepted start-0 witness");
        LineProfile pu = line_profile(p.unit);
        for (Int s : pu.live_sums())
            if (s != 1) throw precondition_error("piece unit has a line sum != 1");
        if (pu.live_count() != p.line_count)
            throw precondition_error("piece unit live-line count mismatch");
    }
    Cube host(n);
    Int offset = 0;
    for (const Piece& p : plan.pieces) {
        Cube shifted = add_unit_multiple(p.base, p.unit, offset);
        AxisMaps maps{p.block, p.block, p.block};
        host = embed_accumulate(std::move(host), shifted, maps);
        offset += p.line_count;
    }
    if (offset != 3L * n * n) throw precondition_error("offset ledger mismatch");
    return host;
}

namespace {

Piece jpiece(std::vector<int> block, int distinguished) {
    std::vector<int> ordered{distinguished};
    for (int x : block)
        if (x != distinguished) ordered.push_back(x);
    return Piece::make(UnitSpec::J, ordered);
}

}  // namespace

Plan plan_special(int n) {
    Plan plan;
    plan.n = n;
    if (n == 7) {
        for (int x = 0; x < 7; ++x)
            plan.pieces.push_back(jpiece({x, (x + 1) % 7, (x + 3) % 7}, x));
        return plan;
    }
    if (n == 13) {
        for (int x = 0; x < 13; ++x)
            plan.pieces.push_back(
                jpiece({x, (x + 1) % 13, (x + 3) % 13, (x + 9) % 13}, x));
        return plan;
    }
    if (n == 11) {
        const int I1 = 9, I2 = 10;  // the two adjoined points
        plan.pieces.push_back(jpiece({0, 4, 8}, 0));
        plan.pieces.push_back(jpiece({0, 5, 7}, 5));
        plan.pieces.push_back(jpiece({1, 5, 6}, 1));
        plan.pieces.push_back(jpiece({1, 3, 8}, 3));
        plan.pieces.push_back(jpiece({2, 3, 7}, 7));
        plan.pieces.push_back(jpiece({2, 4, 6}, 2));
        plan.pieces.push_back(jpiece({3, 4, 5, I1}, 4));
        plan.pieces.push_back(jpiece({0, 3, 6, I2}, 6));
        plan.pieces.push_back(jpiece({6, 7, 8, I1}, 8));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {0, 1, 2, I1}));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {1, 4, 7, I2}));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {2, 5, 8, I2}));
        plan.pieces.push_back(Piece::make(UnitSpec::Kmmm, {I1, I2}));
        return plan;
    }
    if (n == 17) {
        const int INF = 16;
        plan.pieces.push_back(Piece::make(UnitSpec::Kmmm, {0, 1, 2, 3, INF}));
        plan.pieces.push_back(jpiece({0, 4, 8, 15}, 4));
        plan.pieces.push_back(jpiece({1, 4, 10, 14}, 14));
        plan.pieces.push_back(jpiece({2, 4, 6, 11}, 11));
        plan.pieces.push_back(jpiece({0, 5, 6, 7}, 5));
        plan.pieces.push_back(jpiece({1, 5, 11, 13}, 13));
        plan.pieces.push_back(jpiece({2, 5, 8, 14}, 8));
        plan.pieces.push_back(jpiece({0, 9, 13, 14}, 9));
        plan.pieces.push_back(jpiece({1, 6, 9, 15}, 6));
        plan.pieces.push_back(jpiece({2, 7, 9, 10}, 10));
        plan.pieces.push_back(jpiece({0, 10, 11, 12}, 12));
        plan.pieces.push_back(jpiece({1, 7, 8, 12}, 7));
        plan.pieces.push_back(jpiece({2, 12, 13, 15}, 15));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {3, 4, 7, 13}));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {3, 5, 10, 15}));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {3, 8, 9, 11}));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {3, 6, 12, 14}));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {4, 5, 9, 12, INF}));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {6, 8, 10, 13, INF}));
        plan.pieces.push_back(Piece::make(UnitSpec::K3xK, {7, 11, 14, 15, INF}));
        return plan;
    }
    throw argument_error("special plans exist for n in {7, 11, 13, 17}");
}

Plan plan_general(int n) {
    BlockDesign d = pbd456(n + 1);
    BlockDesign reduced = delete_point(d, d.v - 1);
    std::set<int> aclass(reduced.classes.at(0).begin(), reduced.classes.at(0).end());
    Plan plan;
    plan.n = n;
    for (size_t bi = 0; bi < reduced.blocks.size(); ++bi) {
        const auto& b = reduced.blocks[bi];
        if (aclass.count((int)bi))
            plan.pieces.push_back(Piece::make(UnitSpec::Kmmm, b));
        else
            plan.pieces.push_back(Piece::make(UnitSpec::K3xK, b));
    }
    return plan;
}

namespace {

int smallest_prime_factor(int n) {
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

Cube gen_auto(int n);

Cube gen_by(int n, GenStrategy s) {
    switch (s) {
        case GenStrategy::Library:
            switch (n) {
                case 2: return block_cube(BlockKind::SBC2);
                case 3: return block_cube(BlockKind::SBC3);
                case 5: return block_cube(BlockKind::SBC5);
            }
            throw unavailable_error("library holds SBC(n) only for n in {2,3,5}");
        case GenStrategy::Special:
            return construction_cons(plan_special(n));
        case GenStrategy::Inflate: {
            int p = smallest_prime_factor(n);
            if (p == n) throw unavailable_error("inflation needs a composite n");
            return inflate(gen_auto(p), n / p);
        }
        case GenStrategy::Pbd:
            return construction_cons(plan_general(n));
        case GenStrategy::Auto:
            return gen_auto(n);
    }
    throw argument_error("bad strategy");
}

Cube gen_auto(int n) {
    if (n == 2 || n == 3 || n == 5) return gen_by(n, GenStrategy::Library);
    if (n == 7 || n == 11 || n == 13 || n == 17) return gen_by(n, GenStrategy::Special);
    int p = smallest_prime_factor(n);
    if (p < n) return gen_by(n, GenStrategy::Inflate);
    return gen_by(n, GenStrategy::Pbd);
}

}  // namespace

Cube generate_sbc(int n, GenStrategy strategy) {
    if (n < 2) throw argument_error("no SBC(n) for n < 2");
    Cube c = gen_by(n, strategy);
    VerificationReport r = verify_consecutive(c);
    if (!r.accepted)
        throw precondition_error("generated cube failed verification: " + r.first_defect);
    return c;
}

}  // namespace sbc
