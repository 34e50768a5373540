#include "sbc/latin.hpp"

#include <vector>

#include "sbc/errors.hpp"

namespace sbc {

bool is_latin(const LatinSquare& L) {
    const int n = L.n;
    if (L.cells.rows() != n || L.cells.cols() != n) return false;
    for (int i = 0; i < n; ++i) {
        std::vector<bool> row(n, false), col(n, false);
        for (int j = 0; j < n; ++j) {
            int a = L.cells(i, j), b = L.cells(j, i);
            if (a < 0 || a >= n || b < 0 || b >= n) return false;
            if (row[a] || col[b]) return false;
            row[a] = col[b] = true;
        }
    }
    return true;
}

LatinSquare circulant_square(int n) {
    if (n < 1) throw argument_error("order must be >= 1");
    LatinSquare L{n, Eigen::MatrixXi(n, n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) L.cells(i, j) = (i + j) % n;
    return L;
}

namespace {

bool idempotent_backtrack(Eigen::MatrixXi& M, int pos, int n) {
    if (pos == n * n) return true;
    int i = pos / n, j = pos % n;
    if (i == j) return idempotent_backtrack(M, pos + 1, n);
    for (int v = 0; v < n; ++v) {
        bool ok = true;
        for (int c = 0; c < n && ok; ++c)
            if (M(i, c) == v) ok = false;
        for (int r = 0; r < n && ok; ++r)
            if (M(r, j) == v) ok = false;
        if (!ok) continue;
        M(i, j) = v;
        if (idempotent_backtrack(M, pos + 1, n)) return true;
        M(i, j) = -1;
    }
    return false;
}

}  // namespace

LatinSquare idempotent_square(int n) {
    if (n < 1) throw argument_error("order must be >= 1");
    if (n == 2) throw unavailable_error("no idempotent Latin square of order 2");
    LatinSquare L{n, Eigen::MatrixXi(n, n)};
    if (n % 2 == 1) {
        // (i+j)/2 mod n; the diagonal is fixed since 2i/2 = i
        int inv2 = (n + 1) / 2;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) L.cells(i, j) = (int)(((long)(i + j) * inv2) % n);
        return L;
    }
    L.cells.setConstant(-1);
    for (int i = 0; i < n; ++i) L.cells(i, i) = i;
    if (!idempotent_backtrack(L.cells, 0, n))
        throw unavailable_error("idempotent backtracking failed");  // n != 2 never reaches this
    return L;
}

Cube indicator_cube(const LatinSquare& L) {
    if (!is_latin(L)) throw argument_error("not a Latin square");
    Cube c(L.n);
    for (int i = 0; i < L.n; ++i)
        for (int j = 0; j < L.n; ++j) c.layer[L.cells(i, j)](i, j) = 1;
    return c;
}

Cube unit_cube(const UnitSpec& spec) {
    const int m = spec.m;
    switch (spec.kind) {
        case UnitSpec::Kmmm:
            if (m < 1) throw argument_error("Kmmm order must be >= 1");
            return indicator_cube(circulant_square(m));
        case UnitSpec::K3xK: {
            if (m < 3) throw unavailable_error("K3xK unit needs order >= 3");
            LatinSquare L = idempotent_square(m);
            Cube c(m);
            c.mask = distinct_mask(m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if (i != j) c.layer[L.cells(i, j)](i, j) = 1;
            return c;
        }
        case UnitSpec::J: {
            if (m < 3) throw unavailable_error("J unit needs order >= 3");
            if (spec.x < 0 || spec.x >= m) throw argument_error("distinguished index out of range");
            LatinSquare L = idempotent_square(m);
            Cube c(m);
            c.mask = j_mask(m, spec.x);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if (i != j) c.layer[L.cells(i, j)](i, j) = 1;
            c.layer[spec.x](spec.x, spec.x) = 1;
            return c;
        }
    }
    throw argument_error("bad unit kind");
}

Cube inflate(const Cube& base, int m) {
    if (m < 1) throw argument_error("multiplier must be >= 1");
    VerificationReport r = verify_consecutive(base);
    if (!r.accepted || base.start != 0)
        throw precondition_error("inflate: base is not an accepted start-0 cube");
    for (const auto& g : base.mask)
        if (!g.all()) throw precondition_error("inflate: base mask must be all-true");
    const int n = base.n;
    LatinSquare L = circulant_square(m);
    Cube unit = unit_cube(UnitSpec::kmmm(n));
    Cube out(m * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int k = L.cells(i, j);
            const Int t = (Int)k * m + i;
            const Int shift = 3 * t * (Int)n * n;
            for (int kk = 0; kk < n; ++kk)
                for (int ii = 0; ii < n; ++ii)
                    for (int jj = 0; jj < n; ++jj)
                        out.layer[k * n + kk](i * n + ii, j * n + jj) =
                            base.layer[kk](ii, jj) + shift * unit.layer[kk](ii, jj);
        }
    return out;
}

Grid two_dim_square(int n) {
    if (n < 2) throw argument_error("side must be >= 2");
    if (n % 2 != 0)
        throw argument_error("parity: total n(2n-1) = " + std::to_string((long)n * (2 * n - 1)) +
                             " is odd, no consecutive-sum square exists");
    Grid M = Grid::Zero(n, n);
    for (int b = 0; b < n / 2; ++b) {
        Int t = 2 * b;
        M(t, t) = t;
        M(t, t + 1) = t;
        M(t + 1, t) = t + 1;
        M(t + 1, t + 1) = t + 2;
    }
    return M;
}

}  // namespace sbc
