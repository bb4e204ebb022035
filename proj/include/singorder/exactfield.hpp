#pragma once
// Dense exact linear algebra over a prime field F_p.  Everything here is
// integer arithmetic mod p; no floating point appears anywhere in the library.
// Elimination uses first-nonzero pivoting so that every reduced form, kernel
// basis and solution is deterministic for a given input.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace singorder {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Input/schema problems (bad JSON, inconsistent dimensions, non-prime p, ...).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant failed: a self-check did not hold or a certified
// property was violated.  Callers treat this as a hard failure, never as a
// verdict.
struct CheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration or search exceeded its explicit budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime(u32 p) {
    if (p < 2) return false;
    for (u64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Arithmetic in F_p.  Elements are canonical representatives in [0, p).
struct Fp {
    u32 p;

    explicit Fp(u32 prime) : p(prime) {
        if (!is_prime(prime)) throw InputError("modulus " + std::to_string(prime) + " is not prime");
    }

    u32 norm(long long x) const {
        long long r = x % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<u32>(r);
    }
    u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= p ? s - p : s; }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
    u32 mul(u32 a, u32 b) const { return static_cast<u32>((static_cast<u64>(a) * b) % p); }
    u32 pow(u32 a, u64 e) const {
        u32 r = 1 % p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    // Fermat inverse; p is prime and a != 0.
    u32 inv(u32 a) const {
        if (a == 0) throw CheckError("division by zero in F_p");
        return pow(a, p - 2);
    }
};

// Dense row-major matrix over F_p.  Zero-row and zero-column shapes are legal
// and show up constantly (zero modules, empty kernels), so nothing below may
// assume rows*cols > 0.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<u32> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {
        if (r < 0 || c < 0) throw InputError("negative matrix shape");
    }

    u32& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    u32 at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        for (u32 x : a)
            if (x) return false;
        return true;
    }
    bool is_identity() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (at(i, j) != (i == j ? 1u : 0u)) return false;
        return true;
    }
    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline Matrix mat_add(const Fp& fp, const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw InputError("matrix shape mismatch in add");
    Matrix r(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = fp.add(x.a[k], y.a[k]);
    return r;
}

inline Matrix mat_sub(const Fp& fp, const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw InputError("matrix shape mismatch in sub");
    Matrix r(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = fp.sub(x.a[k], y.a[k]);
    return r;
}

inline Matrix mat_scale(const Fp& fp, u32 c, const Matrix& x) {
    Matrix r(x.rows, x.cols);
    for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = fp.mul(c, x.a[k]);
    return r;
}

inline Matrix mat_mul(const Fp& fp, const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw InputError("matrix shape mismatch in mul");
    Matrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            u32 c = x.at(i, k);
            if (!c) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = fp.add(r.at(i, j), fp.mul(c, y.at(k, j)));
        }
    return r;
}

inline std::vector<u32> mat_apply(const Fp& fp, const Matrix& m, const std::vector<u32>& v) {
    if (static_cast<int>(v.size()) != m.cols) throw InputError("matrix/vector shape mismatch");
    std::vector<u32> r(m.rows, 0);
    for (int i = 0; i < m.rows; ++i) {
        u64 acc = 0;
        for (int j = 0; j < m.cols; ++j) acc += static_cast<u64>(m.at(i, j)) * v[j];
        r[i] = static_cast<u32>(acc % fp.p);
    }
    return r;
}

inline Matrix transpose(const Matrix& m) {
    Matrix r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

inline Matrix hstack(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows) throw InputError("hstack row mismatch");
    Matrix r(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

inline Matrix vstack(const Matrix& x, const Matrix& y) {
    if (x.cols != y.cols) throw InputError("vstack column mismatch");
    Matrix r(x.rows + y.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(x.rows + i, j) = y.at(i, j);
    return r;
}

inline Matrix block_diag(const Matrix& x, const Matrix& y) {
    Matrix r(x.rows + y.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) r.at(x.rows + i, x.cols + j) = y.at(i, j);
    return r;
}

inline std::vector<u32> mat_column(const Matrix& m, int j) {
    std::vector<u32> c(m.rows);
    for (int i = 0; i < m.rows; ++i) c[i] = m.at(i, j);
    return c;
}

inline Matrix from_columns(int rows, const std::vector<std::vector<u32>>& cols) {
    Matrix r(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < r.cols; ++j) {
        if (static_cast<int>(cols[j].size()) != rows) throw InputError("column length mismatch");
        for (int i = 0; i < rows; ++i) r.at(i, j) = cols[j][i];
    }
    return r;
}

// Flatten row-major; the coordinate convention used for every vectorised
// morphism space in the library.
inline std::vector<u32> vec_of(const Matrix& m) { return m.a; }

inline Matrix mat_of_vec(int rows, int cols, const std::vector<u32>& v) {
    if (static_cast<int>(v.size()) != rows * cols) throw InputError("vec length mismatch");
    Matrix m(rows, cols);
    m.a = v;
    return m;
}

// Row echelon data.  `rref` is the full reduced row echelon form; `transform`
// satisfies transform * input = rref, recording the row operations.  Pivoting
// picks the first row with a nonzero entry in the current column.
struct Echelon {
    Matrix rref;
    Matrix transform;
    std::vector<int> pivots;  // pivot column of each of the first `rank` rows
    int rank = 0;
};

inline Echelon reduce(const Fp& fp, Matrix m) {
    Echelon e;
    e.transform = Matrix::identity(m.rows);
    int r = 0;
    for (int col = 0; col < m.cols && r < m.rows; ++col) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, col)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
            for (int j = 0; j < e.transform.cols; ++j) std::swap(e.transform.at(piv, j), e.transform.at(r, j));
        }
        u32 s = fp.inv(m.at(r, col));
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = fp.mul(s, m.at(r, j));
        for (int j = 0; j < e.transform.cols; ++j) e.transform.at(r, j) = fp.mul(s, e.transform.at(r, j));
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            u32 c = m.at(i, col);
            if (!c) continue;
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = fp.sub(m.at(i, j), fp.mul(c, m.at(r, j)));
            for (int j = 0; j < e.transform.cols; ++j)
                e.transform.at(i, j) = fp.sub(e.transform.at(i, j), fp.mul(c, e.transform.at(r, j)));
        }
        e.pivots.push_back(col);
        ++r;
    }
    e.rank = r;
    e.rref = std::move(m);
    return e;
}

inline int rank_of(const Fp& fp, const Matrix& m) { return reduce(fp, m).rank; }

// Basis of the right kernel {x : m x = 0}, returned as columns.  One basis
// vector per free column, in ascending column order, with the free coordinate
// set to 1 — the canonical form used throughout.
inline Matrix kernel_basis(const Fp& fp, const Matrix& m) {
    Echelon e = reduce(fp, m);
    std::vector<bool> is_piv(m.cols, false);
    for (int c : e.pivots) is_piv[c] = true;
    std::vector<std::vector<u32>> cols;
    for (int j = 0; j < m.cols; ++j) {
        if (is_piv[j]) continue;
        std::vector<u32> v(m.cols, 0);
        v[j] = 1;
        for (int i = 0; i < e.rank; ++i) v[e.pivots[i]] = fp.neg(e.rref.at(i, j));
        cols.push_back(std::move(v));
    }
    return from_columns(m.cols, cols);
}

// Particular solution of A X = B with free variables set to zero; nullopt if
// the system is inconsistent.  B may have any number of columns.
inline std::optional<Matrix> solve(const Fp& fp, const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) throw InputError("solve: rhs row mismatch");
    Echelon e = reduce(fp, a);
    Matrix tb = mat_mul(fp, e.transform, b);
    for (int i = e.rank; i < tb.rows; ++i)
        for (int j = 0; j < tb.cols; ++j)
            if (tb.at(i, j)) return std::nullopt;
    Matrix x(a.cols, b.cols);
    for (int i = 0; i < e.rank; ++i)
        for (int j = 0; j < b.cols; ++j) x.at(e.pivots[i], j) = tb.at(i, j);
    // rref rows may still involve free columns; eliminate their contribution.
    // With free variables pinned to zero the pivot rows read off directly,
    // but only because rref has zeros above/below pivots and the free
    // columns multiply zero assignments.  Verify to be safe.
    Matrix check = mat_mul(fp, a, x);
    if (!(check == b)) throw CheckError("solve: verification failed");
    return x;
}

inline std::optional<Matrix> try_inverse(const Fp& fp, const Matrix& m) {
    if (m.rows != m.cols) throw InputError("inverse of non-square matrix");
    Echelon e = reduce(fp, m);
    if (e.rank != m.rows) return std::nullopt;
    return e.transform;
}

inline Matrix inverse(const Fp& fp, const Matrix& m) {
    auto inv = try_inverse(fp, m);
    if (!inv) throw CheckError("inverse of singular matrix");
    return *inv;
}

// Characteristic polynomial det(xI - M) by the Berkowitz method: division
// free, so it works verbatim in any characteristic (Hessenberg-style
// eliminations would need pivot choices; this needs none).  Returns
// coefficients c[0..n] with p(x) = sum c[k] x^(n-k), c[0] = 1.
inline std::vector<u32> charpoly(const Fp& fp, const Matrix& m) {
    if (m.rows != m.cols) throw InputError("charpoly of non-square matrix");
    int n = m.rows;
    std::vector<u32> c{1 % fp.p};
    for (int r = 1; r <= n; ++r) {
        // Toeplitz column q for the r-th principal submatrix step:
        // q0 = 1, q1 = -m[r-1][r-1], q_j = -(R * A^(j-2) * S) for j >= 2,
        // where A is the leading (r-1)x(r-1) block, R the row to its left,
        // S the column above the diagonal entry.
        std::vector<u32> q(static_cast<size_t>(r) + 1, 0);
        q[0] = 1 % fp.p;
        q[1] = fp.neg(m.at(r - 1, r - 1));
        std::vector<u32> v(r - 1);
        for (int i = 0; i < r - 1; ++i) v[i] = m.at(i, r - 1);  // S
        for (int j = 2; j <= r; ++j) {
            u64 acc = 0;
            for (int i = 0; i < r - 1; ++i) acc += static_cast<u64>(m.at(r - 1, i)) * v[i];
            q[j] = fp.neg(static_cast<u32>(acc % fp.p));
            if (j == r) break;
            std::vector<u32> nv(r - 1, 0);
            for (int i = 0; i < r - 1; ++i) {
                u64 s = 0;
                for (int k = 0; k < r - 1; ++k) s += static_cast<u64>(m.at(i, k)) * v[k];
                nv[i] = static_cast<u32>(s % fp.p);
            }
            v = std::move(nv);
        }
        std::vector<u32> nc(static_cast<size_t>(r) + 1, 0);
        for (int i = 0; i <= r; ++i) {
            u64 acc = 0;
            for (int k = 0; k < static_cast<int>(c.size()); ++k) {
                int qi = i - k;
                if (qi < 0 || qi > r) continue;
                acc += static_cast<u64>(q[qi]) * c[k];
            }
            nc[i] = static_cast<u32>(acc % fp.p);
        }
        c = std::move(nc);
    }
    return c;
}

// A subspace of F_p^n maintained as a reduced row-echelon row basis.  Insert
// order does not affect the stored form, which doubles as a canonical key.
struct Subspace {
    Fp fp;
    int n;
    std::vector<std::vector<u32>> rows;  // rref rows, pivot columns ascending
    std::vector<int> pivots;

    Subspace(const Fp& f, int ambient) : fp(f), n(ambient) {}

    int dim() const { return static_cast<int>(rows.size()); }

    // Reduce v against the stored rows (eliminating pivot coordinates).
    std::vector<u32> residue(std::vector<u32> v) const {
        if (static_cast<int>(v.size()) != n) throw InputError("subspace vector length mismatch");
        for (size_t i = 0; i < rows.size(); ++i) {
            u32 c = v[pivots[i]];
            if (!c) continue;
            for (int j = 0; j < n; ++j) v[j] = fp.sub(v[j], fp.mul(c, rows[i][j]));
        }
        return v;
    }

    bool contains(const std::vector<u32>& v) const {
        auto r = residue(v);
        for (u32 x : r)
            if (x) return false;
        return true;
    }

    // Returns true if the vector enlarged the subspace.
    bool insert(const std::vector<u32>& v) {
        auto r = residue(v);
        int p = -1;
        for (int j = 0; j < n; ++j)
            if (r[j]) { p = j; break; }
        if (p < 0) return false;
        u32 s = fp.inv(r[p]);
        for (int j = 0; j < n; ++j) r[j] = fp.mul(s, r[j]);
        // Eliminate the new pivot from existing rows, then insert sorted.
        for (size_t i = 0; i < rows.size(); ++i) {
            u32 c = rows[i][p];
            if (!c) continue;
            for (int j = 0; j < n; ++j) rows[i][j] = fp.sub(rows[i][j], fp.mul(c, r[j]));
        }
        size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < p) ++pos;
        rows.insert(rows.begin() + pos, std::move(r));
        pivots.insert(pivots.begin() + pos, p);
        return true;
    }

    void insert_matrix_columns(const Matrix& m) {
        for (int j = 0; j < m.cols; ++j) insert(mat_column(m, j));
    }

    // Basis vectors as columns of an n x dim matrix.
    Matrix column_basis() const {
        Matrix b(n, dim());
        for (int j = 0; j < dim(); ++j)
            for (int i = 0; i < n; ++i) b.at(i, j) = rows[j][i];
        return b;
    }

    Matrix row_matrix() const {
        Matrix b(dim(), n);
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < n; ++j) b.at(i, j) = rows[i][j];
        return b;
    }

    // Byte-stable identity for dedup maps.
    std::string key() const {
        std::string k = std::to_string(n) + ":";
        for (const auto& r : rows) {
            for (u32 x : r) {
                k += std::to_string(x);
                k += ',';
            }
            k += ';';
        }
        return k;
    }
};

// Deterministic PRNG (splitmix64): identical streams on every platform, so
// seeded searches reproduce bit-for-bit.
struct Rng {
    u64 state;
    explicit Rng(u64 seed) : state(seed) {}
    u64 next() {
        u64 z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    u32 below(u32 m) { return m ? static_cast<u32>(next() % m) : 0; }
};

}  // namespace singorder
