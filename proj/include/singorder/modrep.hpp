#pragma once
// Finite-dimensional modules over a structure-constant algebra, given as
// matrix representations: one matrix per algebra basis element.  Provides
// validation, hom spaces, sub/quotient construction, radical series, free
// covers and syzygies, isomorphism testing with witnesses, and a splitting
// routine for composition factors.

#include <algorithm>
#include <string>
#include <vector>

#include "singorder/algebra.hpp"

namespace singorder {

enum class Ternary { yes, no, unknown };

inline const char* to_string(Ternary t) {
    switch (t) {
        case Ternary::yes: return "yes";
        case Ternary::no: return "no";
        default: return "unknown";
    }
}

// Matrix of the action of an element with the given coordinates.
inline Matrix rho(const AlgebraSpec& spec, const ModuleRep& m, const std::vector<u32>& coords) {
    Fp fp(spec.p);
    Matrix out(m.d, m.d);
    for (int i = 0; i < spec.n; ++i) {
        if (!coords[i]) continue;
        out = mat_add(fp, out, mat_scale(fp, coords[i], m.action[i]));
    }
    return out;
}

inline AlgebraReport validate_module(const AlgebraSpec& spec, const ModuleRep& m) {
    AlgebraReport rep;
    Fp fp(spec.p);
    if (static_cast<int>(m.action.size()) != spec.n) {
        rep.fail("module action has wrong number of matrices");
        return rep;
    }
    for (int i = 0; i < spec.n; ++i)
        if (m.action[i].rows != m.d || m.action[i].cols != m.d) {
            rep.fail("action matrix " + std::to_string(i) + " has wrong shape");
            return rep;
        }
    if (!rho(spec, m, spec.unit).is_identity())
        rep.fail("unit does not act as the identity");
    for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j) {
            Matrix lhs = mat_mul(fp, m.action[i], m.action[j]);
            Matrix rhs(m.d, m.d);
            const u32* row = spec.tensor.data() + (static_cast<size_t>(i) * spec.n + j) * spec.n;
            for (int l = 0; l < spec.n; ++l)
                if (row[l]) rhs = mat_add(fp, rhs, mat_scale(fp, row[l], m.action[l]));
            if (!(lhs == rhs)) {
                rep.fail("action violates the product of basis elements (" + std::to_string(i) +
                         "," + std::to_string(j) + ")");
                if (rep.failures.size() >= 32) return rep;
            }
        }
    return rep;
}

inline ModuleRep regular_module(const AlgebraSpec& spec) {
    ModuleRep m;
    m.d = spec.n;
    m.label = "A";
    std::vector<u32> e(spec.n, 0);
    for (int i = 0; i < spec.n; ++i) {
        e.assign(spec.n, 0);
        e[i] = 1;
        m.action.push_back(spec.left_mult_matrix(e));
    }
    return m;
}

inline ModuleRep zero_module(const AlgebraSpec& spec) {
    ModuleRep m;
    m.d = 0;
    m.label = "0";
    m.action.assign(spec.n, Matrix(0, 0));
    return m;
}

inline ModuleRep direct_sum(const AlgebraSpec& spec, const ModuleRep& a, const ModuleRep& b) {
    ModuleRep m;
    m.d = a.d + b.d;
    m.label = a.label.empty() || b.label.empty() ? "" : a.label + "+" + b.label;
    for (int i = 0; i < spec.n; ++i) m.action.push_back(block_diag(a.action[i], b.action[i]));
    return m;
}

inline ModuleRep direct_sum(const AlgebraSpec& spec, const std::vector<ModuleRep>& parts) {
    ModuleRep m = zero_module(spec);
    for (const auto& part : parts) m = direct_sum(spec, m, part);
    if (!parts.empty()) {
        m.label = parts[0].label;
        for (size_t i = 1; i < parts.size(); ++i)
            m.label = m.label.empty() || parts[i].label.empty() ? "" : m.label + "+" + parts[i].label;
    }
    return m;
}

// Basis of Hom_A(M, N) as matrices f with f * rho_M(a) = rho_N(a) * f.
inline std::vector<Matrix> hom_basis(const AlgebraSpec& spec, const ModuleRep& m, const ModuleRep& n) {
    Fp fp(spec.p);
    int dm = m.d, dn = n.d;
    if (dm == 0 || dn == 0) return {};
    int vars = dn * dm;  // f[u][v], row-major
    Matrix g(spec.n * dn * dm, vars);
    int row = 0;
    for (int i = 0; i < spec.n; ++i) {
        const Matrix& am = m.action[i];
        const Matrix& an = n.action[i];
        for (int a = 0; a < dn; ++a)
            for (int b = 0; b < dm; ++b) {
                // (f * am - an * f)[a][b] = sum_v f[a][v] am[v][b] - sum_u an[a][u] f[u][b]
                for (int v = 0; v < dm; ++v) {
                    u32 c = am.at(v, b);
                    if (c) g.at(row, a * dm + v) = fp.add(g.at(row, a * dm + v), c);
                }
                for (int u = 0; u < dn; ++u) {
                    u32 c = an.at(a, u);
                    if (c) g.at(row, u * dm + b) = fp.sub(g.at(row, u * dm + b), c);
                }
                ++row;
            }
    }
    Matrix ker = kernel_basis(fp, g);
    std::vector<Matrix> basis;
    for (int c = 0; c < ker.cols; ++c) {
        Matrix f(dn, dm);
        for (int u = 0; u < dn; ++u)
            for (int v = 0; v < dm; ++v) f.at(u, v) = ker.at(u * dm + v, c);
        basis.push_back(std::move(f));
    }
    return basis;
}

inline int hom_dim(const AlgebraSpec& spec, const ModuleRep& m, const ModuleRep& n) {
    return static_cast<int>(hom_basis(spec, m, n).size());
}

// Smallest submodule containing the given vectors, as a subspace of F_p^d.
inline Subspace spin(const AlgebraSpec& spec, const ModuleRep& m, const std::vector<std::vector<u32>>& seeds) {
    Fp fp(spec.p);
    Subspace sp(fp, m.d);
    for (const auto& s : seeds) sp.insert(s);
    std::vector<std::vector<u32>> work(sp.rows.begin(), sp.rows.end());
    while (!work.empty()) {
        auto v = work.back();
        work.pop_back();
        for (int i = 0; i < spec.n; ++i) {
            auto w = mat_apply(fp, m.action[i], v);
            if (sp.insert(w)) work.push_back(w);
        }
    }
    return sp;
}

inline bool is_invariant_columns(const AlgebraSpec& spec, const ModuleRep& m, const Matrix& cols) {
    Fp fp(spec.p);
    Subspace sp(fp, m.d);
    sp.insert_matrix_columns(cols);
    for (const auto& r : sp.rows)
        for (int i = 0; i < spec.n; ++i)
            if (!sp.contains(mat_apply(fp, m.action[i], r))) return false;
    return true;
}

struct SubQuotient {
    ModuleRep sub;    // module structure on the subspace
    Matrix incl;      // d x k, columns embed sub into the ambient module
    ModuleRep quot;   // module structure on the quotient
    Matrix proj;      // m x d, projection onto quotient coordinates
    Matrix section;   // d x m, linear section with proj * section = identity
};

// Sub and quotient along an invariant subspace given by spanning columns.
inline SubQuotient sub_quotient(const AlgebraSpec& spec, const ModuleRep& m, const Matrix& span_cols) {
    Fp fp(spec.p);
    if (span_cols.rows != m.d) throw InputError("subspace columns have wrong height");
    Subspace sp(fp, m.d);
    sp.insert_matrix_columns(span_cols);
    for (const auto& r : sp.rows)
        for (int i = 0; i < spec.n; ++i)
            if (!sp.contains(mat_apply(fp, m.action[i], r)))
                throw InputError("subspace is not invariant under the action");
    SubQuotient out;
    int k = sp.dim();
    out.incl = sp.column_basis();
    out.sub.d = k;
    out.sub.label = m.label.empty() ? "" : m.label + ".sub";
    for (int i = 0; i < spec.n; ++i) {
        auto x = solve(fp, out.incl, mat_mul(fp, m.action[i], out.incl));
        if (!x) throw CheckError("invariant subspace failed to restrict");
        out.sub.action.push_back(std::move(*x));
    }
    std::vector<bool> is_piv(m.d, false);
    for (int p : sp.pivots) is_piv[p] = true;
    std::vector<int> keep;
    for (int j = 0; j < m.d; ++j)
        if (!is_piv[j]) keep.push_back(j);
    int q = static_cast<int>(keep.size());
    out.proj = Matrix(q, m.d);
    std::vector<u32> e(m.d);
    for (int j = 0; j < m.d; ++j) {
        e.assign(m.d, 0);
        e[j] = 1;
        auto r = sp.residue(e);
        for (int a = 0; a < q; ++a) out.proj.at(a, j) = r[keep[a]];
    }
    out.section = Matrix(m.d, q);
    for (int a = 0; a < q; ++a) out.section.at(keep[a], a) = 1;
    if (!mat_mul(fp, out.proj, out.section).is_identity())
        throw CheckError("quotient projection does not split its section");
    out.quot.d = q;
    out.quot.label = m.label.empty() ? "" : m.label + ".quot";
    for (int i = 0; i < spec.n; ++i)
        out.quot.action.push_back(mat_mul(fp, out.proj, mat_mul(fp, m.action[i], out.section)));
    return out;
}

// Kernel and image of a module morphism f: M -> N, with module structures.
struct KernelImage {
    ModuleRep kernel;
    Matrix kernel_incl;  // dM x k
    ModuleRep image;
    Matrix image_incl;  // dN x r
};

inline bool is_morphism(const AlgebraSpec& spec, const ModuleRep& m, const ModuleRep& n, const Matrix& f) {
    Fp fp(spec.p);
    if (f.rows != n.d || f.cols != m.d) return false;
    for (int i = 0; i < spec.n; ++i)
        if (!(mat_mul(fp, f, m.action[i]) == mat_mul(fp, n.action[i], f))) return false;
    return true;
}

inline KernelImage morphism_kernel_image(const AlgebraSpec& spec, const ModuleRep& m, const ModuleRep& n,
                                         const Matrix& f) {
    Fp fp(spec.p);
    if (!is_morphism(spec, m, n, f)) throw InputError("matrix is not a module morphism");
    KernelImage out;
    out.kernel_incl = kernel_basis(fp, f);
    out.kernel.d = out.kernel_incl.cols;
    out.kernel.label = m.label.empty() ? "" : "ker(" + m.label + ")";
    for (int i = 0; i < spec.n; ++i) {
        auto x = solve(fp, out.kernel_incl, mat_mul(fp, m.action[i], out.kernel_incl));
        if (!x) throw CheckError("kernel of a morphism failed to restrict");
        out.kernel.action.push_back(std::move(*x));
    }
    Subspace img(fp, n.d);
    img.insert_matrix_columns(f);
    out.image_incl = img.column_basis();
    out.image.d = img.dim();
    out.image.label = "";
    for (int i = 0; i < spec.n; ++i) {
        auto x = solve(fp, out.image_incl, mat_mul(fp, n.action[i], out.image_incl));
        if (!x) throw CheckError("image of a morphism failed to restrict");
        out.image.action.push_back(std::move(*x));
    }
    return out;
}

// Columns spanning (rad A) * M.
inline Matrix radical_submodule_columns(const AlgebraSpec& spec, const ModuleRep& m, const Matrix& rad_rows) {
    Fp fp(spec.p);
    Subspace sp(fp, m.d);
    for (int r = 0; r < rad_rows.rows; ++r) {
        std::vector<u32> z(spec.n);
        for (int c = 0; c < spec.n; ++c) z[c] = rad_rows.at(r, c);
        sp.insert_matrix_columns(rho(spec, m, z));
    }
    return sp.column_basis();
}

// Columns spanning the socle: vectors killed by every radical element.
inline Matrix socle_columns(const AlgebraSpec& spec, const ModuleRep& m, const Matrix& rad_rows) {
    Fp fp(spec.p);
    if (rad_rows.rows == 0) return Matrix::identity(m.d);
    Matrix stacked(0, m.d);
    for (int r = 0; r < rad_rows.rows; ++r) {
        std::vector<u32> z(spec.n);
        for (int c = 0; c < spec.n; ++c) z[c] = rad_rows.at(r, c);
        stacked = vstack(stacked, rho(spec, m, z));
    }
    return kernel_basis(fp, stacked);
}

// Quotient by the radical submodule; .quot is the top of M.
inline SubQuotient radical_and_top(const AlgebraSpec& spec, const ModuleRep& m, const Matrix& rad_rows) {
    return sub_quotient(spec, m, radical_submodule_columns(spec, m, rad_rows));
}

struct FreeCover {
    ModuleRep mod;  // A^rank
    Matrix pi;      // dM x (rank * n), surjective morphism onto M
    int rank = 0;
};

// Free cover of rank dim(M / rad M): one free generator per top basis
// vector, lifted along the standard coordinates left free by rad M.
inline FreeCover free_cover(const AlgebraSpec& spec, const ModuleRep& m, const Matrix& rad_rows) {
    Fp fp(spec.p);
    FreeCover out;
    Subspace radsp(fp, m.d);
    radsp.insert_matrix_columns(radical_submodule_columns(spec, m, rad_rows));
    std::vector<bool> is_piv(m.d, false);
    for (int p : radsp.pivots) is_piv[p] = true;
    std::vector<int> keep;
    for (int j = 0; j < m.d; ++j)
        if (!is_piv[j]) keep.push_back(j);
    out.rank = static_cast<int>(keep.size());
    std::vector<ModuleRep> copies(out.rank, regular_module(spec));
    out.mod = direct_sum(spec, copies);
    out.mod.label = "F(" + m.label + ")";
    out.pi = Matrix(m.d, out.rank * spec.n);
    std::vector<u32> e(spec.n);
    for (int a = 0; a < out.rank; ++a)
        for (int i = 0; i < spec.n; ++i) {
            e.assign(spec.n, 0);
            e[i] = 1;
            Matrix act = rho(spec, m, e);
            for (int r = 0; r < m.d; ++r) out.pi.at(r, a * spec.n + i) = act.at(r, keep[a]);
        }
    if (rank_of(fp, out.pi) != m.d) throw CheckError("free cover is not surjective");
    if (!is_morphism(spec, out.mod, m, out.pi)) throw CheckError("free cover map is not a morphism");
    return out;
}

struct Syzygy {
    ModuleRep omega;
    Matrix incl;  // dF x k, embedding of the syzygy into the cover
    FreeCover cover;
};

inline Syzygy syzygy(const AlgebraSpec& spec, const ModuleRep& m, const Matrix& rad_rows) {
    Syzygy out;
    out.cover = free_cover(spec, m, rad_rows);
    auto ki = morphism_kernel_image(spec, out.cover.mod, m, out.cover.pi);
    out.omega = std::move(ki.kernel);
    out.omega.label = m.label.empty() ? "" : "O(" + m.label + ")";
    out.incl = std::move(ki.kernel_incl);
    return out;
}

struct IsoWitness {
    Ternary verdict = Ternary::unknown;
    Matrix f;     // N x M iso when verdict == yes
    Matrix finv;  // M x N inverse
};

// Isomorphism test with witness.  "no" is certified (dimension or hom
// fingerprint obstruction, or exhaustive search); "yes" carries an inverse
// pair; "unknown" only when the unit search exceeded the budget.
inline IsoWitness iso_test(const AlgebraSpec& spec, const ModuleRep& m, const ModuleRep& n,
                           u64 budget = (1u << 20), u64 seed = 7) {
    Fp fp(spec.p);
    IsoWitness out;
    if (m.d != n.d) {
        out.verdict = Ternary::no;
        return out;
    }
    if (m.d == 0) {
        out.verdict = Ternary::yes;
        out.f = Matrix(0, 0);
        out.finv = Matrix(0, 0);
        return out;
    }
    auto basis = hom_basis(spec, m, n);
    int h = static_cast<int>(basis.size());
    // isomorphic modules have equal hom dimensions against both of them
    if (h != hom_dim(spec, m, m) || h != hom_dim(spec, n, n) || h != hom_dim(spec, n, m)) {
        out.verdict = Ternary::no;
        return out;
    }
    if (h == 0) {
        out.verdict = Ternary::no;  // nonzero modules need a nonzero hom to be isomorphic
        return out;
    }
    auto try_mat = [&](const Matrix& f) -> bool {
        auto inv = try_inverse(fp, f);
        if (!inv) return false;
        out.verdict = Ternary::yes;
        out.f = f;
        out.finv = std::move(*inv);
        if (!is_morphism(spec, n, m, out.finv)) throw CheckError("inverse of a module iso must be a morphism");
        return true;
    };
    for (const auto& f : basis)
        if (try_mat(f)) return out;
    // exhaustive enumeration when the hom space is small enough
    u64 count = 1;
    bool can_exhaust = true;
    for (int i = 0; i < h; ++i) {
        count *= spec.p;
        if (count > budget) {
            can_exhaust = false;
            break;
        }
    }
    if (can_exhaust) {
        std::vector<u32> digits(h, 0);
        for (u64 code = 1; code < count; ++code) {
            u64 c = code;
            for (int i = 0; i < h; ++i) {
                digits[i] = static_cast<u32>(c % spec.p);
                c /= spec.p;
            }
            Matrix f(n.d, m.d);
            for (int i = 0; i < h; ++i)
                if (digits[i]) f = mat_add(fp, f, mat_scale(fp, digits[i], basis[i]));
            if (try_mat(f)) return out;
        }
        out.verdict = Ternary::no;  // every hom checked, none invertible
        return out;
    }
    Rng rng(seed ^ 0x69736f74657374ull);
    for (int t = 0; t < 256; ++t) {
        Matrix f(n.d, m.d);
        for (int i = 0; i < h; ++i) {
            u32 c = static_cast<u32>(rng.below(spec.p));
            if (c) f = mat_add(fp, f, mat_scale(fp, c, basis[i]));
        }
        if (try_mat(f)) return out;
    }
    out.verdict = Ternary::unknown;
    return out;
}

// ---------------------------------------------------------------------------
// Splitting into composition factors.
//
// Random singular elements of the acting algebra drive the standard split
// search: null vectors that spin to a proper submodule give a split; if all
// null vectors spin full and one null vector of the transpose spins full on
// the right, the module is simple.  (If a proper submodule W exists, either
// the element is singular on W — then some null vector lies in W — or it is
// nonsingular on W, in which case the transpose null space annihilates the
// image, which contains W, so its right spin stays inside the annihilator
// of W.)  Small modules fall back to spinning every line, which is decisive.
// ---------------------------------------------------------------------------

struct ChopResult {
    bool complete = true;
    std::vector<ModuleRep> factors;  // composition factors if complete
};

namespace detail {

inline Subspace right_spin(const AlgebraSpec& spec, const ModuleRep& m, const std::vector<u32>& seed) {
    Fp fp(spec.p);
    Subspace sp(fp, m.d);
    std::vector<std::vector<u32>> work;
    if (sp.insert(seed)) work.push_back(seed);
    while (!work.empty()) {
        auto v = work.back();
        work.pop_back();
        for (int i = 0; i < spec.n; ++i) {
            auto w = mat_apply(fp, transpose(m.action[i]), v);
            if (sp.insert(w)) work.push_back(w);
        }
    }
    return sp;
}

// Either certifies simplicity, returns a proper invariant subspace, or gives
// up within the budget.
struct SimpleProbe {
    Ternary simple = Ternary::unknown;
    Matrix proper_cols;  // valid when simple == no
};

inline SimpleProbe probe_simple(const AlgebraSpec& spec, const ModuleRep& m, Rng& rng, u64 budget) {
    Fp fp(spec.p);
    SimpleProbe out;
    if (m.d == 1) {
        out.simple = Ternary::yes;
        return out;
    }
    auto lines_of = [&](int k) -> u64 {
        // number of lines in F_p^k, saturating
        u64 lines = 0, pw = 1;
        for (int i = 0; i < k; ++i) {
            lines += pw;
            if (lines > budget) return budget + 1;
            pw *= spec.p;
        }
        return lines;
    };
    auto spin_all_lines = [&](const Matrix& null_cols) -> Ternary {
        // spin one representative of every line of the given column space;
        // returns no (with proper_cols set) on a proper spin, yes if all full
        int k = null_cols.cols;
        u64 count = 1;
        for (int i = 0; i < k; ++i) count *= spec.p;
        std::vector<u32> digits(k);
        for (u64 code = 1; code < count; ++code) {
            u64 c = code;
            int top = -1;
            for (int i = 0; i < k; ++i) {
                digits[i] = static_cast<u32>(c % spec.p);
                c /= spec.p;
                if (digits[i]) top = i;
            }
            if (digits[top] != 1) continue;  // one representative per line
            std::vector<u32> v(m.d, 0);
            for (int i = 0; i < k; ++i) {
                if (!digits[i]) continue;
                for (int r = 0; r < m.d; ++r)
                    v[r] = fp.add(v[r], fp.mul(digits[i], null_cols.at(r, i)));
            }
            auto sp = spin(spec, m, {v});
            if (sp.dim() < m.d) {
                out.simple = Ternary::no;
                out.proper_cols = sp.column_basis();
                return Ternary::no;
            }
        }
        return Ternary::yes;
    };
    // decisive fallback for small modules: a module is simple exactly when
    // every nonzero vector generates it
    bool small = lines_of(m.d) <= budget;
    for (int attempt = 0; attempt < 80; ++attempt) {
        std::vector<u32> z(spec.n);
        for (int i = 0; i < spec.n; ++i) z[i] = static_cast<u32>(rng.below(spec.p));
        Matrix w = rho(spec, m, z);
        Matrix null_cols = kernel_basis(fp, w);
        int k = null_cols.cols;
        if (k == 0 || k == m.d) continue;  // invertible or zero: no information
        if (lines_of(k) > budget) {
            // too many null lines to certify; still try a few for splits
            for (int c = 0; c < k; ++c) {
                auto sp = spin(spec, m, {mat_column(null_cols, c)});
                if (sp.dim() < m.d) {
                    out.simple = Ternary::no;
                    out.proper_cols = sp.column_basis();
                    return out;
                }
            }
            continue;
        }
        if (spin_all_lines(null_cols) == Ternary::no) return out;
        // all null lines spin full; check one transpose null vector
        Matrix tnull = kernel_basis(fp, transpose(w));
        if (tnull.cols == 0) throw CheckError("transpose of a singular matrix must be singular");
        auto dual = right_spin(spec, m, mat_column(tnull, 0));
        if (dual.dim() == m.d) {
            out.simple = Ternary::yes;
            return out;
        }
        // proper right submodule: its annihilator is a proper submodule
        Matrix ann = kernel_basis(fp, dual.row_matrix());
        if (ann.cols == 0 || ann.cols == m.d)
            throw CheckError("annihilator of a proper right spin must be proper");
        if (!is_invariant_columns(spec, m, ann))
            throw CheckError("annihilator of a right submodule must be invariant");
        out.simple = Ternary::no;
        out.proper_cols = ann;
        return out;
    }
    if (small) {
        Matrix all = Matrix::identity(m.d);
        if (spin_all_lines(all) == Ternary::no) return out;
        out.simple = Ternary::yes;
        return out;
    }
    return out;
}

inline void chop_rec(const AlgebraSpec& spec, const ModuleRep& m, Rng& rng, u64 budget, ChopResult& out) {
    if (m.d == 0) return;
    auto probe = probe_simple(spec, m, rng, budget);
    if (probe.simple == Ternary::yes) {
        out.factors.push_back(m);
        return;
    }
    if (probe.simple == Ternary::unknown) {
        out.complete = false;
        out.factors.push_back(m);
        return;
    }
    auto sq = sub_quotient(spec, m, probe.proper_cols);
    chop_rec(spec, sq.sub, rng, budget, out);
    chop_rec(spec, sq.quot, rng, budget, out);
}

}  // namespace detail

inline ChopResult chop(const AlgebraSpec& spec, const ModuleRep& m, u64 budget = (1u << 16), u64 seed = 11) {
    Rng rng(seed ^ 0x63686f70ull);
    ChopResult out;
    detail::chop_rec(spec, m, rng, budget, out);
    std::stable_sort(out.factors.begin(), out.factors.end(),
                     [](const ModuleRep& a, const ModuleRep& b) { return a.d < b.d; });
    return out;
}

}  // namespace singorder
