#pragma once
// The stable module category: homs modulo maps that factor through a
// projective, stable isomorphism with two-sided witnesses, and short exact
// sequences packaged as triangles.  Rotating a triangle applies the syzygy
// construction to a degeneration certificate and returns a new certificate,
// built from an explicit Schanuel isomorphism between two free covers of the
// same middle term, so every produced triangle is again certificate-backed.

#include "singorder/degen.hpp"

namespace singorder {

inline ModuleRep free_module(const AlgebraSpec& spec, int copies) {
    std::vector<ModuleRep> parts(copies, regular_module(spec));
    auto m = direct_sum(spec, parts);
    m.label = copies > 0 ? "A^" + std::to_string(copies) : "0";
    return m;
}

namespace detail {

inline std::vector<u32> flatten(const Matrix& m) { return m.a; }

inline Matrix row_slice(const Matrix& m, int lo, int hi) {
    Matrix out(hi - lo, m.cols);
    for (int r = lo; r < hi; ++r)
        for (int c = 0; c < m.cols; ++c) out.at(r - lo, c) = m.at(r, c);
    return out;
}

// Module map from a rank-r free module into C determined by lifting each
// generator image through a surjective morphism: target * out == rhs.
inline Matrix lift_generators(const AlgebraSpec& spec, const ModuleRep& c, int rank,
                              const Matrix& target, const Matrix& rhs) {
    Fp fp(spec.p);
    int n = spec.n;
    Matrix out(c.d, rank * n);
    for (int a = 0; a < rank; ++a) {
        std::vector<u32> gen(static_cast<size_t>(rank) * n, 0);
        for (int i = 0; i < n; ++i) gen[a * n + i] = spec.unit[i];
        auto w = mat_apply(fp, rhs, gen);
        Matrix wcol(static_cast<int>(w.size()), 1);
        for (size_t r = 0; r < w.size(); ++r) wcol.at(static_cast<int>(r), 0) = w[r];
        auto x = solve(fp, target, wcol);
        if (!x) throw CheckError("generator image has no preimage under a surjection");
        std::vector<u32> xv = mat_column(*x, 0);
        for (int i = 0; i < n; ++i) {
            auto col = mat_apply(fp, c.action[i], xv);
            for (int r = 0; r < c.d; ++r) out.at(r, a * n + i) = col[r];
        }
    }
    return out;
}

// Extract the block [lo, lo+len) of a representation, requiring the
// complementary block structure to be literal (off-diagonal blocks zero).
inline ModuleRep slice_block(const ModuleRep& m, int lo, int len) {
    ModuleRep out;
    out.d = len;
    for (const auto& act : m.action) {
        for (int r = 0; r < m.d; ++r)
            for (int c = 0; c < m.d; ++c) {
                bool rin = r >= lo && r < lo + len, cin = c >= lo && c < lo + len;
                if (rin != cin && act.at(r, c) != 0)
                    throw CheckError("representation is not block-diagonal at the requested cut");
            }
        Matrix blk(len, len);
        for (int r = 0; r < len; ++r)
            for (int c = 0; c < len; ++c) blk.at(r, c) = act.at(lo + r, lo + c);
        out.action.push_back(std::move(blk));
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stable homs.
// ---------------------------------------------------------------------------

struct StableHom {
    std::vector<Matrix> hom;           // basis of Hom(M, N)
    Subspace factoring;                // flattened maps factoring through a projective
    std::vector<Matrix> stable_basis;  // hom elements spanning a complement
    int stable_dim() const { return static_cast<int>(stable_basis.size()); }
};

// A map factors through some projective exactly when it factors through the
// free cover of its target, so the factoring subspace is the image of
// Hom(M, F_N) under composition with the cover map.
inline StableHom stable_hom(const AlgebraSpec& spec, const Matrix& rad_rows, const ModuleRep& m,
                            const ModuleRep& n) {
    Fp fp(spec.p);
    StableHom out{std::vector<Matrix>(), Subspace(fp, n.d * m.d), std::vector<Matrix>()};
    out.hom = hom_basis(spec, m, n);
    auto cover = free_cover(spec, n, rad_rows);
    for (const auto& g : hom_basis(spec, m, cover.mod))
        out.factoring.insert(detail::flatten(mat_mul(fp, cover.pi, g)));
    Subspace acc = out.factoring;
    for (const auto& h : out.hom)
        if (acc.insert(detail::flatten(h))) out.stable_basis.push_back(h);
    return out;
}

inline int stable_hom_dim(const AlgebraSpec& spec, const Matrix& rad_rows, const ModuleRep& m,
                          const ModuleRep& n) {
    return stable_hom(spec, rad_rows, m, n).stable_dim();
}

inline bool is_stably_zero(const AlgebraSpec& spec, const Matrix& rad_rows, const ModuleRep& m) {
    auto sh = stable_hom(spec, rad_rows, m, m);
    return sh.factoring.contains(detail::flatten(Matrix::identity(m.d)));
}

// ---------------------------------------------------------------------------
// Stable isomorphism.
// ---------------------------------------------------------------------------

struct StableIso {
    Ternary verdict = Ternary::unknown;
    Matrix f;  // N x M with g f = id_M and f g = id_N through projectives
    Matrix g;  // M x N
};

namespace detail {

// Given f, solve linearly for g with g f - id_M and f g - id_N inside the
// factoring subspaces; returns g when the stacked affine system is solvable.
inline std::optional<Matrix> stable_inverse_for(const AlgebraSpec& spec, const ModuleRep& m,
                                                const ModuleRep& n, const Matrix& f,
                                                const std::vector<Matrix>& hom_nm,
                                                const StableHom& end_m, const StableHom& end_n) {
    Fp fp(spec.p);
    int rows_m = m.d * m.d, rows_n = n.d * n.d;
    int nh = static_cast<int>(hom_nm.size());
    int na = end_m.factoring.dim(), nb = end_n.factoring.dim();
    Matrix sys(rows_m + rows_n, nh + na + nb);
    Matrix rhs(rows_m + rows_n, 1);
    auto put_col = [&](int col, const std::vector<u32>& top, const std::vector<u32>& bottom) {
        for (int r = 0; r < rows_m; ++r) sys.at(r, col) = top.empty() ? 0 : top[r];
        for (int r = 0; r < rows_n; ++r) sys.at(rows_m + r, col) = bottom.empty() ? 0 : bottom[r];
    };
    for (int k = 0; k < nh; ++k)
        put_col(k, flatten(mat_mul(fp, hom_nm[k], f)), flatten(mat_mul(fp, f, hom_nm[k])));
    for (int i = 0; i < na; ++i) {
        std::vector<u32> w = end_m.factoring.rows[i];
        for (auto& x : w) x = fp.neg(x);
        put_col(nh + i, w, {});
    }
    for (int j = 0; j < nb; ++j) {
        std::vector<u32> w = end_n.factoring.rows[j];
        for (auto& x : w) x = fp.neg(x);
        put_col(nh + na + j, {}, w);
    }
    auto idm = flatten(Matrix::identity(m.d));
    auto idn = flatten(Matrix::identity(n.d));
    for (int r = 0; r < rows_m; ++r) rhs.at(r, 0) = idm[r];
    for (int r = 0; r < rows_n; ++r) rhs.at(rows_m + r, 0) = idn[r];
    auto sol = solve(fp, sys, rhs);
    if (!sol) return std::nullopt;
    Matrix g(m.d, n.d);
    for (int k = 0; k < nh; ++k) {
        u32 ck = sol->at(k, 0);
        if (ck) g = mat_add(fp, g, mat_scale(fp, ck, hom_nm[k]));
    }
    // the witness must satisfy both congruences on the nose
    Matrix gf = mat_sub(fp, mat_mul(fp, g, f), Matrix::identity(m.d));
    Matrix fg = mat_sub(fp, mat_mul(fp, f, g), Matrix::identity(n.d));
    if (!end_m.factoring.contains(flatten(gf)) || !end_n.factoring.contains(flatten(fg)))
        throw CheckError("stable inverse solution fails its congruences");
    return g;
}

}  // namespace detail

// Stable isomorphism test.  "no" is certified: either the four stable hom
// dimensions distinguish the modules, or every stable class of maps M -> N
// was tried exhaustively and none is a unit.  "yes" carries a two-sided
// witness.  "unknown" only when the class enumeration exceeds the budget.
inline StableIso stable_iso(const AlgebraSpec& spec, const Matrix& rad_rows, const ModuleRep& m,
                            const ModuleRep& n, u64 budget = (1u << 16), u64 seed = 23) {
    Fp fp(spec.p);
    StableIso out;
    auto end_m = stable_hom(spec, rad_rows, m, m);
    auto end_n = stable_hom(spec, rad_rows, n, n);
    auto mn = stable_hom(spec, rad_rows, m, n);
    auto nm = stable_hom(spec, rad_rows, n, m);
    int s = mn.stable_dim();
    if (end_m.stable_dim() != end_n.stable_dim() || s != nm.stable_dim() ||
        s != end_m.stable_dim()) {
        out.verdict = Ternary::no;
        return out;
    }
    auto attempt = [&](const Matrix& f) -> bool {
        auto g = detail::stable_inverse_for(spec, m, n, f, nm.hom, end_m, end_n);
        if (!g) return false;
        out.verdict = Ternary::yes;
        out.f = f;
        out.g = *g;
        return true;
    };
    u64 classes = 1;
    bool exhaustive = true;
    for (int i = 0; i < s; ++i) {
        classes *= spec.p;
        if (classes > budget) {
            exhaustive = false;
            break;
        }
    }
    if (exhaustive) {
        for (u64 code = 0; code < classes; ++code) {
            Matrix f(n.d, m.d);
            u64 c = code;
            for (int i = 0; i < s; ++i) {
                u32 ci = static_cast<u32>(c % spec.p);
                c /= spec.p;
                if (ci) f = mat_add(fp, f, mat_scale(fp, ci, mn.stable_basis[i]));
            }
            if (attempt(f)) return out;
        }
        out.verdict = Ternary::no;
        return out;
    }
    for (const auto& h : mn.stable_basis)
        if (attempt(h)) return out;
    Rng rng(seed);
    for (int t = 0; t < 256; ++t) {
        Matrix f(n.d, m.d);
        for (int i = 0; i < s; ++i) {
            u32 ci = static_cast<u32>(rng.below(spec.p));
            if (ci) f = mat_add(fp, f, mat_scale(fp, ci, mn.stable_basis[i]));
        }
        if (attempt(f)) return out;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Triangles.
// ---------------------------------------------------------------------------

// A left triangle is carried by a short exact sequence 0 -> b -> c -> d -> 0;
// the connecting morphism to the syzygy of d is implicit.
struct LeftTriangle {
    ModuleRep b, c, d;
    Matrix u;  // c x b
    Matrix v;  // d x c
};

inline AlgebraReport verify_triangle(const AlgebraSpec& spec, const LeftTriangle& t) {
    AlgebraReport rep;
    Fp fp(spec.p);
    for (const auto* m : {&t.b, &t.c, &t.d}) {
        auto mr = validate_module(spec, *m);
        if (!mr.ok) {
            rep.fail("triangle module is invalid: " + mr.failures[0]);
            return rep;
        }
    }
    if (t.u.rows != t.c.d || t.u.cols != t.b.d || t.v.rows != t.d.d || t.v.cols != t.c.d) {
        rep.fail("triangle maps have wrong shapes");
        return rep;
    }
    if (!is_morphism(spec, t.b, t.c, t.u)) rep.fail("first triangle map is not a morphism");
    if (!is_morphism(spec, t.c, t.d, t.v)) rep.fail("second triangle map is not a morphism");
    if (rank_of(fp, t.u) != t.b.d) rep.fail("first triangle map is not injective");
    if (rank_of(fp, t.v) != t.d.d) rep.fail("second triangle map is not surjective");
    if (!mat_mul(fp, t.v, t.u).is_zero()) rep.fail("triangle composite is nonzero");
    if (t.c.d != t.b.d + t.d.d) rep.fail("triangle middle dimension does not match the ends");
    return rep;
}

inline LeftTriangle triangle_from_certificate(const AlgebraSpec& spec,
                                              const DegenerationCertificate& cert) {
    LeftTriangle t;
    t.c = certificate_middle(spec, cert);
    t.u = cert.u;
    t.v = cert.v;
    if (cert.pushout) {
        t.b = cert.z;
        t.d = cert.y;
    } else {
        t.b = cert.y;
        t.d = cert.z;
    }
    return t;
}

// Reads a certificate back off a triangle whose middle is a literal block sum
// ending in d.  With right_split > 0 the last right_split coordinates of d
// are a direct summand R to be moved across: the map onto the remaining
// block Z stays surjective, its kernel K receives a section of K -> R
// (solved exactly; R must split off, e.g. be projective), and B + R = K
// explicitly, giving 0 -> B+R -> X+R+Z -> Z -> 0 after a block permutation.
inline DegenerationCertificate certificate_from_triangle(const AlgebraSpec& spec,
                                                         const LeftTriangle& t,
                                                         int right_split = 0) {
    Fp fp(spec.p);
    int xd = t.c.d - t.d.d;
    if (xd < 0) throw InputError("triangle middle is smaller than its third object");
    if (right_split == 0) {
        DegenerationCertificate c;
        c.x = detail::slice_block(t.c, 0, xd);
        ModuleRep tail = detail::slice_block(t.c, xd, t.d.d);
        for (int i = 0; i < spec.n; ++i)
            if (!(tail.action[i] == t.d.action[i]))
                throw CheckError("triangle middle does not end in its third object");
        c.y = t.b;
        c.z = t.d;
        c.u = t.u;
        c.v = t.v;
        auto rep = verify_certificate(spec, c);
        if (!rep.ok) throw CheckError("triangle does not carry a certificate: " + rep.failures[0]);
        return c;
    }
    if (right_split < 0 || right_split >= t.d.d)
        throw InputError("right split must cut a proper nonzero tail of the third object");
    int zd = t.d.d - right_split;
    ModuleRep zrep = detail::slice_block(t.d, 0, zd);
    ModuleRep rrep = detail::slice_block(t.d, zd, right_split);
    Matrix alpha = detail::row_slice(t.v, 0, zd);        // c -> Z
    Matrix beta = detail::row_slice(t.v, zd, t.d.d);     // c -> R
    auto ki = morphism_kernel_image(spec, t.c, zrep, alpha);
    const ModuleRep& krep = ki.kernel;
    Matrix q = mat_mul(fp, beta, ki.kernel_incl);        // K -> R, surjective
    // section of q as a module map
    auto sect_basis = hom_basis(spec, rrep, krep);
    Matrix ssys(right_split * right_split, static_cast<int>(sect_basis.size()));
    for (size_t k = 0; k < sect_basis.size(); ++k) {
        auto col = detail::flatten(mat_mul(fp, q, sect_basis[k]));
        for (int r = 0; r < ssys.rows; ++r) ssys.at(r, static_cast<int>(k)) = col[r];
    }
    auto idr = detail::flatten(Matrix::identity(right_split));
    Matrix rhs(ssys.rows, 1);
    for (int r = 0; r < ssys.rows; ++r) rhs.at(r, 0) = idr[r];
    auto coef = solve(fp, ssys, rhs);
    if (!coef) throw InputError("right block does not split off the kernel");
    Matrix sect(krep.d, right_split);
    for (size_t k = 0; k < sect_basis.size(); ++k) {
        u32 ck = coef->at(static_cast<int>(k), 0);
        if (ck) sect = mat_add(fp, sect, mat_scale(fp, ck, sect_basis[k]));
    }
    // B + R = K via (u, section)
    auto uk = solve(fp, ki.kernel_incl, t.u);
    if (!uk) throw CheckError("first triangle map does not land in the kernel");
    Matrix psi = hstack(*uk, sect);
    inverse(fp, psi);  // must be invertible
    // permute the middle from (X | Z | R) to (X | R | Z)
    ModuleRep xrep = detail::slice_block(t.c, 0, xd);
    DegenerationCertificate c;
    c.x = direct_sum(spec, xrep, rrep);
    c.y = direct_sum(spec, t.b, rrep);
    c.z = zrep;
    ModuleRep mid = direct_sum(spec, c.x, c.z);
    Matrix perm(t.c.d, mid.d);  // mid coords -> c coords
    for (int i = 0; i < xd; ++i) perm.at(i, i) = 1;
    for (int i = 0; i < right_split; ++i) perm.at(xd + zd + i, xd + i) = 1;
    for (int i = 0; i < zd; ++i) perm.at(xd + i, xd + right_split + i) = 1;
    Matrix perm_inv = transpose(perm);
    c.u = mat_mul(fp, perm_inv, mat_mul(fp, ki.kernel_incl, psi));
    c.v = mat_mul(fp, alpha, perm);
    auto rep = verify_certificate(spec, c);
    if (!rep.ok) throw CheckError("split certificate failed verification: " + rep.failures[0]);
    return c;
}

// ---------------------------------------------------------------------------
// Rotation: from a certificate for X <= Y to one for the syzygies.
// ---------------------------------------------------------------------------

struct RotationResult {
    DegenerationCertificate cert;  // x = O(X) + free, y = O(Y) + free, z = O(Z) + free
    int x_core = 0, y_core = 0, z_core = 0;  // dimensions of the leading syzygy blocks
};

// Input: a plain-shape certificate 0 -> Y -> X+Z -> Z -> 0.  Two free covers
// of the middle are compared: one assembled from covers of Y and Z along the
// sequence, one covering X and Z blockwise.  Schanuel's lemma, made explicit
// through lifted comparison maps, exchanges their kernels up to free
// summands, turning the kernel sequence
//   0 -> O(Y) + A^s -> K -> O(Z) -> 0
// into a certificate between syzygies padded by free modules.
inline RotationResult rotate(const AlgebraSpec& spec, const Matrix& rad_rows,
                             const DegenerationCertificate& cert) {
    Fp fp(spec.p);
    if (cert.pushout) throw InputError("rotation expects the plain certificate shape");
    {
        auto rep = verify_certificate(spec, cert);
        if (!rep.ok) throw InputError("rotation input certificate is invalid: " + rep.failures[0]);
    }
    int n = spec.n;
    const ModuleRep& b = cert.y;
    const ModuleRep& d = cert.z;
    const ModuleRep& m = cert.x;
    ModuleRep c = certificate_middle(spec, cert);

    auto syz_b = syzygy(spec, b, rad_rows);
    auto syz_m = syzygy(spec, m, rad_rows);
    auto syz_d = syzygy(spec, d, rad_rows);
    int rb = syz_b.cover.rank, rm = syz_m.cover.rank, rd = syz_d.cover.rank;
    int s = std::max(0, rm - rb);

    // first cover of the middle: F_B + A^s + F_D, with the free filler dead
    // and the last block lifted through the surjection onto Z
    ModuleRep g_rep = direct_sum(spec, {syz_b.cover.mod, free_module(spec, s), syz_d.cover.mod});
    Matrix lambda = detail::lift_generators(spec, c, rd, cert.v, syz_d.cover.pi);
    if (!(mat_mul(fp, cert.v, lambda) == syz_d.cover.pi))
        throw CheckError("lift through the sequence surjection failed");
    Matrix theta = hstack(hstack(mat_mul(fp, cert.u, syz_b.cover.pi), Matrix(c.d, s * n)), lambda);
    if (rank_of(fp, theta) != c.d) throw CheckError("assembled cover of the middle is not surjective");
    auto kker = morphism_kernel_image(spec, g_rep, c, theta);
    const ModuleRep& krep = kker.kernel;
    const Matrix& incl_k = kker.kernel_incl;

    // kernel sequence maps: O(Y) + A^s includes into K, K projects onto O(Z)
    int fb_d = syz_b.cover.mod.d;
    Matrix j_amb(g_rep.d, syz_b.omega.d + s * n);
    for (int r = 0; r < syz_b.incl.rows; ++r)
        for (int cc = 0; cc < syz_b.incl.cols; ++cc) j_amb.at(r, cc) = syz_b.incl.at(r, cc);
    for (int i = 0; i < s * n; ++i) j_amb.at(fb_d + i, syz_b.omega.d + i) = 1;
    auto j = solve(fp, incl_k, j_amb);
    if (!j) throw CheckError("syzygy of the left end does not land in the kernel");
    Matrix fd_rows = detail::row_slice(incl_k, fb_d + s * n, g_rep.d);
    auto q = solve(fp, syz_d.incl, fd_rows);
    if (!q) throw CheckError("kernel does not project onto the syzygy of the third object");
    if (!mat_mul(fp, *q, *j).is_zero() || rank_of(fp, *j) != j->cols ||
        rank_of(fp, *q) != syz_d.omega.d || krep.d != j->cols + syz_d.omega.d)
        throw CheckError("kernel sequence is not exact");

    // blockwise cover of the middle and the explicit kernel exchange
    ModuleRep h_rep = direct_sum(spec, syz_m.cover.mod, syz_d.cover.mod);
    Matrix delta = block_diag(syz_m.cover.pi, syz_d.cover.pi);
    ModuleRep kerd_rep = direct_sum(spec, syz_m.omega, syz_d.omega);
    Matrix incl_delta = block_diag(syz_m.incl, syz_d.incl);
    int grank = rb + s + rd, hrank = rm + rd;
    Matrix tau1 = detail::lift_generators(spec, h_rep, grank, delta, theta);
    Matrix tau2 = detail::lift_generators(spec, g_rep, hrank, theta, delta);
    if (!(mat_mul(fp, delta, tau1) == theta) || !(mat_mul(fp, theta, tau2) == delta))
        throw CheckError("comparison lifts between the covers are wrong");

    // (x, t) in K + H maps to (t - tau1(i x + tau2 t), i x + tau2 t)
    Matrix psi(kerd_rep.d + g_rep.d, krep.d + h_rep.d);
    auto put_psi_col = [&](int col, const std::vector<u32>& gv, const std::vector<u32>& hv) {
        // gv: image in G of the K + H basis vector; hv: its H component
        std::vector<u32> w(hv);
        auto t1 = mat_apply(fp, tau1, gv);
        for (size_t r = 0; r < w.size(); ++r) w[r] = fp.sub(w[r], t1[r]);
        Matrix wcol(h_rep.d, 1);
        for (int r = 0; r < h_rep.d; ++r) wcol.at(r, 0) = w[r];
        auto wk = solve(fp, incl_delta, wcol);
        if (!wk) throw CheckError("exchanged vector is not in the blockwise kernel");
        for (int r = 0; r < kerd_rep.d; ++r) psi.at(r, col) = wk->at(r, 0);
        for (int r = 0; r < g_rep.d; ++r) psi.at(kerd_rep.d + r, col) = gv[r];
    };
    for (int col = 0; col < krep.d; ++col)
        put_psi_col(col, mat_column(incl_k, col), std::vector<u32>(h_rep.d, 0));
    for (int t = 0; t < h_rep.d; ++t) {
        std::vector<u32> hv(h_rep.d, 0);
        hv[t] = 1;
        put_psi_col(krep.d + t, mat_column(tau2, t), hv);
    }
    Matrix psi_inv = inverse(fp, psi);
    if (!is_morphism(spec, direct_sum(spec, krep, h_rep), direct_sum(spec, kerd_rep, g_rep), psi))
        throw CheckError("kernel exchange is not a module map");

    // final literal blocks
    int jx = rb + s - rm;
    RotationResult out;
    out.x_core = syz_m.omega.d;
    out.y_core = syz_b.omega.d;
    out.z_core = syz_d.omega.d;
    DegenerationCertificate oc;
    oc.x = direct_sum(spec, syz_m.omega, free_module(spec, jx));
    oc.y = direct_sum(spec, syz_b.omega, free_module(spec, s));
    oc.z = direct_sum(spec, syz_d.omega, free_module(spec, hrank));
    ModuleRep mid = direct_sum(spec, oc.x, oc.z);

    // permutation from the final block order to kerd + G coordinates
    Matrix perm(kerd_rep.d + g_rep.d, mid.d);
    int base = kerd_rep.d;  // start of G coordinates
    int src = 0;
    for (int i = 0; i < syz_m.omega.d; ++i) perm.at(i, src++) = 1;
    for (int t = 0; t < jx * n; ++t) perm.at(base + t, src++) = 1;
    for (int i = 0; i < syz_d.omega.d; ++i) perm.at(syz_m.omega.d + i, src++) = 1;
    for (int t = 0; t < hrank * n; ++t) perm.at(base + jx * n + t, src++) = 1;
    Matrix perm_inv = transpose(perm);

    Matrix jpad = vstack(*j, Matrix(h_rep.d, j->cols));
    oc.u = mat_mul(fp, perm_inv, mat_mul(fp, psi, jpad));
    Matrix back = mat_mul(fp, psi_inv, perm);  // mid -> K + H coordinates
    Matrix back_k = detail::row_slice(back, 0, krep.d);
    Matrix back_h = detail::row_slice(back, krep.d, krep.d + h_rep.d);
    oc.v = vstack(mat_mul(fp, *q, back_k), back_h);

    auto rep = verify_certificate(spec, oc);
    if (!rep.ok) throw CheckError("rotated certificate failed verification: " + rep.failures[0]);
    out.cert = std::move(oc);
    return out;
}

}  // namespace singorder
