#pragma once
// Finite-dimensional associative unital F_p-algebras, presented by structure
// constants over a distinguished basis: e_i e_j = sum_l sc[i][j][l] e_l.
// Builders produce common presentations (truncated polynomial rings, group
// algebras, monomially bound quiver algebras) together with the bookkeeping a
// kit carries: generators, orthogonal idempotents, distinguished simples.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "singorder/exactfield.hpp"

namespace singorder {

struct ScEntry {
    int i = 0, j = 0, l = 0;
    u32 c = 0;
};

struct AlgebraSpec {
    u32 p = 2;
    int n = 0;
    std::vector<u32> unit;    // coordinates of 1_A
    std::vector<ScEntry> sc;  // sparse structure constants
    // Dense product tensor, tensor[(i*n + j)*n + l]; built by finalize().
    std::vector<u32> tensor;

    Fp field() const { return Fp(p); }

    void finalize() {
        Fp fp(p);
        if (n < 0) throw InputError("algebra dimension must be nonnegative");
        if (static_cast<int>(unit.size()) != n) throw InputError("unit vector has wrong length");
        for (auto& x : unit) x %= p;
        tensor.assign(static_cast<size_t>(n) * n * n, 0);
        for (auto& t : sc) {
            if (t.i < 0 || t.i >= n || t.j < 0 || t.j >= n || t.l < 0 || t.l >= n)
                throw InputError("structure constant index out of range");
            size_t idx = (static_cast<size_t>(t.i) * n + t.j) * n + t.l;
            tensor[idx] = fp.add(tensor[idx], t.c % p);
        }
    }

    bool finalized() const { return tensor.size() == static_cast<size_t>(n) * n * n; }

    // e_i * e_j as a coordinate vector.
    std::vector<u32> basis_product(int i, int j) const {
        std::vector<u32> v(n);
        const u32* row = tensor.data() + (static_cast<size_t>(i) * n + j) * n;
        for (int l = 0; l < n; ++l) v[l] = row[l];
        return v;
    }

    std::vector<u32> mult(const std::vector<u32>& x, const std::vector<u32>& y) const {
        Fp fp(p);
        std::vector<u64> acc(n, 0);
        for (int i = 0; i < n; ++i) {
            if (!x[i]) continue;
            for (int j = 0; j < n; ++j) {
                if (!y[j]) continue;
                u64 c = (static_cast<u64>(x[i]) * y[j]) % p;
                if (!c) continue;
                const u32* row = tensor.data() + (static_cast<size_t>(i) * n + j) * n;
                for (int l = 0; l < n; ++l) acc[l] = (acc[l] + c * row[l]) % p;
            }
        }
        std::vector<u32> v(n);
        for (int l = 0; l < n; ++l) v[l] = static_cast<u32>(acc[l]);
        return v;
    }

    // Matrix of left multiplication by x on the regular module: column j is
    // x * e_j.
    Matrix left_mult_matrix(const std::vector<u32>& x) const {
        Matrix m(n, n);
        std::vector<u32> ej(n, 0);
        for (int j = 0; j < n; ++j) {
            ej.assign(n, 0);
            ej[j] = 1;
            auto col = mult(x, ej);
            for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    Matrix right_mult_matrix(const std::vector<u32>& x) const {
        Matrix m(n, n);
        std::vector<u32> ej(n, 0);
        for (int j = 0; j < n; ++j) {
            ej.assign(n, 0);
            ej[j] = 1;
            auto col = mult(ej, x);
            for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
        }
        return m;
    }
};

// A representation of the algebra on F_p^d: one d x d matrix per basis
// element, subject to m_i m_j = sum_l sc[i][j][l] m_l and unit -> identity.
struct ModuleRep {
    int d = 0;
    std::vector<Matrix> action;  // one entry per algebra basis element
    std::string label;
};

struct LabeledElement {
    std::string label;
    std::vector<u32> coords;
};

struct AlgebraKit {
    AlgebraSpec spec;
    std::vector<LabeledElement> generators;
    std::vector<std::vector<u32>> idempotents;  // orthogonal, summing to 1
    std::vector<ModuleRep> simples;
    std::string provenance;
};

struct AlgebraReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string msg) {
        ok = false;
        if (failures.size() < 32) failures.push_back(std::move(msg));
    }
};

// Associativity on all basis triples plus the two unit laws.  Complete: the
// checked identities are exactly the axioms, bilinearly extended.
inline AlgebraReport validate_algebra(const AlgebraSpec& spec) {
    AlgebraReport rep;
    if (!spec.finalized()) throw InputError("algebra spec not finalized");
    Fp fp(spec.p);
    std::vector<u32> e(spec.n, 0);
    for (int i = 0; i < spec.n; ++i) {
        e.assign(spec.n, 0);
        e[i] = 1;
        auto ue = spec.mult(spec.unit, e);
        auto eu = spec.mult(e, spec.unit);
        if (ue != e) rep.fail("unit * e_" + std::to_string(i) + " != e_" + std::to_string(i));
        if (eu != e) rep.fail("e_" + std::to_string(i) + " * unit != e_" + std::to_string(i));
    }
    for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j) {
            auto ij = spec.basis_product(i, j);
            for (int k = 0; k < spec.n; ++k) {
                std::vector<u32> ek(spec.n, 0);
                ek[k] = 1;
                auto left = spec.mult(ij, ek);
                auto jk = spec.basis_product(j, k);
                std::vector<u32> ei(spec.n, 0);
                ei[i] = 1;
                auto right = spec.mult(ei, jk);
                if (left != right) {
                    rep.fail("associativity fails at triple (" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(k) + ")");
                    if (!rep.ok && rep.failures.size() >= 32) return rep;
                }
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Radical.
//
// Descending chain of ideals cut out by vanishing of characteristic-
// polynomial coefficients of the regular representation at p-power indices:
// level i imposes c_{p^i}(L_{xy}) = 0 for all y in the current ideal (both
// multiplication orders).  Over the prime field each level is the kernel of
// an F_p-linear form family, and every element of the radical survives every
// cut (its products are nilpotent, so all coefficients vanish).  For p > n
// only the trace level runs, which is the classical trace-form radical.
//
// The result is certified after the fact: it must be a two-sided ideal, it
// must be nilpotent within dim A steps, and re-running the chain on A modulo
// the result must yield zero.  The first two facts force the candidate to
// sit inside the radical; the rerun confirms the chain finds nothing further
// in the quotient.  Any overshoot trips a CheckError instead of returning.
// ---------------------------------------------------------------------------

struct RadicalResult {
    Matrix basis;            // rref rows spanning J inside A's coordinates
    std::vector<int> chain;  // dimensions of the descending chain, starting at dim A
};

namespace detail {

// Coefficient of x^(n - idx) in charpoly of the regular action of z.
inline u32 power_trace(const AlgebraSpec& spec, const std::vector<u32>& z, int idx) {
    auto cp = charpoly(spec.field(), spec.left_mult_matrix(z));
    return cp[idx];
}

inline Matrix radical_chain(const AlgebraSpec& spec, std::vector<int>* chain_dims) {
    Fp fp(spec.p);
    int n = spec.n;
    // current ideal basis as rows of a matrix
    Subspace cur(fp, n);
    for (int i = 0; i < n; ++i) {
        std::vector<u32> e(n, 0);
        e[i] = 1;
        cur.insert(e);
    }
    if (chain_dims) chain_dims->push_back(cur.dim());
    for (u64 idx = 1; idx <= static_cast<u64>(n); idx *= spec.p) {
        int m = cur.dim();
        if (m == 0) break;
        std::vector<std::vector<u32>> basis(m);
        for (int k = 0; k < m; ++k) basis[k] = cur.rows[k];
        // next ideal = {x in cur : coefficient form vanishes on x * y for all y in cur}
        Matrix g(m, m);
        for (int jj = 0; jj < m; ++jj)
            for (int k = 0; k < m; ++k)
                g.at(jj, k) = power_trace(spec, spec.mult(basis[k], basis[jj]), static_cast<int>(idx));
        Matrix ker = kernel_basis(fp, g);
        Subspace next(fp, n);
        for (int c = 0; c < ker.cols; ++c) {
            std::vector<u32> v(n, 0);
            for (int k = 0; k < m; ++k) {
                u32 coef = ker.at(k, c);
                if (!coef) continue;
                for (int t = 0; t < n; ++t) v[t] = fp.add(v[t], fp.mul(coef, basis[k][t]));
            }
            next.insert(v);
        }
        cur = next;
        if (chain_dims) chain_dims->push_back(cur.dim());
    }
    return cur.row_matrix();
}

// Quotient of the algebra by a (radical) ideal given by rref rows; the new
// basis consists of the non-pivot coordinates of the old one.
inline AlgebraSpec quotient_spec(const AlgebraSpec& spec, const Matrix& ideal_rows) {
    Fp fp(spec.p);
    Subspace ideal(fp, spec.n);
    for (int i = 0; i < ideal_rows.rows; ++i) {
        std::vector<u32> r(spec.n);
        for (int j = 0; j < spec.n; ++j) r[j] = ideal_rows.at(i, j);
        ideal.insert(r);
    }
    std::vector<bool> is_piv(spec.n, false);
    for (int p : ideal.pivots) is_piv[p] = true;
    std::vector<int> keep;
    for (int j = 0; j < spec.n; ++j)
        if (!is_piv[j]) keep.push_back(j);
    int m = static_cast<int>(keep.size());
    auto project = [&](const std::vector<u32>& v) {
        auto r = ideal.residue(v);
        std::vector<u32> out(m);
        for (int a = 0; a < m; ++a) out[a] = r[keep[a]];
        return out;
    };
    AlgebraSpec q;
    q.p = spec.p;
    q.n = m;
    q.unit = project(spec.unit);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            auto prod = project(spec.basis_product(keep[a], keep[b]));
            for (int l = 0; l < m; ++l)
                if (prod[l]) q.sc.push_back({a, b, l, prod[l]});
        }
    q.finalize();
    return q;
}

}  // namespace detail

inline RadicalResult radical(const AlgebraSpec& spec) {
    if (!spec.finalized()) throw InputError("algebra spec not finalized");
    Fp fp(spec.p);
    RadicalResult res;
    res.basis = detail::radical_chain(spec, &res.chain);

    // --- certification ---
    Subspace j(fp, spec.n);
    std::vector<std::vector<u32>> jbasis;
    for (int i = 0; i < res.basis.rows; ++i) {
        std::vector<u32> r(spec.n);
        for (int c = 0; c < spec.n; ++c) r[c] = res.basis.at(i, c);
        j.insert(r);
        jbasis.push_back(std::move(r));
    }
    if (j.contains(spec.unit) && spec.n > 0)
        throw CheckError("radical self-check: unit lies in the candidate ideal");
    // two-sided ideal
    std::vector<u32> e(spec.n, 0);
    for (const auto& b : jbasis)
        for (int i = 0; i < spec.n; ++i) {
            e.assign(spec.n, 0);
            e[i] = 1;
            if (!j.contains(spec.mult(e, b)) || !j.contains(spec.mult(b, e)))
                throw CheckError("radical self-check: candidate is not a two-sided ideal");
        }
    // nilpotent within dim A steps
    if (!jbasis.empty()) {
        std::vector<std::vector<u32>> power = jbasis;
        int steps = 1;
        while (!power.empty()) {
            if (steps > spec.n) throw CheckError("radical self-check: candidate is not nilpotent");
            Subspace next(fp, spec.n);
            for (const auto& x : power)
                for (const auto& y : jbasis) next.insert(spec.mult(x, y));
            power.clear();
            for (const auto& r : next.rows) power.push_back(r);
            ++steps;
        }
    }
    // the quotient must have zero radical
    AlgebraSpec q = detail::quotient_spec(spec, res.basis);
    Matrix qrad = detail::radical_chain(q, nullptr);
    if (qrad.rows != 0)
        throw CheckError("radical self-check: quotient by candidate still has a radical");
    return res;
}

// ---------------------------------------------------------------------------
// Builders.
// ---------------------------------------------------------------------------

// F_p[x]/(f) for a monic f of degree >= 1, coefficients ascending.
inline AlgebraKit build_univariate(u32 p, const std::vector<u32>& f) {
    Fp fp(p);
    if (f.size() < 2) throw InputError("univariate: need degree >= 1");
    if (f.back() % p != 1) throw InputError("univariate: polynomial must be monic");
    int n = static_cast<int>(f.size()) - 1;
    // powers of x reduced mod f, up to degree 2n-2
    std::vector<std::vector<u32>> pw(std::max(2 * n - 1, 1), std::vector<u32>(n, 0));
    pw[0][0] = 1;
    for (int k = 1; k <= 2 * n - 2; ++k) {
        std::vector<u32> v(n, 0);
        u32 top = pw[k - 1][n - 1];
        for (int i = n - 1; i >= 1; --i) v[i] = pw[k - 1][i - 1];
        v[0] = 0;
        if (top) {
            for (int i = 0; i < n; ++i) v[i] = fp.sub(v[i], fp.mul(top, f[i] % p));
        }
        pw[k] = v;
    }
    AlgebraKit kit;
    kit.spec.p = p;
    kit.spec.n = n;
    kit.spec.unit.assign(n, 0);
    kit.spec.unit[0] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& v = pw[i + j];
            for (int l = 0; l < n; ++l)
                if (v[l]) kit.spec.sc.push_back({i, j, l, v[l]});
        }
    kit.spec.finalize();
    LabeledElement x;
    x.label = "x";
    x.coords.assign(n, 0);
    if (n >= 2)
        x.coords[1] = 1;
    else
        x.coords[0] = fp.neg(f[0] % p);  // degree 1: x is the scalar -f(0)
    kit.generators.push_back(std::move(x));
    kit.provenance = "univariate quotient, degree " + std::to_string(n);
    auto rep = validate_algebra(kit.spec);
    if (!rep.ok) throw CheckError("univariate builder produced an invalid algebra: " + rep.failures[0]);
    return kit;
}

// Group algebra F_p[G] from a multiplication table t[i][j] = index of g_i g_j.
inline AlgebraKit build_group_algebra(u32 p, const std::vector<std::vector<int>>& table) {
    int n = static_cast<int>(table.size());
    if (n == 0) throw InputError("group: empty table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw InputError("group: table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw InputError("group: table entry out of range");
    }
    // identity
    int id = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int j = 0; j < n; ++j) ok &= (table[e][j] == j && table[j][e] == j);
        if (ok) { id = e; break; }
    }
    if (id < 0) throw InputError("group: no identity element in table");
    // Latin square
    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (int j = 0; j < n; ++j) {
            if (seen_row[table[i][j]]) throw InputError("group: repeated entry in row");
            if (seen_col[table[j][i]]) throw InputError("group: repeated entry in column");
            seen_row[table[i][j]] = true;
            seen_col[table[j][i]] = true;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw InputError("group: table is not associative");
    AlgebraKit kit;
    kit.spec.p = p;
    kit.spec.n = n;
    kit.spec.unit.assign(n, 0);
    kit.spec.unit[id] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) kit.spec.sc.push_back({i, j, table[i][j], 1});
    kit.spec.finalize();
    // greedy generating set for enumeration purposes
    std::vector<bool> in_closure(n, false);
    in_closure[id] = true;
    int covered = 1;
    auto close = [&]() {
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < n; ++a)
                if (in_closure[a])
                    for (int b = 0; b < n; ++b)
                        if (in_closure[b] && !in_closure[table[a][b]]) {
                            in_closure[table[a][b]] = true;
                            ++covered;
                            grew = true;
                        }
        }
    };
    for (int g = 0; g < n && covered < n; ++g) {
        if (in_closure[g]) continue;
        in_closure[g] = true;
        ++covered;
        close();
        LabeledElement el;
        el.label = "g" + std::to_string(g);
        el.coords.assign(n, 0);
        el.coords[g] = 1;
        kit.generators.push_back(std::move(el));
    }
    kit.provenance = "group algebra, order " + std::to_string(n);
    auto rep = validate_algebra(kit.spec);
    if (!rep.ok) throw CheckError("group builder produced an invalid algebra: " + rep.failures[0]);
    return kit;
}

struct QuiverArrow {
    int from = 0, to = 0;
    std::string label;
};

// Path algebra of a quiver modulo monomial relations (forbidden paths, given
// as arrow-label words in traversal order) and all paths of length >=
// nilpotency.  Basis: surviving paths; trivial paths first, then by length
// and lexicographic arrow order.  Products compose like functions: p * q is
// "traverse q, then p".
inline AlgebraKit build_bound_quiver(u32 p, int vertices, const std::vector<QuiverArrow>& arrows,
                                     const std::vector<std::vector<std::string>>& relations,
                                     int nilpotency) {
    Fp fp(p);
    if (vertices <= 0) throw InputError("quiver: need at least one vertex");
    if (nilpotency < 1) throw InputError("quiver: nilpotency bound must be >= 1");
    std::map<std::string, int> arrow_by_label;
    for (size_t a = 0; a < arrows.size(); ++a) {
        const auto& ar = arrows[a];
        if (ar.from < 0 || ar.from >= vertices || ar.to < 0 || ar.to >= vertices)
            throw InputError("quiver: arrow endpoint out of range");
        if (ar.label.empty() || arrow_by_label.count(ar.label))
            throw InputError("quiver: arrow labels must be unique and nonempty");
        arrow_by_label[ar.label] = static_cast<int>(a);
    }
    std::vector<std::vector<int>> rel_words;
    for (const auto& r : relations) {
        if (r.empty()) throw InputError("quiver: empty relation");
        std::vector<int> w;
        for (const auto& lbl : r) {
            auto it = arrow_by_label.find(lbl);
            if (it == arrow_by_label.end()) throw InputError("quiver: unknown arrow '" + lbl + "' in relation");
            w.push_back(it->second);
        }
        for (size_t t = 1; t < w.size(); ++t)
            if (arrows[w[t - 1]].to != arrows[w[t]].from)
                throw InputError("quiver: relation word is not a composable path");
        rel_words.push_back(std::move(w));
    }
    auto forbidden = [&](const std::vector<int>& word) {
        for (const auto& r : rel_words) {
            if (r.size() > word.size()) continue;
            for (size_t s = 0; s + r.size() <= word.size(); ++s) {
                bool hit = true;
                for (size_t t = 0; t < r.size(); ++t)
                    if (word[s + t] != r[t]) { hit = false; break; }
                if (hit) return true;
            }
        }
        return false;
    };
    struct Path {
        int src, tgt;
        std::vector<int> word;  // traversal order
    };
    std::vector<Path> paths;
    for (int v = 0; v < vertices; ++v) paths.push_back({v, v, {}});
    std::vector<Path> layer = paths;
    for (int len = 1; len < nilpotency; ++len) {
        std::vector<Path> next;
        for (const auto& pa : layer)
            for (size_t a = 0; a < arrows.size(); ++a) {
                if (arrows[a].from != pa.tgt) continue;
                Path np{pa.src, arrows[a].to, pa.word};
                np.word.push_back(static_cast<int>(a));
                if (!forbidden(np.word)) next.push_back(std::move(np));
            }
        std::sort(next.begin(), next.end(), [](const Path& x, const Path& y) { return x.word < y.word; });
        if (next.empty()) { layer.clear(); break; }
        for (const auto& np : next) paths.push_back(np);
        layer = std::move(next);
    }
    int n = static_cast<int>(paths.size());
    std::map<std::vector<int>, int> index_by_word;
    for (int i = 0; i < n; ++i) {
        auto key = paths[i].word;
        key.insert(key.begin(), paths[i].src);  // disambiguate trivial paths
        index_by_word[key] = i;
    }
    auto find_path = [&](int src, const std::vector<int>& word) -> int {
        auto key = word;
        key.insert(key.begin(), src);
        auto it = index_by_word.find(key);
        return it == index_by_word.end() ? -1 : it->second;
    };
    AlgebraKit kit;
    kit.spec.p = p;
    kit.spec.n = n;
    kit.spec.unit.assign(n, 0);
    for (int v = 0; v < vertices; ++v) kit.spec.unit[v] = 1;  // trivial paths lead the basis
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // p_i * p_j = "traverse j then i": needs src(i) == tgt(j)
            if (paths[i].src != paths[j].tgt) continue;
            std::vector<int> w = paths[j].word;
            w.insert(w.end(), paths[i].word.begin(), paths[i].word.end());
            if (static_cast<int>(w.size()) >= nilpotency || forbidden(w)) continue;
            int l = find_path(paths[j].src, w);
            if (l < 0) continue;  // killed by relations
            kit.spec.sc.push_back({i, j, l, 1});
        }
    kit.spec.finalize();
    for (int v = 0; v < vertices; ++v) {
        std::vector<u32> ev(n, 0);
        ev[v] = 1;
        kit.idempotents.push_back(ev);
        LabeledElement el;
        el.label = "e" + std::to_string(v);
        el.coords = std::move(ev);
        kit.generators.push_back(std::move(el));
    }
    for (size_t a = 0; a < arrows.size(); ++a) {
        int idx = find_path(arrows[a].from, {static_cast<int>(a)});
        LabeledElement el;
        el.label = arrows[a].label;
        el.coords.assign(n, 0);
        if (idx >= 0) el.coords[idx] = 1;  // an arrow killed by nilpotency=1 is zero
        kit.generators.push_back(std::move(el));
    }
    for (int v = 0; v < vertices; ++v) {
        ModuleRep s;
        s.d = 1;
        s.label = "S" + std::to_string(v);
        for (int i = 0; i < n; ++i) {
            Matrix m(1, 1);
            m.at(0, 0) = (paths[i].word.empty() && paths[i].src == v) ? 1 : 0;
            s.action.push_back(m);
        }
        kit.simples.push_back(std::move(s));
    }
    kit.provenance = "bound quiver, " + std::to_string(vertices) + " vertices, " +
                     std::to_string(arrows.size()) + " arrows, nilpotency " + std::to_string(nilpotency);
    auto rep = validate_algebra(kit.spec);
    if (!rep.ok) throw CheckError("quiver builder produced an invalid algebra: " + rep.failures[0]);
    return kit;
}

// Basic structural kit checks that need only element arithmetic.
inline AlgebraReport validate_kit_elements(const AlgebraKit& kit) {
    AlgebraReport rep = validate_algebra(kit.spec);
    Fp fp(kit.spec.p);
    for (const auto& g : kit.generators)
        if (static_cast<int>(g.coords.size()) != kit.spec.n)
            rep.fail("generator '" + g.label + "' has wrong coordinate length");
    const auto& es = kit.idempotents;
    for (size_t a = 0; a < es.size(); ++a) {
        if (static_cast<int>(es[a].size()) != kit.spec.n) {
            rep.fail("idempotent " + std::to_string(a) + " has wrong coordinate length");
            continue;
        }
        if (kit.spec.mult(es[a], es[a]) != es[a])
            rep.fail("idempotent " + std::to_string(a) + " is not idempotent");
        for (size_t b = 0; b < es.size(); ++b) {
            if (a == b) continue;
            auto prod = kit.spec.mult(es[a], es[b]);
            for (u32 x : prod)
                if (x) {
                    rep.fail("idempotents " + std::to_string(a) + "," + std::to_string(b) +
                             " are not orthogonal");
                    break;
                }
        }
    }
    if (!es.empty()) {
        std::vector<u32> sum(kit.spec.n, 0);
        for (const auto& e : es)
            for (int i = 0; i < kit.spec.n; ++i) sum[i] = fp.add(sum[i], e[i]);
        if (sum != kit.spec.unit) rep.fail("idempotents do not sum to the unit");
    }
    return rep;
}

}  // namespace singorder
