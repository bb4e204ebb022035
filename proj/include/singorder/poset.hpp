#pragma once
// Module families over one algebra: exhaustive enumeration of representation
// points in a fixed dimension, de-duplication into classes, square comparison
// grids for the three orders, partial-order axiom checking, and DOT export.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "singorder/stab.hpp"

namespace singorder {

enum class DedupMode { none, iso, stable_iso, stab_iso };
enum class RelationKind { deg, st, qst };

inline const char* to_string(DedupMode m) {
    switch (m) {
        case DedupMode::none: return "none";
        case DedupMode::iso: return "iso";
        case DedupMode::stable_iso: return "stable_iso";
        default: return "stab_iso";
    }
}

inline const char* to_string(RelationKind k) {
    switch (k) {
        case RelationKind::deg: return "deg";
        case RelationKind::st: return "st";
        default: return "qst";
    }
}

struct FamilyOptions {
    u64 iso_budget = (1u << 20);
    u64 stable_budget = (1u << 16);
    int stab_level = 6;  // level bound for the stabilized equivalence
    u64 seed = 11;
};

struct ModuleFamily {
    std::vector<ModuleRep> members;
    u64 tried = 0;       // generator assignments examined
    u64 raw_points = 0;  // valid points before dedup
    bool complete = true;
    std::vector<std::string> unresolved;  // equivalence tests that stayed open
};

namespace detail {

// Basis elements as words in the generators: node 0 is the unit, every other
// node is generator * parent, and the chosen nodes form a linear basis of the
// algebra.  combo.at(t, i) is the weight of word t in basis element e_i.
struct GeneratorWords {
    std::vector<std::pair<int, int>> nodes;  // (parent index, generator index)
    Matrix combo;
};

inline GeneratorWords generator_words(const AlgebraSpec& spec,
                                      const std::vector<LabeledElement>& gens) {
    Fp fp(spec.p);
    GeneratorWords out;
    Subspace span(fp, spec.n);
    std::vector<std::vector<u32>> vecs;
    out.nodes.push_back({-1, -1});
    vecs.push_back(spec.unit);
    if (!span.insert(spec.unit)) throw InputError("unit vector is zero");
    for (size_t t = 0; t < out.nodes.size() && span.dim() < spec.n; ++t)
        for (size_t g = 0; g < gens.size() && span.dim() < spec.n; ++g) {
            auto v = spec.mult(gens[g].coords, vecs[t]);
            if (!span.insert(v)) continue;
            out.nodes.push_back({static_cast<int>(t), static_cast<int>(g)});
            vecs.push_back(std::move(v));
        }
    if (span.dim() != spec.n) throw InputError("generators and unit do not span the algebra");
    Matrix c(spec.n, spec.n);
    for (int t = 0; t < spec.n; ++t)
        for (int i = 0; i < spec.n; ++i) c.at(i, t) = vecs[t][i];
    out.combo = inverse(fp, c);
    return out;
}

// Full action reconstructed from one matrix per generator; empty when the
// assignment fails the relation or consistency checks.
inline bool reconstruct_point(const AlgebraSpec& spec, const std::vector<LabeledElement>& gens,
                              const GeneratorWords& words, const std::vector<Matrix>& assigned,
                              int d, ModuleRep& out) {
    Fp fp(spec.p);
    std::vector<Matrix> w(words.nodes.size());
    w[0] = Matrix::identity(d);
    for (size_t t = 1; t < words.nodes.size(); ++t)
        w[t] = mat_mul(fp, assigned[words.nodes[t].second], w[words.nodes[t].first]);
    out.d = d;
    out.action.assign(spec.n, Matrix(d, d));
    for (int i = 0; i < spec.n; ++i) {
        Matrix& acc = out.action[i];
        for (int t = 0; t < spec.n; ++t) {
            u32 c = words.combo.at(t, i);
            if (!c) continue;
            for (size_t idx = 0; idx < acc.a.size(); ++idx)
                acc.a[idx] = fp.add(acc.a[idx], fp.mul(c, w[t].a[idx]));
        }
    }
    if (!validate_module(spec, out).ok) return false;
    // the assigned matrices must agree with the reconstructed action on the
    // generators themselves, otherwise the same module would be counted once
    // per inconsistent assignment
    for (size_t g = 0; g < gens.size(); ++g) {
        Matrix r(d, d);
        for (int i = 0; i < spec.n; ++i) {
            u32 c = gens[g].coords[i] % spec.p;
            if (!c) continue;
            for (size_t idx = 0; idx < r.a.size(); ++idx)
                r.a[idx] = fp.add(r.a[idx], fp.mul(c, out.action[i].a[idx]));
        }
        if (!(r == assigned[g])) return false;
    }
    return true;
}

inline void dedup_members(std::vector<ModuleRep>& mods,
                          const std::function<std::vector<int>(const ModuleRep&)>& fingerprint,
                          const std::function<Ternary(const ModuleRep&, const ModuleRep&)>& equiv,
                          std::vector<std::string>& unresolved) {
    std::vector<ModuleRep> kept;
    std::map<std::vector<int>, std::vector<size_t>> buckets;
    for (auto& m : mods) {
        auto key = fingerprint(m);
        bool merged = false;
        for (size_t idx : buckets[key]) {
            Ternary v = equiv(kept[idx], m);
            if (v == Ternary::yes) {
                merged = true;
                break;
            }
            if (v == Ternary::unknown)
                unresolved.push_back(kept[idx].label + " vs " + m.label +
                                     ": equivalence undecided");
        }
        if (!merged) {
            buckets[key].push_back(kept.size());
            kept.push_back(std::move(m));
        }
    }
    mods = std::move(kept);
}

}  // namespace detail

// Collapse a member list to representatives of the requested equivalence.
// Cheap invariants bucket the members first; undecided tests keep both sides
// and leave a note, so over-counting is visible but never silent merging.
inline ModuleFamily dedup_family(const AlgebraSpec& spec, std::vector<ModuleRep> members,
                                 DedupMode mode, FamilyOptions opt = {}) {
    ModuleFamily fam;
    fam.tried = fam.raw_points = members.size();
    fam.members = std::move(members);
    if (mode == DedupMode::none || fam.members.size() <= 1) return fam;
    Matrix rad_rows(0, 0);
    if (mode != DedupMode::iso) rad_rows = radical(spec).basis;
    Fp fp(spec.p);
    std::function<std::vector<int>(const ModuleRep&)> fingerprint;
    std::function<Ternary(const ModuleRep&, const ModuleRep&)> equiv;
    if (mode == DedupMode::iso) {
        fingerprint = [&fp](const ModuleRep& m) {
            std::vector<int> key = {m.d};
            for (const auto& act : m.action) key.push_back(rank_of(fp, act));
            return key;
        };
        equiv = [&spec, &opt](const ModuleRep& a, const ModuleRep& b) {
            return iso_test(spec, a, b, opt.iso_budget, opt.seed).verdict;
        };
    } else if (mode == DedupMode::stable_iso) {
        fingerprint = [&spec, rad_rows](const ModuleRep& m) {
            return std::vector<int>{stable_hom_dim(spec, rad_rows, m, m)};
        };
        equiv = [&spec, &opt, rad_rows](const ModuleRep& a, const ModuleRep& b) {
            return stable_iso(spec, rad_rows, a, b, opt.stable_budget, opt.seed).verdict;
        };
    } else {
        fingerprint = [](const ModuleRep&) { return std::vector<int>{0}; };
        equiv = [&spec, &opt, rad_rows](const ModuleRep& a, const ModuleRep& b) {
            return stab_iso_at_level(spec, rad_rows, stab_object(a), stab_object(b),
                                     opt.stab_level, opt.stable_budget, opt.seed)
                .verdict;
        };
    }
    detail::dedup_members(fam.members, fingerprint, equiv, fam.unresolved);
    return fam;
}

// All valid representation points of dimension d, found by assigning one
// matrix per generator and keeping the assignments that extend to the whole
// algebra.  The walk stops after `budget` assignments and flags the family as
// incomplete when the full space is larger.
inline ModuleFamily enumerate_modules(const AlgebraKit& kit, int d, DedupMode mode, u64 budget,
                                      FamilyOptions opt = {}) {
    const AlgebraSpec& spec = kit.spec;
    if (d < 0) throw InputError("negative dimension");
    ModuleFamily fam;
    if (d == 0) {
        fam.members.push_back(zero_module(spec));
        fam.tried = fam.raw_points = 1;
        return fam;
    }
    std::vector<LabeledElement> gens = kit.generators;
    if (gens.empty()) {
        for (int i = 0; i < spec.n; ++i) {
            LabeledElement el;
            el.label = "e" + std::to_string(i);
            el.coords.assign(spec.n, 0);
            el.coords[i] = 1;
            gens.push_back(std::move(el));
        }
    }
    auto words = detail::generator_words(spec, gens);
    int cells = static_cast<int>(gens.size()) * d * d;
    std::vector<u32> digits(cells, 0);
    std::vector<Matrix> assigned(gens.size(), Matrix(d, d));
    ModuleRep point;
    fam.complete = false;
    for (u64 step = 0; step < budget; ++step) {
        ++fam.tried;
        for (size_t g = 0; g < gens.size(); ++g)
            for (int idx = 0; idx < d * d; ++idx)
                assigned[g].a[idx] = digits[g * d * d + idx];
        if (detail::reconstruct_point(spec, gens, words, assigned, d, point)) {
            point.label = "d" + std::to_string(d) + "p" + std::to_string(fam.raw_points);
            ++fam.raw_points;
            fam.members.push_back(point);
        }
        // advance the odometer; a wrap means the whole space was visited
        int pos = cells - 1;
        while (pos >= 0) {
            if (++digits[pos] < spec.p) break;
            digits[pos] = 0;
            --pos;
        }
        if (pos < 0) {
            fam.complete = true;
            break;
        }
    }

    if (mode != DedupMode::none) {
        auto dd = dedup_family(spec, std::move(fam.members), mode, opt);
        fam.members = std::move(dd.members);
        fam.unresolved = std::move(dd.unresolved);
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Relation grids.
// ---------------------------------------------------------------------------

struct RelationCell {
    Verdict verdict = Verdict::unknown;
    std::string reason;
    int level = -1;            // proving level for the stabilized order
    bool experimental = false; // refutation leaned on the heuristic filters
    DegenerationCertificate cert;
    ModuleRep padded_x, padded_y;  // padding evidence for the stable orders
};

struct RelationParams {
    int k_max = 6;            // level bound for the stabilized order
    std::vector<int> shifts;  // object degrees (stabilized order; default all 0)
    StOptions st;             // padding and search options, shared by all kinds
};

struct RelationMatrix {
    RelationKind kind = RelationKind::deg;
    int k_max = 0;
    std::vector<std::string> labels;
    std::vector<int> shifts;
    std::vector<RelationCell> cells;  // row-major

    int size() const { return static_cast<int>(labels.size()); }
    const RelationCell& at(int i, int j) const { return cells[static_cast<size_t>(i) * size() + j]; }
    RelationCell& at(int i, int j) { return cells[static_cast<size_t>(i) * size() + j]; }
};

inline RelationMatrix build_relation(const AlgebraSpec& spec, const Matrix& rad_rows,
                                     RelationKind kind, const std::vector<ModuleRep>& members,
                                     RelationParams params = {}) {
    int m = static_cast<int>(members.size());
    RelationMatrix rel;
    rel.kind = kind;
    if (kind == RelationKind::qst) rel.k_max = params.k_max;
    for (const auto& mem : members) rel.labels.push_back(mem.label);
    {
        auto sorted = rel.labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError("family labels must be unique");
    }
    if (kind == RelationKind::qst) {
        rel.shifts = params.shifts;
        if (rel.shifts.empty()) rel.shifts.assign(m, 0);
        if (static_cast<int>(rel.shifts.size()) != m)
            throw InputError("one shift per family member required");
    }
    rel.cells.assign(static_cast<size_t>(m) * m, RelationCell{});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            RelationCell& cell = rel.at(i, j);
            if (i == j) {
                // reflexivity by construction: the identity certificate
                cell.verdict = Verdict::proved;
                cell.cert = certificate_from_iso(spec, members[i], members[i],
                                                 Matrix::identity(members[i].d));
                cell.padded_x = cell.padded_y = members[i];
                if (kind == RelationKind::qst) cell.level = rel.shifts[i];
                continue;
            }
            if (kind == RelationKind::deg) {
                auto r = deg_search(spec, members[i], members[j], params.st.degen);
                cell.verdict = r.verdict;
                cell.reason = r.reason;
                if (r.verdict == Verdict::proved) cell.cert = r.cert;
            } else if (kind == RelationKind::st) {
                auto r = st_compare(spec, rad_rows, members[i], members[j], params.st);
                cell.verdict = r.verdict;
                cell.reason = r.reason;
                cell.experimental = r.experimental;
                if (r.verdict == Verdict::proved) {
                    cell.cert = r.cert;
                    cell.padded_x = r.padded_x;
                    cell.padded_y = r.padded_y;
                }
            } else {
                auto r = qst_compare(spec, rad_rows, stab_object(members[i], rel.shifts[i]),
                                     stab_object(members[j], rel.shifts[j]), params.k_max,
                                     params.st);
                cell.verdict = r.verdict;
                if (r.verdict == Verdict::proved) {
                    cell.level = r.level;
                    cell.cert = r.st.cert;
                    cell.padded_x = r.st.padded_x;
                    cell.padded_y = r.st.padded_y;
                } else {
                    cell.reason = "no level up to " + std::to_string(params.k_max) + " proved";
                }
            }
        }
    return rel;
}

// Class-equality verdicts matching a relation kind: plain isomorphism for the
// degeneration order, stable isomorphism for the stable order, stabilized
// isomorphism for the stabilized order.
inline std::vector<Ternary> equivalence_grid(const AlgebraSpec& spec, const Matrix& rad_rows,
                                             RelationKind kind,
                                             const std::vector<ModuleRep>& members,
                                             const std::vector<int>& shifts = {},
                                             FamilyOptions opt = {}) {
    int m = static_cast<int>(members.size());
    std::vector<int> deg(shifts);
    if (deg.empty()) deg.assign(m, 0);
    std::vector<Ternary> grid(static_cast<size_t>(m) * m, Ternary::unknown);
    for (int i = 0; i < m; ++i) grid[static_cast<size_t>(i) * m + i] = Ternary::yes;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Ternary v = Ternary::unknown;
            if (kind == RelationKind::deg) {
                if (deg[i] == deg[j])
                    v = iso_test(spec, members[i], members[j], opt.iso_budget, opt.seed).verdict;
            } else if (kind == RelationKind::st) {
                v = stable_iso(spec, rad_rows, members[i], members[j], opt.stable_budget,
                               opt.seed)
                        .verdict;
            } else {
                v = stab_iso_at_level(spec, rad_rows, stab_object(members[i], deg[i]),
                                      stab_object(members[j], deg[j]), opt.stab_level,
                                      opt.stable_budget, opt.seed)
                        .verdict;
            }
            grid[static_cast<size_t>(i) * m + j] = v;
            grid[static_cast<size_t>(j) * m + i] = v;
        }
    return grid;
}

// ---------------------------------------------------------------------------
// Axiom checking.
// ---------------------------------------------------------------------------

struct PosetIssue {
    int i = -1, j = -1, k = -1;
    std::string what;
};

struct PosetReport {
    bool ok = true;                // no hard failures
    std::vector<PosetIssue> hard;  // violations that contradict a partial order
    std::vector<PosetIssue> gaps;  // unknown verdicts leaving an axiom uncertified
    int proved = 0, refuted = 0, unknown = 0;
};

inline PosetReport check_poset_axioms(const RelationMatrix& rel,
                                      const std::vector<Ternary>& equivalence) {
    int m = rel.size();
    if (static_cast<int>(equivalence.size()) != m * m)
        throw InputError("equivalence grid shape mismatch");
    PosetReport rep;
    auto eq = [&](int i, int j) { return equivalence[static_cast<size_t>(i) * m + j]; };
    for (const auto& cell : rel.cells) {
        if (cell.verdict == Verdict::proved) ++rep.proved;
        else if (cell.verdict == Verdict::refuted) ++rep.refuted;
        else ++rep.unknown;
    }
    for (int i = 0; i < m; ++i)
        if (rel.at(i, i).verdict != Verdict::proved) {
            rep.ok = false;
            rep.hard.push_back({i, i, -1, "reflexivity fails at " + rel.labels[i]});
        }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (rel.at(i, j).verdict != Verdict::proved ||
                rel.at(j, i).verdict != Verdict::proved)
                continue;
            if (eq(i, j) == Ternary::yes) continue;  // one class in the quotient
            if (eq(i, j) == Ternary::no) {
                rep.ok = false;
                rep.hard.push_back({i, j, -1,
                                    "antisymmetry fails: " + rel.labels[i] + " and " +
                                        rel.labels[j] +
                                        " precede each other but are inequivalent"});
            } else {
                rep.gaps.push_back({i, j, -1,
                                    "antisymmetry unverified: " + rel.labels[i] + " and " +
                                        rel.labels[j] + " equivalence undecided"});
            }
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j || rel.at(i, j).verdict != Verdict::proved) continue;
            for (int k = 0; k < m; ++k) {
                if (k == j || k == i || rel.at(j, k).verdict != Verdict::proved) continue;
                if (rel.at(i, k).verdict == Verdict::proved) continue;
                if (rel.at(i, k).verdict == Verdict::refuted) {
                    rep.ok = false;
                    rep.hard.push_back({i, j, k,
                                        "transitivity fails: " + rel.labels[i] + " -> " +
                                            rel.labels[j] + " -> " + rel.labels[k] +
                                            " but the corner is refuted"});
                } else {
                    rep.gaps.push_back({i, j, k,
                                        "transitivity gap: " + rel.labels[i] + " -> " +
                                            rel.labels[j] + " -> " + rel.labels[k] +
                                            " corner undecided"});
                }
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Diagram export.
// ---------------------------------------------------------------------------

// Members mutually below each other collapse into one node; solid edges are
// the transitive reduction of reachability between the collapsed nodes, and
// undecided pairs with no proved path are drawn dashed.
struct DotGraph {
    std::vector<std::vector<int>> components;  // member indices, each ascending
    std::vector<std::pair<int, int>> solid;
    std::vector<std::pair<int, int>> dashed;
};

inline DotGraph hasse_structure(const RelationMatrix& rel) {
    int m = rel.size();
    std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i) reach[i][i] = true;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && rel.at(i, j).verdict == Verdict::proved) reach[i][j] = true;
    for (int w = 0; w < m; ++w)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (reach[i][w] && reach[w][j]) reach[i][j] = true;
    DotGraph out;
    std::vector<int> comp(m, -1);
    for (int i = 0; i < m; ++i) {
        if (comp[i] >= 0) continue;
        int id = static_cast<int>(out.components.size());
        out.components.push_back({});
        for (int j = i; j < m; ++j)
            if (comp[j] < 0 && reach[i][j] && reach[j][i]) {
                comp[j] = id;
                out.components[id].push_back(j);
            }
    }
    int c = static_cast<int>(out.components.size());
    std::vector<std::vector<bool>> up(c, std::vector<bool>(c, false));
    for (int u = 0; u < c; ++u)
        for (int v = 0; v < c; ++v)
            if (u != v) up[u][v] = reach[out.components[u][0]][out.components[v][0]];
    for (int u = 0; u < c; ++u)
        for (int v = 0; v < c; ++v) {
            if (!up[u][v]) continue;
            bool shortcut = false;
            for (int w = 0; w < c && !shortcut; ++w)
                if (w != u && w != v && up[u][w] && up[w][v]) shortcut = true;
            if (!shortcut) out.solid.push_back({u, v});
        }
    std::vector<std::vector<bool>> dashed_seen(c, std::vector<bool>(c, false));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j || rel.at(i, j).verdict != Verdict::unknown) continue;
            int u = comp[i], v = comp[j];
            if (u == v || up[u][v] || dashed_seen[u][v]) continue;
            dashed_seen[u][v] = true;
            out.dashed.push_back({u, v});
        }
    std::sort(out.solid.begin(), out.solid.end());
    std::sort(out.dashed.begin(), out.dashed.end());
    return out;
}

namespace detail {
inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}
}  // namespace detail

inline std::string export_dot(const RelationMatrix& rel) {
    auto g = hasse_structure(rel);
    std::string out = "digraph " + std::string(to_string(rel.kind)) + " {\n";
    out += "  rankdir=BT;\n  node [shape=box];\n";
    for (size_t u = 0; u < g.components.size(); ++u) {
        std::string label;
        for (size_t t = 0; t < g.components[u].size(); ++t) {
            if (t) label += " ~ ";
            int i = g.components[u][t];
            label += rel.labels[i];
            if (!rel.shifts.empty() && rel.shifts[i] != 0)
                label += "@" + std::to_string(rel.shifts[i]);
        }
        out += "  n" + std::to_string(u) + " [label=\"" + detail::dot_escape(label) + "\"];\n";
    }
    for (const auto& e : g.solid)
        out += "  n" + std::to_string(e.first) + " -> n" + std::to_string(e.second) + ";\n";
    for (const auto& e : g.dashed)
        out += "  n" + std::to_string(e.first) + " -> n" + std::to_string(e.second) +
               " [style=dashed, label=\"?\"];\n";
    out += "}\n";
    return out;
}

}  // namespace singorder
