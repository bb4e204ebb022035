#pragma once
// JSON serialization for every value the command line reads or writes.
// Conventions: all indices 0-based, matrices row-major under "entries",
// object keys emitted in sorted order so equal values serialize to equal
// bytes.

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "singorder/poset.hpp"

namespace singorder {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Core linear algebra and module types.
// ---------------------------------------------------------------------------

inline void to_json(json& j, const Matrix& m) {
    j = json{{"rows", m.rows}, {"cols", m.cols}, {"entries", m.a}};
}

inline void from_json(const json& j, Matrix& m) {
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    auto entries = j.at("entries").get<std::vector<u32>>();
    if (rows < 0 || cols < 0 || entries.size() != static_cast<size_t>(rows) * cols)
        throw InputError("matrix entry count does not match its shape");
    m = Matrix(rows, cols);
    m.a = std::move(entries);
}

inline void to_json(json& j, const ModuleRep& m) {
    j = json{{"dim", m.d}, {"label", m.label}, {"action", m.action}};
}

inline void from_json(const json& j, ModuleRep& m) {
    m.d = j.at("dim").get<int>();
    m.label = j.value("label", "");
    m.action = j.at("action").get<std::vector<Matrix>>();
    for (const auto& a : m.action)
        if (a.rows != m.d || a.cols != m.d)
            throw InputError("module action matrix is not dim x dim");
}

inline void to_json(json& j, const LabeledElement& e) {
    j = json{{"label", e.label}, {"coords", e.coords}};
}

inline void from_json(const json& j, LabeledElement& e) {
    e.label = j.at("label").get<std::string>();
    e.coords = j.at("coords").get<std::vector<u32>>();
}

inline void to_json(json& j, const AlgebraSpec& spec) {
    std::vector<std::vector<u32>> sc;
    for (const auto& t : spec.sc)
        sc.push_back({static_cast<u32>(t.i), static_cast<u32>(t.j), static_cast<u32>(t.l), t.c});
    j = json{{"p", spec.p}, {"n", spec.n}, {"unit", spec.unit}, {"sc", sc}};
}

inline void from_json(const json& j, AlgebraSpec& spec) {
    spec = AlgebraSpec{};
    spec.p = j.at("p").get<u32>();
    spec.n = j.at("n").get<int>();
    spec.unit = j.at("unit").get<std::vector<u32>>();
    for (const auto& row : j.at("sc")) {
        auto t = row.get<std::vector<u32>>();
        if (t.size() != 4) throw InputError("structure constant rows are [i, j, l, c]");
        spec.sc.push_back({static_cast<int>(t[0]), static_cast<int>(t[1]),
                           static_cast<int>(t[2]), t[3]});
    }
    spec.finalize();
}

inline void to_json(json& j, const AlgebraKit& kit) {
    j = json{{"algebra", kit.spec},
             {"generators", kit.generators},
             {"idempotents", kit.idempotents},
             {"simples", kit.simples},
             {"provenance", kit.provenance}};
}

inline void from_json(const json& j, AlgebraKit& kit) {
    kit = AlgebraKit{};
    if (j.contains("algebra")) {
        kit.spec = j.at("algebra").get<AlgebraSpec>();
        kit.generators = j.value("generators", std::vector<LabeledElement>{});
        kit.idempotents = j.value("idempotents", std::vector<std::vector<u32>>{});
        kit.simples = j.value("simples", std::vector<ModuleRep>{});
        kit.provenance = j.value("provenance", "");
    } else {
        // a bare algebra object is accepted as a kit without metadata
        kit.spec = j.get<AlgebraSpec>();
    }
}

// Builder descriptions: {"builder": "univariate" | "bound_quiver" | "group", ...}
inline AlgebraKit kit_from_builder(const json& j) {
    auto kind = j.at("builder").get<std::string>();
    u32 p = j.at("p").get<u32>();
    if (kind == "univariate") return build_univariate(p, j.at("coeffs").get<std::vector<u32>>());
    if (kind == "group")
        return build_group_algebra(p, j.at("table").get<std::vector<std::vector<int>>>());
    if (kind == "bound_quiver") {
        std::vector<QuiverArrow> arrows;
        for (const auto& a : j.at("arrows"))
            arrows.push_back(
                {a.at("from").get<int>(), a.at("to").get<int>(), a.at("label").get<std::string>()});
        std::vector<std::vector<std::string>> relations;
        if (j.contains("relations"))
            relations = j.at("relations").get<std::vector<std::vector<std::string>>>();
        return build_bound_quiver(p, j.at("vertices").get<int>(), arrows, relations,
                                  j.at("nilpotency").get<int>());
    }
    throw InputError("unknown builder '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Certificates, stabilization objects, results.
// ---------------------------------------------------------------------------

inline void to_json(json& j, const DegenerationCertificate& c) {
    j = json{{"pushout", c.pushout}, {"x", c.x}, {"y", c.y}, {"z", c.z}, {"u", c.u}, {"v", c.v}};
}

inline void from_json(const json& j, DegenerationCertificate& c) {
    c.pushout = j.value("pushout", false);
    c.x = j.at("x").get<ModuleRep>();
    c.y = j.at("y").get<ModuleRep>();
    c.z = j.at("z").get<ModuleRep>();
    c.u = j.at("u").get<Matrix>();
    c.v = j.at("v").get<Matrix>();
}

inline void to_json(json& j, const StabObject& s) {
    j = json{{"module", s.x}, {"degree", s.m}};
}

inline void from_json(const json& j, StabObject& s) {
    if (j.contains("module")) {
        s.x = j.at("module").get<ModuleRep>();
        s.m = j.value("degree", 0);
    } else {
        // a bare module is an object in degree zero
        s.x = j.get<ModuleRep>();
        s.m = 0;
    }
}

inline void to_json(json& j, const LevelHomTable& t) {
    j = json{{"first_level", t.first_level},
             {"dims", t.dims},
             {"transition_ranks", t.transition_ranks},
             {"plateau", t.plateau},
             {"tag", t.tag}};
}

inline Verdict verdict_from_string(const std::string& s) {
    if (s == "proved") return Verdict::proved;
    if (s == "refuted") return Verdict::refuted;
    if (s == "unknown") return Verdict::unknown;
    throw InputError("unknown verdict '" + s + "'");
}

inline RelationKind relation_from_string(const std::string& s) {
    if (s == "deg") return RelationKind::deg;
    if (s == "st") return RelationKind::st;
    if (s == "qst") return RelationKind::qst;
    throw InputError("unknown relation '" + s + "'");
}

// ---------------------------------------------------------------------------
// Families, relation grids, reports.
// ---------------------------------------------------------------------------

inline void to_json(json& j, const ModuleFamily& f) {
    j = json{{"members", f.members},
             {"tried", f.tried},
             {"raw_points", f.raw_points},
             {"complete", f.complete},
             {"unresolved", f.unresolved}};
}

inline void from_json(const json& j, ModuleFamily& f) {
    f = ModuleFamily{};
    f.members = j.at("members").get<std::vector<ModuleRep>>();
    f.tried = j.value("tried", static_cast<u64>(f.members.size()));
    f.raw_points = j.value("raw_points", static_cast<u64>(f.members.size()));
    f.complete = j.value("complete", true);
    f.unresolved = j.value("unresolved", std::vector<std::string>{});
}

inline void to_json(json& j, const RelationCell& c) {
    j = json{{"verdict", to_string(c.verdict)},
             {"reason", c.reason},
             {"level", c.level},
             {"experimental", c.experimental}};
    if (c.verdict == Verdict::proved) {
        j["cert"] = c.cert;
        if (c.padded_x.d > 0 || c.padded_y.d > 0) {
            j["padded_x"] = c.padded_x;
            j["padded_y"] = c.padded_y;
        }
    }
}

inline void from_json(const json& j, RelationCell& c) {
    c = RelationCell{};
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.reason = j.value("reason", "");
    c.level = j.value("level", -1);
    c.experimental = j.value("experimental", false);
    if (j.contains("cert")) c.cert = j.at("cert").get<DegenerationCertificate>();
    if (j.contains("padded_x")) c.padded_x = j.at("padded_x").get<ModuleRep>();
    if (j.contains("padded_y")) c.padded_y = j.at("padded_y").get<ModuleRep>();
}

inline void to_json(json& j, const RelationMatrix& r) {
    j = json{{"kind", to_string(r.kind)},
             {"k_max", r.k_max},
             {"labels", r.labels},
             {"shifts", r.shifts},
             {"cells", r.cells}};
}

inline void from_json(const json& j, RelationMatrix& r) {
    r = RelationMatrix{};
    r.kind = relation_from_string(j.at("kind").get<std::string>());
    r.k_max = j.value("k_max", 0);
    r.labels = j.at("labels").get<std::vector<std::string>>();
    r.shifts = j.value("shifts", std::vector<int>{});
    r.cells = j.at("cells").get<std::vector<RelationCell>>();
    size_t m = r.labels.size();
    if (r.cells.size() != m * m) throw InputError("relation grid is not square");
}

inline void to_json(json& j, const PosetIssue& i) {
    j = json{{"i", i.i}, {"j", i.j}, {"k", i.k}, {"what", i.what}};
}

inline void from_json(const json& j, PosetIssue& i) {
    i.i = j.value("i", -1);
    i.j = j.value("j", -1);
    i.k = j.value("k", -1);
    i.what = j.value("what", "");
}

inline void to_json(json& j, const PosetReport& r) {
    j = json{{"ok", r.ok},
             {"proved", r.proved},
             {"refuted", r.refuted},
             {"unknown", r.unknown},
             {"hard", r.hard},
             {"gaps", r.gaps}};
}

inline void from_json(const json& j, PosetReport& r) {
    r.ok = j.at("ok").get<bool>();
    r.proved = j.value("proved", 0);
    r.refuted = j.value("refuted", 0);
    r.unknown = j.value("unknown", 0);
    r.hard = j.value("hard", std::vector<PosetIssue>{});
    r.gaps = j.value("gaps", std::vector<PosetIssue>{});
}

// ---------------------------------------------------------------------------
// File helpers.
// ---------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

}  // namespace singorder
