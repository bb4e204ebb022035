// Batch command line: read JSON, compute, write JSON or DOT, exit.
// Exit codes: 0 success, 2 input or schema error, 3 result truncated by a
// budget (some verdict stayed unknown), 4 order-axiom violation or internal
// consistency failure.

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "singorder/json_io.hpp"

using namespace singorder;

namespace {

struct GlobalOpts {
    u64 seed = 17;
    u64 budget = (1u << 20);
    std::string json_out;
};

void emit_text(const GlobalOpts& g, const std::string& text) {
    if (g.json_out.empty())
        std::cout << text;
    else
        write_text_file(g.json_out, text);
}

void emit(const GlobalOpts& g, const json& j) { emit_text(g, j.dump(2) + "\n"); }

AlgebraKit load_kit(const std::string& path) {
    json j = read_json_file(path);
    if (j.contains("builder")) return kit_from_builder(j);
    return j.get<AlgebraKit>();
}

ModuleRep load_module(const std::string& path) {
    return read_json_file(path).get<ModuleRep>();
}

// Computing subcommands must reject modules that are malformed for the given
// algebra up front; otherwise dimension arguments happily "decide" garbage.
ModuleRep require_valid(const AlgebraSpec& spec, ModuleRep m, const std::string& where) {
    auto rep = validate_module(spec, m);
    if (!rep.ok)
        throw InputError(where + ": " +
                         (rep.failures.empty() ? "module axioms fail" : rep.failures.front()));
    return m;
}

ModuleRep load_module(const AlgebraSpec& spec, const std::string& path) {
    return require_valid(spec, load_module(path), path);
}

StabObject load_stab(const AlgebraSpec& spec, const std::string& path) {
    auto s = read_json_file(path).get<StabObject>();
    require_valid(spec, s.x, path);
    return s;
}

json report_json(const AlgebraReport& rep) {
    return json{{"ok", rep.ok}, {"failures", rep.failures}};
}

json cert_result_json(Verdict verdict, const std::string& reason,
                      const DegenerationCertificate* cert) {
    json j{{"verdict", to_string(verdict)}, {"reason", reason}};
    if (cert) j["cert"] = *cert;
    return j;
}

StOptions make_st_options(const AlgebraSpec& spec, const GlobalOpts& g, int depth, int pad,
                          const std::string& projectives_path) {
    StOptions opt;
    opt.pad_limit = pad;
    opt.degen.depth = depth;
    opt.degen.seed = g.seed;
    opt.degen.vector_budget = g.budget;
    opt.degen.iso_budget = g.budget;
    if (!projectives_path.empty()) {
        opt.projectives = read_json_file(projectives_path).get<std::vector<ModuleRep>>();
        for (auto& p : opt.projectives) require_valid(spec, p, projectives_path);
    }
    return opt;
}

}  // namespace

static int run(int argc, char** argv) {
    CLI::App app{"exact module degenerations, stable comparisons and order checking over F_p"};
    app.require_subcommand(1);
    app.fallthrough();  // let --seed/--budget/--json-out appear after the subcommand
    GlobalOpts g;
    app.add_option("--seed", g.seed, "seed for randomized searches");
    app.add_option("--budget", g.budget, "enumeration budget for searches and tests");
    app.add_option("--json-out", g.json_out, "write output to this file instead of stdout");

    std::function<int()> action;

    // algebra validate | algebra build
    auto* algebra = app.add_subcommand("algebra", "algebra construction and validation");
    algebra->require_subcommand(1);
    static std::string alg_file, builder_file;
    auto* alg_validate = algebra->add_subcommand("validate", "check the algebra axioms");
    alg_validate->add_option("file", alg_file, "algebra, kit or builder JSON")->required();
    alg_validate->callback([&] {
        action = [&] {
            auto kit = load_kit(alg_file);
            auto rep = validate_kit_elements(kit);
            for (const auto& s : kit.simples) {
                auto mr = validate_module(kit.spec, s);
                for (const auto& f : mr.failures) rep.fail("simple '" + s.label + "': " + f);
            }
            emit(g, report_json(rep));
            return rep.ok ? 0 : 2;
        };
    });
    auto* alg_build = algebra->add_subcommand("build", "materialize a builder description");
    alg_build->add_option("file", builder_file, "builder JSON")->required();
    alg_build->callback([&] {
        action = [&] {
            emit(g, json(kit_from_builder(read_json_file(builder_file))));
            return 0;
        };
    });

    // module check
    auto* module_cmd = app.add_subcommand("module", "module validation");
    module_cmd->require_subcommand(1);
    static std::string mod_alg, mod_file;
    auto* mod_check = module_cmd->add_subcommand("check", "check the representation axioms");
    mod_check->add_option("algebra", mod_alg, "algebra JSON")->required();
    mod_check->add_option("module", mod_file, "module JSON")->required();
    mod_check->callback([&] {
        action = [&] {
            auto kit = load_kit(mod_alg);
            auto rep = validate_module(kit.spec, load_module(mod_file));
            emit(g, report_json(rep));
            return rep.ok ? 0 : 2;
        };
    });

    // hom
    static std::string hom_alg, hom_m, hom_n;
    static bool hom_stable = false;
    auto* hom_cmd = app.add_subcommand("hom", "homomorphism space dimensions");
    hom_cmd->add_option("algebra", hom_alg, "algebra JSON")->required();
    hom_cmd->add_option("M", hom_m, "source module JSON")->required();
    hom_cmd->add_option("N", hom_n, "target module JSON")->required();
    hom_cmd->add_flag("--stable", hom_stable, "also report the stable quotient");
    hom_cmd->callback([&] {
        action = [&] {
            auto kit = load_kit(hom_alg);
            auto m = load_module(kit.spec, hom_m);
            auto n = load_module(kit.spec, hom_n);
            json j{{"hom_dim", static_cast<int>(hom_basis(kit.spec, m, n).size())}};
            if (hom_stable) {
                auto rad = radical(kit.spec);
                auto sh = stable_hom(kit.spec, rad.basis, m, n);
                j["stable_dim"] = sh.stable_dim();
                j["factoring_dim"] = sh.factoring.dim();
            }
            emit(g, j);
            return 0;
        };
    });

    // syzygy
    static std::string syz_alg, syz_m;
    static int syz_iterate = 1;
    auto* syz_cmd = app.add_subcommand("syzygy", "kernels of iterated free covers");
    syz_cmd->add_option("algebra", syz_alg, "algebra JSON")->required();
    syz_cmd->add_option("M", syz_m, "module JSON")->required();
    syz_cmd->add_option("--iterate", syz_iterate, "number of syzygies to take")
        ->check(CLI::NonNegativeNumber);
    syz_cmd->callback([&] {
        action = [&] {
            auto kit = load_kit(syz_alg);
            auto rad = radical(kit.spec);
            auto m = load_module(kit.spec, syz_m);
            std::vector<int> dims = {m.d};
            for (int t = 0; t < syz_iterate; ++t) {
                m = syzygy(kit.spec, m, rad.basis).omega;
                dims.push_back(m.d);
            }
            m.label = "O^" + std::to_string(syz_iterate);
            emit(g, json{{"module", m}, {"dims", dims}});
            return 0;
        };
    });

    // deg verify | deg search
    auto* deg_cmd = app.add_subcommand("deg", "the degeneration order");
    deg_cmd->require_subcommand(1);
    static std::string deg_alg, deg_cert, deg_x, deg_y;
    static int deg_depth = 3;
    auto* deg_verify = deg_cmd->add_subcommand("verify", "re-check a certificate");
    deg_verify->add_option("algebra", deg_alg, "algebra JSON")->required();
    deg_verify->add_option("cert", deg_cert, "certificate JSON")->required();
    deg_verify->callback([&] {
        action = [&] {
            auto kit = load_kit(deg_alg);
            auto cert = read_json_file(deg_cert).get<DegenerationCertificate>();
            require_valid(kit.spec, cert.x, deg_cert);
            require_valid(kit.spec, cert.y, deg_cert);
            require_valid(kit.spec, cert.z, deg_cert);
            auto rep = verify_certificate(kit.spec, cert);
            emit(g, report_json(rep));
            return rep.ok ? 0 : 2;
        };
    });
    auto* deg_search_cmd = deg_cmd->add_subcommand("search", "decide X <= Y if possible");
    deg_search_cmd->add_option("algebra", deg_alg, "algebra JSON")->required();
    deg_search_cmd->add_option("X", deg_x, "candidate lower module JSON")->required();
    deg_search_cmd->add_option("Y", deg_y, "candidate upper module JSON")->required();
    deg_search_cmd->add_option("--depth", deg_depth, "submodule chain depth bound");
    deg_search_cmd->callback([&] {
        action = [&] {
            auto kit = load_kit(deg_alg);
            auto opt = make_st_options(kit.spec, g, deg_depth, 2, "").degen;
            auto r = deg_search(kit.spec, load_module(kit.spec, deg_x),
                                load_module(kit.spec, deg_y), opt);
            emit(g, cert_result_json(r.verdict, r.reason,
                                     r.verdict == Verdict::proved ? &r.cert : nullptr));
            return r.verdict == Verdict::unknown ? 3 : 0;
        };
    });

    // st compare
    auto* st_cmd = app.add_subcommand("st", "the stable degeneration order");
    st_cmd->require_subcommand(1);
    static std::string st_alg, st_x, st_y, st_proj;
    static int st_pad = 2, st_depth = 3;
    auto* st_compare_cmd = st_cmd->add_subcommand("compare", "decide X <= Y up to projectives");
    st_compare_cmd->add_option("algebra", st_alg, "algebra JSON")->required();
    st_compare_cmd->add_option("X", st_x, "module JSON")->required();
    st_compare_cmd->add_option("Y", st_y, "module JSON")->required();
    st_compare_cmd->add_option("--pad", st_pad, "max projective summands per side");
    st_compare_cmd->add_option("--depth", st_depth, "chain depth bound for the inner search");
    st_compare_cmd->add_option("--projectives", st_proj, "JSON list of projective padding modules");
    st_compare_cmd->callback([&] {
        action = [&] {
            auto kit = load_kit(st_alg);
            auto rad = radical(kit.spec);
            auto opt = make_st_options(kit.spec, g, st_depth, st_pad, st_proj);
            auto r = st_compare(kit.spec, rad.basis, load_module(kit.spec, st_x),
                                load_module(kit.spec, st_y), opt);
            json j = cert_result_json(r.verdict, r.reason,
                                      r.verdict == Verdict::proved ? &r.cert : nullptr);
            j["experimental"] = r.experimental;
            if (r.verdict == Verdict::proved) {
                j["padded_x"] = r.padded_x;
                j["padded_y"] = r.padded_y;
            }
            emit(g, j);
            return r.verdict == Verdict::unknown ? 3 : 0;
        };
    });

    // qst compare
    auto* qst_cmd = app.add_subcommand("qst", "the stabilized degeneration order");
    qst_cmd->require_subcommand(1);
    static std::string qst_alg, qst_a, qst_b, qst_proj;
    static int qst_kmax = 6, qst_pad = 2, qst_depth = 3;
    auto* qst_compare_cmd =
        qst_cmd->add_subcommand("compare", "scan syzygy levels for a stable comparison");
    qst_compare_cmd->add_option("algebra", qst_alg, "algebra JSON")->required();
    qst_compare_cmd->add_option("a", qst_a, "object JSON: module or {module, degree}")->required();
    qst_compare_cmd->add_option("b", qst_b, "object JSON: module or {module, degree}")->required();
    qst_compare_cmd->add_option("--kmax", qst_kmax, "highest level to scan");
    qst_compare_cmd->add_option("--pad", qst_pad, "max projective summands per side");
    qst_compare_cmd->add_option("--projectives", qst_proj, "JSON list of projective padding modules");
    qst_compare_cmd->callback([&] {
        action = [&] {
            auto kit = load_kit(qst_alg);
            auto rad = radical(kit.spec);
            auto opt = make_st_options(kit.spec, g, qst_depth, qst_pad, qst_proj);
            auto r = qst_compare(kit.spec, rad.basis, load_stab(kit.spec, qst_a),
                                 load_stab(kit.spec, qst_b), qst_kmax, opt);
            json j{{"verdict", to_string(r.verdict)}, {"level", r.level}};
            if (r.verdict == Verdict::proved) {
                j["cert"] = r.st.cert;
                j["padded_x"] = r.st.padded_x;
                j["padded_y"] = r.st.padded_y;
            }
            emit(g, j);
            return r.verdict == Verdict::unknown ? 3 : 0;
        };
    });

    // poset build | check | dot
    auto* poset_cmd = app.add_subcommand("poset", "relation grids and order axioms");
    poset_cmd->require_subcommand(1);
    static std::string po_alg, po_family, po_relation, po_proj;
    static int po_kmax = 6, po_pad = 2, po_depth = 3;
    auto add_poset_leaf = [&](const char* name, const char* help) {
        auto* leaf = poset_cmd->add_subcommand(name, help);
        leaf->add_option("algebra", po_alg, "algebra JSON")->required();
        leaf->add_option("family", po_family, "family JSON with a members list")->required();
        leaf->add_option("--relation", po_relation, "deg, st or qst")->required();
        leaf->add_option("--kmax", po_kmax, "highest level for qst");
        leaf->add_option("--pad", po_pad, "max projective summands per side");
        leaf->add_option("--depth", po_depth, "chain depth bound for the inner search");
        leaf->add_option("--projectives", po_proj, "JSON list of projective padding modules");
        return leaf;
    };
    auto build_grid = [&](AlgebraKit& kit, RelationMatrix& rel, std::vector<ModuleRep>& members) {
        kit = load_kit(po_alg);
        json fj = read_json_file(po_family);
        auto fam = fj.get<ModuleFamily>();
        members = fam.members;
        for (auto& m : members) require_valid(kit.spec, m, po_family);
        RelationParams params;
        params.k_max = po_kmax;
        params.shifts = fj.value("shifts", std::vector<int>{});
        params.st = make_st_options(kit.spec, g, po_depth, po_pad, po_proj);
        auto rad = radical(kit.spec);
        rel = build_relation(kit.spec, rad.basis, relation_from_string(po_relation), members,
                             params);
    };
    auto* po_build = add_poset_leaf("build", "compute the verdict grid");
    po_build->callback([&] {
        action = [&] {
            AlgebraKit kit;
            RelationMatrix rel;
            std::vector<ModuleRep> members;
            build_grid(kit, rel, members);
            emit(g, json(rel));
            for (const auto& cell : rel.cells)
                if (cell.verdict == Verdict::unknown) return 3;
            return 0;
        };
    });
    auto* po_check = add_poset_leaf("check", "check the partial-order axioms");
    po_check->callback([&] {
        action = [&] {
            AlgebraKit kit;
            RelationMatrix rel;
            std::vector<ModuleRep> members;
            build_grid(kit, rel, members);
            auto rad = radical(kit.spec);
            FamilyOptions fopt;
            fopt.iso_budget = g.budget;
            fopt.stab_level = po_kmax;
            fopt.seed = g.seed;
            auto eq = equivalence_grid(kit.spec, rad.basis, relation_from_string(po_relation),
                                       members, rel.shifts, fopt);
            auto report = check_poset_axioms(rel, eq);
            emit(g, json(report));
            if (!report.ok) return 4;
            if (!report.gaps.empty() || report.unknown > 0) return 3;
            return 0;
        };
    });
    auto* po_dot = add_poset_leaf("dot", "render the reduced diagram");
    po_dot->callback([&] {
        action = [&] {
            AlgebraKit kit;
            RelationMatrix rel;
            std::vector<ModuleRep> members;
            build_grid(kit, rel, members);
            emit_text(g, export_dot(rel));
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    return action ? action() : 2;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CheckError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 4;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
