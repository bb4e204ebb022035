#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "singorder/json_io.hpp"

using namespace singorder;

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / "singorder_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_json(const std::string& name, const json& j) {
    auto p = work_dir() / name;
    std::ofstream(p) << j.dump(2) << "\n";
    return p;
}

struct CliResult {
    int exit_code = -1;
    std::string out, err;
};

CliResult run_cli(const std::string& args) {
    auto out = work_dir() / "stdout.txt";
    auto err = work_dir() / "stderr.txt";
    std::string cmd = std::string("\"") + SINGORDER_CLI_PATH + "\" " + args + " > \"" +
                      out.string() + "\" 2> \"" + err.string() + "\"";
    int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

ModuleRep jordan_module(const AlgebraSpec& spec, int i) {
    Fp fp(spec.p);
    Matrix shift(i, i);
    for (int t = 0; t + 1 < i; ++t) shift.at(t + 1, t) = 1;
    ModuleRep m;
    m.d = i;
    m.label = "M" + std::to_string(i);
    Matrix pw = Matrix::identity(i);
    for (int j = 0; j < spec.n; ++j) {
        m.action.push_back(pw);
        pw = mat_mul(fp, shift, pw);
    }
    return m;
}

ModuleRep jordan_sum(const AlgebraSpec& spec, const std::vector<int>& parts) {
    std::vector<ModuleRep> mods;
    for (int i : parts) mods.push_back(jordan_module(spec, i));
    return direct_sum(spec, mods);
}

fs::path builder_f3x3() {
    return write_json("f3x3.json",
                      json{{"builder", "univariate"}, {"p", 3}, {"coeffs", {0, 0, 0, 1}}});
}

fs::path builder_f2x2() {
    return write_json("f2x2.json",
                      json{{"builder", "univariate"}, {"p", 2}, {"coeffs", {0, 0, 1}}});
}

}  // namespace

TEST_CASE("validate and build commands over builder files") {
    auto alg = builder_f3x3();
    auto r = run_cli("algebra validate " + alg.string());
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j.at("ok").get<bool>());

    r = run_cli("algebra build " + alg.string());
    REQUIRE(r.exit_code == 0);
    auto kit = json::parse(r.out).get<AlgebraKit>();
    REQUIRE(kit.spec.p == 3);
    REQUIRE(kit.spec.n == 3);
    REQUIRE(kit.generators.size() == 1);

    // the built kit round-trips through a file back into validate
    auto kit_file = work_dir() / "kit.json";
    std::ofstream(kit_file) << r.out;
    r = run_cli("algebra validate " + kit_file.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(json::parse(r.out).at("ok").get<bool>());
}

TEST_CASE("schema and file errors exit with code 2") {
    auto r = run_cli("algebra validate " + (work_dir() / "missing.json").string());
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.err.find("input error") != std::string::npos);

    auto mangled = work_dir() / "mangled.json";
    std::ofstream(mangled) << "{ not json";
    r = run_cli("algebra validate " + mangled.string());
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.err.find("json error") != std::string::npos);

    auto bad = write_json("bad_builder.json",
                          json{{"builder", "univariate"}, {"p", 3}, {"coeffs", {0, 0, 0, 2}}});
    r = run_cli("algebra build " + bad.string());
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.err.find("monic") != std::string::npos);

    r = run_cli("no such command");
    REQUIRE(r.exit_code == 2);

    r = run_cli("--help");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("deg") != std::string::npos);
}

TEST_CASE("module check accepts valid actions and rejects broken ones") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    auto alg = builder_f3x3();
    auto good = write_json("m2.json", json(jordan_module(kit.spec, 2)));
    auto r = run_cli("module check " + alg.string() + " " + good.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(json::parse(r.out).at("ok").get<bool>());

    auto broken = jordan_module(kit.spec, 2);
    broken.action[1].at(0, 1) = 1;  // no longer commutes with itself as x^2
    auto bad = write_json("broken.json", json(broken));
    r = run_cli("module check " + alg.string() + " " + bad.string());
    REQUIRE(r.exit_code == 2);
    REQUIRE_FALSE(json::parse(r.out).at("ok").get<bool>());
}

TEST_CASE("computing commands reject modules that fail the algebra axioms") {
    // a module built over F3[x]/x^3 is malformed input for F2[x]/x^2
    auto kit3 = build_univariate(3, {0, 0, 0, 1});
    auto alg2 = builder_f2x2();
    auto m2 = write_json("m2_f3.json", json(jordan_module(kit3.spec, 2)));
    auto m1 = write_json("m1_f3.json", json(jordan_module(kit3.spec, 1)));

    for (const std::string& cmd :
         {"hom " + alg2.string() + " " + m2.string() + " " + m1.string(),
          "syzygy " + alg2.string() + " " + m2.string(),
          "deg search " + alg2.string() + " " + m2.string() + " " + m1.string(),
          "st compare " + alg2.string() + " " + m2.string() + " " + m1.string(),
          "qst compare " + alg2.string() + " " + m2.string() + " " + m1.string()}) {
        auto r = run_cli(cmd);
        REQUIRE(r.exit_code == 2);
        REQUIRE(r.err.find("input error") != std::string::npos);
    }

    auto fam = write_json("fam_f3.json",
                          json{{"members", {jordan_module(kit3.spec, 1)}}});
    auto r = run_cli("poset build " + alg2.string() + " " + fam.string() + " --relation deg");
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.err.find("input error") != std::string::npos);
}

TEST_CASE("hom and syzygy report dimensions") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    auto alg = builder_f3x3();
    auto m2 = write_json("m2.json", json(jordan_module(kit.spec, 2)));
    auto m3 = write_json("m3.json", json(jordan_module(kit.spec, 3)));

    auto r = run_cli("hom " + alg.string() + " " + m2.string() + " " + m3.string() + " --stable");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j.at("hom_dim").get<int>() == 2);
    REQUIRE(j.at("stable_dim").get<int>() == 0);  // the target is free

    auto m1 = write_json("m1.json", json(jordan_module(kit.spec, 1)));
    r = run_cli("syzygy " + alg.string() + " " + m1.string() + " --iterate 3");
    REQUIRE(r.exit_code == 0);
    j = json::parse(r.out);
    REQUIRE(j.at("dims").get<std::vector<int>>() == std::vector<int>{1, 2, 1, 2});
    auto mod = j.at("module").get<ModuleRep>();
    REQUIRE(validate_module(kit.spec, mod).ok);
}

TEST_CASE("deg search emits a certificate that deg verify accepts") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    auto alg = builder_f3x3();
    auto x = write_json("x.json", json(jordan_sum(kit.spec, {2, 1})));
    auto y = write_json("y.json", json(jordan_sum(kit.spec, {1, 1, 1})));

    auto out_file = work_dir() / "search.json";
    auto r = run_cli("deg search " + alg.string() + " " + x.string() + " " + y.string() +
                     " --json-out " + out_file.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.empty());  // redirected to the file
    auto j = json::parse(slurp(out_file));
    REQUIRE(j.at("verdict").get<std::string>() == "proved");

    auto cert_file = write_json("cert.json", j.at("cert"));
    r = run_cli("deg verify " + alg.string() + " " + cert_file.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(json::parse(r.out).at("ok").get<bool>());

    // corrupting the embedded map breaks verification
    auto cert = j.at("cert").get<DegenerationCertificate>();
    cert.u.at(0, 0) = (cert.u.at(0, 0) + 1) % 3;
    auto bad_file = write_json("bad_cert.json", json(cert));
    r = run_cli("deg verify " + alg.string() + " " + bad_file.string());
    REQUIRE(r.exit_code == 2);
    REQUIRE_FALSE(json::parse(r.out).at("ok").get<bool>());

    // the reverse direction is refuted, still exit 0 (a decided verdict)
    r = run_cli("deg search " + alg.string() + " " + y.string() + " " + x.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(json::parse(r.out).at("verdict").get<std::string>() == "refuted");
}

TEST_CASE("st compare pads both sides and reports the padded modules") {
    auto kit = build_univariate(2, {0, 0, 1});
    auto alg = builder_f2x2();
    auto a = write_json("areg.json", json(regular_module(kit.spec)));
    auto s2 = write_json("s2.json", json(jordan_sum(kit.spec, {1, 1})));

    auto r = run_cli("st compare " + alg.string() + " " + a.string() + " " + s2.string());
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j.at("verdict").get<std::string>() == "proved");
    REQUIRE(j.at("padded_x").get<ModuleRep>().d == j.at("padded_y").get<ModuleRep>().d);

    auto s1 = write_json("s1.json", json(jordan_module(kit.spec, 1)));
    r = run_cli("st compare " + alg.string() + " " + s1.string() + " " + a.string());
    REQUIRE(r.exit_code == 0);
    j = json::parse(r.out);
    REQUIRE(j.at("verdict").get<std::string>() == "refuted");
    REQUIRE(j.at("experimental").get<bool>());
}

TEST_CASE("qst compare scans levels and signals open cases by exit code") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    auto alg = builder_f3x3();
    auto m2s = write_json("m2_shift.json",
                          json{{"module", json(jordan_module(kit.spec, 2))}, {"degree", 1}});
    auto m1 = write_json("m1.json", json(jordan_module(kit.spec, 1)));

    auto r = run_cli("qst compare " + alg.string() + " " + m2s.string() + " " + m1.string() +
                     " --kmax 6");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j.at("verdict").get<std::string>() == "proved");
    REQUIRE(j.at("level").get<int>() >= 1);

    auto m2 = write_json("m2.json", json(jordan_module(kit.spec, 2)));
    r = run_cli("qst compare " + alg.string() + " " + m1.string() + " " + m2.string() +
                " --kmax 4");
    REQUIRE(r.exit_code == 3);
    REQUIRE(json::parse(r.out).at("verdict").get<std::string>() == "unknown");
}

TEST_CASE("poset commands build grids, check axioms and print diagrams") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    auto alg = builder_f3x3();
    ModuleFamily fam;
    fam.members = {jordan_module(kit.spec, 3), jordan_sum(kit.spec, {2, 1}),
                   jordan_sum(kit.spec, {1, 1, 1})};
    auto fam_file = write_json("family.json", json(fam));

    auto r = run_cli("poset build " + alg.string() + " " + fam_file.string() + " --relation deg");
    REQUIRE(r.exit_code == 0);
    auto rel = json::parse(r.out).get<RelationMatrix>();
    REQUIRE(rel.size() == 3);
    REQUIRE(rel.at(0, 1).verdict == Verdict::proved);
    REQUIRE(rel.at(2, 0).verdict == Verdict::refuted);

    r = run_cli("poset check " + alg.string() + " " + fam_file.string() + " --relation deg");
    REQUIRE(r.exit_code == 0);
    auto rep = json::parse(r.out).get<PosetReport>();
    REQUIRE(rep.ok);
    REQUIRE(rep.proved == 6);
    REQUIRE(rep.refuted == 3);

    r = run_cli("poset dot " + alg.string() + " " + fam_file.string() + " --relation deg");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("digraph deg") != std::string::npos);
    REQUIRE(r.out.find("n0 -> n1;") != std::string::npos);
    REQUIRE(r.out.find("n1 -> n2;") != std::string::npos);
    REQUIRE(r.out.find("n0 -> n2") == std::string::npos);

    // reruns with the same seed are byte-identical
    auto again = run_cli("poset dot " + alg.string() + " " + fam_file.string() +
                         " --relation deg --seed 17");
    REQUIRE(again.out == r.out);
    auto b1 = run_cli("poset build " + alg.string() + " " + fam_file.string() + " --relation st");
    auto b2 = run_cli("poset build " + alg.string() + " " + fam_file.string() + " --relation st");
    REQUIRE(b1.exit_code == 0);
    REQUIRE(b1.out == b2.out);
}
