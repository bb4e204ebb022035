#include <catch2/catch_amalgamated.hpp>

#include "singorder/degen.hpp"

using namespace singorder;

namespace {

// F_p[x]/(x^k)-module F_p[x]/(x^i): x acts as the nilpotent shift.
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

// Subspace enumeration oracle for d <= 3: every subspace is spanned by at
// most two vectors or is the whole space, so pair spans plus the full space
// exhaust the lattice.  Filters by invariance directly.
size_t brute_invariant_count(const AlgebraSpec& spec, const ModuleRep& m) {
    REQUIRE(m.d <= 3);
    Fp fp(spec.p);
    u64 total = 1;
    for (int i = 0; i < m.d; ++i) total *= spec.p;
    std::map<std::string, Matrix> seen;
    Subspace zero(fp, m.d);
    seen.emplace(zero.key(), zero.column_basis());
    auto decode = [&](u64 code) {
        std::vector<u32> v(m.d);
        for (int i = 0; i < m.d; ++i) {
            v[i] = static_cast<u32>(code % spec.p);
            code /= spec.p;
        }
        return v;
    };
    for (u64 a = 0; a < total; ++a)
        for (u64 b = a; b < total; ++b) {
            Subspace s(fp, m.d);
            s.insert(decode(a));
            s.insert(decode(b));
            seen.emplace(s.key(), s.column_basis());
        }
    if (m.d == 3) {
        Subspace full(fp, m.d);
        full.insert_matrix_columns(Matrix::identity(m.d));
        seen.emplace(full.key(), full.column_basis());
    }
    size_t count = 0;
    for (const auto& kv : seen)
        if (is_invariant_columns(spec, m, kv.second)) ++count;
    return count;
}

Matrix socle_of(const AlgebraSpec& spec, const ModuleRep& m) {
    auto rad = radical(spec);
    return socle_columns(spec, m, rad.basis);
}

}  // namespace

TEST_CASE("hand-built certificate over the two-dimensional truncated algebra") {
    auto kit = build_univariate(2, {0, 0, 1});  // x^2 = 0
    const auto& spec = kit.spec;
    auto a = regular_module(spec);
    auto s = jordan_module(spec, 1);
    auto ss = direct_sum(spec, s, s);

    // 0 -> S+S -> A+S -> S -> 0: socle inclusion paired with the identity,
    // then projection onto the top of A.
    DegenerationCertificate c;
    c.x = a;
    c.y = ss;
    c.z = s;
    c.u = Matrix(3, 2);
    c.u.at(1, 0) = 1;  // first S onto the socle x of A
    c.u.at(2, 1) = 1;  // second S onto the extra S coordinate
    c.v = Matrix(1, 3);
    c.v.at(0, 0) = 1;  // top coefficient of A
    REQUIRE(verify_certificate(spec, c).ok);

    SECTION("tampered maps are rejected") {
        auto bad = c;
        bad.u.at(0, 0) = 1;  // no longer lands in the kernel
        REQUIRE_FALSE(verify_certificate(spec, bad).ok);

        bad = c;
        bad.v.at(0, 1) = 1;  // composite through the middle becomes nonzero
        REQUIRE_FALSE(verify_certificate(spec, bad).ok);

        bad = c;
        bad.u = Matrix(3, 2);  // zero map is not injective
        REQUIRE_FALSE(verify_certificate(spec, bad).ok);

        bad = c;
        bad.z = zero_module(spec);  // middle dimension no longer matches
        REQUIRE_FALSE(verify_certificate(spec, bad).ok);

        bad = c;
        bad.x.action[1] = Matrix::identity(2);  // x must act nilpotently
        REQUIRE_FALSE(verify_certificate(spec, bad).ok);
    }
}

TEST_CASE("one-step split certificates") {
    auto kit = build_univariate(3, {0, 0, 0, 1});  // x^3 = 0
    const auto& spec = kit.spec;
    auto m3 = regular_module(spec);

    auto soc = socle_of(spec, m3);
    REQUIRE(soc.cols == 1);
    auto push = pushout_one_step(spec, m3, soc);
    REQUIRE(verify_certificate(spec, push).ok);
    REQUIRE(push.y.d == 3);
    REQUIRE(iso_test(spec, push.y, jordan_sum(spec, {1, 2})).verdict == Ternary::yes);

    auto filt = filtration_certificate(spec, m3, {soc});
    REQUIRE(verify_certificate(spec, filt).ok);
    REQUIRE(iso_test(spec, filt.y, jordan_sum(spec, {1, 2})).verdict == Ternary::yes);

    // the radical as the splitting submodule: M3 collapses to M2 + M1
    auto rad = radical(spec);
    auto radcols = radical_submodule_columns(spec, m3, rad.basis);
    REQUIRE(radcols.cols == 2);
    auto push2 = pushout_one_step(spec, m3, radcols);
    REQUIRE(verify_certificate(spec, push2).ok);
    REQUIRE(iso_test(spec, push2.y, jordan_sum(spec, {2, 1})).verdict == Ternary::yes);
}

TEST_CASE("full chain collapse reaches the semisimple module") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;
    auto m3 = regular_module(spec);
    auto rad = radical(spec);
    auto soc = socle_columns(spec, m3, rad.basis);
    auto radcols = radical_submodule_columns(spec, m3, rad.basis);

    auto cert = filtration_certificate(spec, m3, {soc, radcols});
    REQUIRE(verify_certificate(spec, cert).ok);
    REQUIRE(cert.y.d == 3);
    REQUIRE(iso_test(spec, cert.y, jordan_sum(spec, {1, 1, 1})).verdict == Ternary::yes);
    REQUIRE(cert.z.d == 3);  // M/soc + M/rad

    SECTION("chains must be nested, proper and increasing") {
        REQUIRE_THROWS_AS(filtration_certificate(spec, m3, {radcols, soc}), InputError);
        REQUIRE_THROWS_AS(filtration_certificate(spec, m3, {Matrix::identity(3)}), InputError);
        REQUIRE_THROWS_AS(filtration_certificate(spec, m3, {Matrix(3, 0)}), InputError);
    }

    SECTION("non-nested chain members are rejected") {
        auto m21 = jordan_sum(spec, {2, 1});
        // two incomparable invariant lines: equal dimensions fail fast
        Matrix u1(3, 1), u2(3, 1);
        u1.at(1, 0) = 1;  // span{x e1}
        u2.at(2, 0) = 1;  // span{e2}
        REQUIRE(is_invariant_columns(spec, m21, u1));
        REQUIRE(is_invariant_columns(spec, m21, u2));
        REQUIRE_THROWS_AS(filtration_certificate(spec, m21, {u1, u2}), InputError);

        // increasing dimensions but no containment
        Matrix w(3, 2);  // span{e1, x e1}, which misses e2
        w.at(0, 0) = 1;
        w.at(1, 1) = 1;
        REQUIRE(is_invariant_columns(spec, m21, w));
        REQUIRE_THROWS_AS(filtration_certificate(spec, m21, {u2, w}), InputError);
    }
}

TEST_CASE("submodule enumeration matches the brute-force lattice") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;

    auto m3 = regular_module(spec);
    auto subs3 = all_submodules(spec, m3);
    REQUIRE(subs3.has_value());
    REQUIRE(subs3->size() == brute_invariant_count(spec, m3));  // 0, soc, rad, M
    REQUIRE(subs3->size() == 4);

    auto m21 = jordan_sum(spec, {2, 1});
    auto subs21 = all_submodules(spec, m21);
    REQUIRE(subs21.has_value());
    REQUIRE(subs21->size() == brute_invariant_count(spec, m21));

    auto m111 = jordan_sum(spec, {1, 1, 1});
    auto subs111 = all_submodules(spec, m111);
    REQUIRE(subs111.has_value());
    REQUIRE(subs111->size() == brute_invariant_count(spec, m111));  // all 28 subspaces

    // budgets degrade to "no answer", never to a wrong lattice
    REQUIRE_FALSE(all_submodules(spec, m111, 1u << 20, 5).has_value());
    REQUIRE_FALSE(all_submodules(spec, m111, 2).has_value());
}

TEST_CASE("degeneration search over the truncated polynomial family") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;
    auto m3 = regular_module(spec);
    auto m21 = jordan_sum(spec, {2, 1});
    auto m111 = jordan_sum(spec, {1, 1, 1});

    SECTION("reflexive pairs are proved by the isomorphism route") {
        for (const auto* m : {&m3, &m21, &m111}) {
            auto r = deg_search(spec, *m, *m);
            REQUIRE(r.verdict == Verdict::proved);
            REQUIRE(r.cert.z.d == 0);
        }
    }

    SECTION("downward pairs are proved with verified certificates") {
        auto r1 = deg_search(spec, m3, m21);
        REQUIRE(r1.verdict == Verdict::proved);
        REQUIRE(verify_certificate(spec, r1.cert).ok);
        REQUIRE(iso_test(spec, r1.cert.y, m21).verdict == Ternary::yes);

        auto r2 = deg_search(spec, m3, m111);
        REQUIRE(r2.verdict == Verdict::proved);
        REQUIRE(verify_certificate(spec, r2.cert).ok);

        auto r3 = deg_search(spec, m21, m111);
        REQUIRE(r3.verdict == Verdict::proved);
        REQUIRE(verify_certificate(spec, r3.cert).ok);

        auto r4 = deg_search(spec, jordan_module(spec, 2), jordan_sum(spec, {1, 1}));
        REQUIRE(r4.verdict == Verdict::proved);
    }

    SECTION("upward pairs are refuted by hom filters") {
        REQUIRE(deg_search(spec, m21, m3).verdict == Verdict::refuted);
        REQUIRE(deg_search(spec, m111, m3).verdict == Verdict::refuted);
        REQUIRE(deg_search(spec, m111, m21).verdict == Verdict::refuted);
        REQUIRE(deg_search(spec, jordan_sum(spec, {1, 1}), jordan_module(spec, 2)).verdict ==
                Verdict::refuted);
    }

    SECTION("dimension mismatches are refuted outright") {
        auto r = deg_search(spec, jordan_module(spec, 1), jordan_module(spec, 2));
        REQUIRE(r.verdict == Verdict::refuted);
        REQUIRE(r.reason == "dimensions differ");
    }
}

TEST_CASE("diagonal submodules are found by the search") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;
    // M1 + M3 degenerates to M2 + M2 through a diagonally embedded M2
    auto x = jordan_sum(spec, {1, 3});
    auto y = jordan_sum(spec, {2, 2});
    auto r = deg_search(spec, x, y);
    REQUIRE(r.verdict == Verdict::proved);
    REQUIRE(verify_certificate(spec, r.cert).ok);
    REQUIRE(iso_test(spec, r.cert.y, y).verdict == Ternary::yes);

    // and never in the other direction
    REQUIRE(deg_search(spec, y, x).verdict == Verdict::refuted);
}

TEST_CASE("composition factor filter") {
    auto kit = build_bound_quiver(3, 2, {{0, 1, "a"}}, {}, 2);
    const auto& spec = kit.spec;
    auto s0 = kit.simples[0];
    auto s1 = kit.simples[1];
    auto mixed = direct_sum(spec, s0, s1);
    auto twin = direct_sum(spec, s0, s0);

    REQUIRE(factor_filter_refute(spec, mixed, twin).has_value());
    REQUIRE_FALSE(factor_filter_refute(spec, mixed, mixed).has_value());

    auto uni = build_univariate(3, {0, 0, 0, 1});
    auto m3 = regular_module(uni.spec);
    auto m111 = jordan_sum(uni.spec, {1, 1, 1});
    REQUIRE_FALSE(factor_filter_refute(uni.spec, m3, m111).has_value());
}

TEST_CASE("stable comparison pads with projectives") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;
    auto rad = radical(spec);
    auto m1 = jordan_module(spec, 1);
    auto m2 = jordan_module(spec, 2);
    auto m3 = regular_module(spec);

    SECTION("projective modules are stably zero in both directions") {
        auto down = st_compare(spec, rad.basis, m3, zero_module(spec));
        REQUIRE(down.verdict == Verdict::proved);
        auto up = st_compare(spec, rad.basis, zero_module(spec), m3);
        REQUIRE(up.verdict == Verdict::proved);
    }

    SECTION("padding one side unlocks a plain degeneration") {
        // M2 + A degenerates to M1 + M1 + M3
        auto y = jordan_sum(spec, {1, 1, 3});
        auto r = st_compare(spec, rad.basis, m2, y);
        REQUIRE(r.verdict == Verdict::proved);
        REQUIRE(r.padded_x.d == 5);
        REQUIRE(r.padded_y.d == 5);
        REQUIRE(verify_certificate(spec, r.cert).ok);

        // M1 + A degenerates to M2 + M2
        auto r2 = st_compare(spec, rad.basis, m1, jordan_sum(spec, {2, 2}));
        REQUIRE(r2.verdict == Verdict::proved);
        REQUIRE(r2.padded_x.d == 4);

        // M2 + A degenerates to M1^5
        auto r3 = st_compare(spec, rad.basis, m2, jordan_sum(spec, {1, 1, 1, 1, 1}));
        REQUIRE(r3.verdict == Verdict::proved);
    }

    SECTION("dimension residues refute over a local algebra") {
        auto r = st_compare(spec, rad.basis, m1, m2);
        REQUIRE(r.verdict == Verdict::refuted);
        REQUIRE(r.experimental);
    }

    SECTION("uniform hom filters refute over a local algebra") {
        auto r = st_compare(spec, rad.basis, jordan_sum(spec, {1, 1, 1}), m3);
        REQUIRE(r.verdict == Verdict::refuted);
        REQUIRE(r.experimental);
        REQUIRE(r.reason.find("uniform") != std::string::npos);
    }
}

TEST_CASE("stable comparison over a path algebra uses indecomposable padding") {
    auto kit = build_bound_quiver(2, 2, {{0, 1, "a"}}, {}, 2);
    const auto& spec = kit.spec;
    auto rad = radical(spec);
    auto reg = regular_module(spec);
    std::vector<u32> e0 = {1, 0, 0}, e1 = {0, 1, 0};
    auto p0 = sub_quotient(spec, reg, spin(spec, reg, {e0}).column_basis()).sub;
    auto p1 = sub_quotient(spec, reg, spin(spec, reg, {e1}).column_basis()).sub;
    REQUIRE(p0.d == 2);
    REQUIRE(p1.d == 1);

    StOptions opt;
    opt.projectives = {p0, p1};
    auto s0 = kit.simples[0];
    auto s1 = kit.simples[1];

    // S1 + P0 degenerates to S0 + P1 + P1, so S1 precedes S0 stably
    auto r = st_compare(spec, rad.basis, s1, s0, opt);
    REQUIRE(r.verdict == Verdict::proved);
    REQUIRE(r.padded_x.d == 3);
    REQUIRE(verify_certificate(spec, r.cert).ok);

    // the reverse finds nothing within the padding budget and stays open
    auto rev = st_compare(spec, rad.basis, s0, s1, opt);
    REQUIRE(rev.verdict == Verdict::unknown);

    // the simple projective is stably zero
    auto z = st_compare(spec, rad.basis, s1, zero_module(spec), opt);
    REQUIRE(z.verdict == Verdict::proved);
}
