#include <catch2/catch_amalgamated.hpp>

#include "singorder/stablecat.hpp"

using namespace singorder;

namespace {

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

}  // namespace

TEST_CASE("stable hom dimensions match the truncated polynomial closed form") {
    // over F_p[x]/(x^k) the stable hom between Jordan blocks i and j has
    // dimension min(i, j, k-i, k-j)
    for (u32 p : {2u, 3u}) {
        for (int k : {2, 3, 4}) {
            std::vector<u32> f(k + 1, 0);
            f[k] = 1;
            auto kit = build_univariate(p, f);
            auto rad = radical(kit.spec);
            for (int i = 1; i <= k; ++i)
                for (int j = 1; j <= k; ++j) {
                    auto sh = stable_hom(kit.spec, rad.basis, jordan_module(kit.spec, i),
                                         jordan_module(kit.spec, j));
                    int expect = std::min(std::min(i, j), std::min(k - i, k - j));
                    INFO("p=" << p << " k=" << k << " i=" << i << " j=" << j);
                    REQUIRE(sh.stable_dim() == expect);
                    REQUIRE(static_cast<int>(sh.hom.size()) == std::min(i, j));
                    REQUIRE(sh.factoring.dim() == std::min(i, j) - expect);
                }
        }
    }
}

TEST_CASE("stably zero modules are exactly the projectives") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;
    auto rad = radical(spec);
    REQUIRE(is_stably_zero(spec, rad.basis, regular_module(spec)));
    REQUIRE(is_stably_zero(spec, rad.basis, zero_module(spec)));
    REQUIRE_FALSE(is_stably_zero(spec, rad.basis, jordan_module(spec, 1)));
    REQUIRE_FALSE(is_stably_zero(spec, rad.basis, jordan_module(spec, 2)));
    REQUIRE_FALSE(is_stably_zero(spec, rad.basis, jordan_sum(spec, {1, 3})));

    auto quiv = build_bound_quiver(2, 2, {{0, 1, "a"}}, {}, 2);
    auto qrad = radical(quiv.spec);
    REQUIRE(is_stably_zero(quiv.spec, qrad.basis, quiv.simples[1]));  // simple projective
    REQUIRE_FALSE(is_stably_zero(quiv.spec, qrad.basis, quiv.simples[0]));
    // the syzygy of a projective through the non-minimal cover is projective
    auto o1 = syzygy(quiv.spec, quiv.simples[1], qrad.basis);
    REQUIRE(o1.omega.d == 2);
    REQUIRE(is_stably_zero(quiv.spec, qrad.basis, o1.omega));
}

TEST_CASE("stable isomorphism with two-sided witnesses") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;
    auto rad = radical(spec);
    auto m1 = jordan_module(spec, 1);
    auto m2 = jordan_module(spec, 2);
    auto m3 = regular_module(spec);

    SECTION("projective summands are invisible") {
        auto r = stable_iso(spec, rad.basis, m1, jordan_sum(spec, {1, 3}));
        REQUIRE(r.verdict == Ternary::yes);
        REQUIRE(r.f.rows == 4);
        REQUIRE(r.f.cols == 1);

        auto z = stable_iso(spec, rad.basis, m3, zero_module(spec));
        REQUIRE(z.verdict == Ternary::yes);
    }

    SECTION("distinct non-projectives are separated") {
        REQUIRE(stable_iso(spec, rad.basis, m1, m2).verdict == Ternary::no);
        auto two = build_univariate(2, {0, 0, 1});
        auto trad = radical(two.spec);
        auto s = jordan_module(two.spec, 1);
        auto ss = direct_sum(two.spec, s, s);
        REQUIRE(stable_iso(two.spec, trad.basis, ss, regular_module(two.spec)).verdict ==
                Ternary::no);
    }

    SECTION("reflexivity and syzygy identities") {
        REQUIRE(stable_iso(spec, rad.basis, m2, m2).verdict == Ternary::yes);
        auto o = syzygy(spec, m1, rad.basis);
        REQUIRE(stable_iso(spec, rad.basis, o.omega, m2).verdict == Ternary::yes);
    }

    SECTION("the same separation works one syzygy up") {
        auto four = build_univariate(2, {0, 0, 0, 0, 1});
        auto frad = radical(four.spec);
        auto a = jordan_module(four.spec, 1);
        auto b = jordan_module(four.spec, 3);  // its syzygy partner
        REQUIRE(stable_iso(four.spec, frad.basis, a, b).verdict == Ternary::no);
        auto oa = syzygy(four.spec, a, frad.basis);
        REQUIRE(stable_iso(four.spec, frad.basis, oa.omega, b).verdict == Ternary::yes);
    }
}

TEST_CASE("triangles carry certificates back and forth") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;
    auto m3 = regular_module(spec);
    auto m21 = jordan_sum(spec, {2, 1});

    auto found = deg_search(spec, m3, m21);
    REQUIRE(found.verdict == Verdict::proved);
    auto tri = triangle_from_certificate(spec, found.cert);
    REQUIRE(verify_triangle(spec, tri).ok);

    auto back = certificate_from_triangle(spec, tri);
    REQUIRE(verify_certificate(spec, back).ok);
    REQUIRE(back.x.d == found.cert.x.d);
    REQUIRE(back.u == found.cert.u);
    REQUIRE(back.v == found.cert.v);

    // a pushout-shape sequence does not read back as a plain certificate
    auto rad = radical(spec);
    auto soc = socle_columns(spec, m3, rad.basis);
    auto push = pushout_one_step(spec, m3, soc);
    auto ptri = triangle_from_certificate(spec, push);
    REQUIRE(verify_triangle(spec, ptri).ok);
    REQUIRE_THROWS_AS(certificate_from_triangle(spec, ptri), CheckError);
}

TEST_CASE("a padded third object splits back into the middle") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;
    Fp fp(spec.p);
    auto m2 = jordan_module(spec, 2);
    auto m11 = jordan_sum(spec, {1, 1});
    auto reg = regular_module(spec);

    auto found = deg_search(spec, m2, m11);
    REQUIRE(found.verdict == Verdict::proved);
    auto tri = triangle_from_certificate(spec, found.cert);

    LeftTriangle padded;
    padded.b = tri.b;
    padded.c = direct_sum(spec, tri.c, reg);
    padded.d = direct_sum(spec, tri.d, reg);
    padded.u = vstack(tri.u, Matrix(reg.d, tri.b.d));
    padded.v = block_diag(tri.v, Matrix::identity(reg.d));
    REQUIRE(verify_triangle(spec, padded).ok);

    auto split = certificate_from_triangle(spec, padded, reg.d);
    REQUIRE(verify_certificate(spec, split).ok);
    REQUIRE(split.x.d == found.cert.x.d + reg.d);
    REQUIRE(split.y.d == found.cert.y.d + reg.d);
    REQUIRE(split.z.d == found.cert.z.d);
    REQUIRE(iso_test(spec, split.y, direct_sum(spec, m11, reg)).verdict == Ternary::yes);

    SECTION("bad split positions are rejected") {
        REQUIRE_THROWS_AS(certificate_from_triangle(spec, padded, padded.d.d), InputError);
        REQUIRE_THROWS_AS(certificate_from_triangle(spec, padded, 2), CheckError);
    }
}

TEST_CASE("rotation produces a verified certificate between syzygies") {
    auto kit = build_univariate(3, {0, 0, 0, 1});
    const auto& spec = kit.spec;
    auto rad = radical(spec);
    auto m1 = jordan_module(spec, 1);
    auto m2 = jordan_module(spec, 2);

    auto found = deg_search(spec, m2, jordan_sum(spec, {1, 1}));
    REQUIRE(found.verdict == Verdict::proved);
    auto rot = rotate(spec, rad.basis, found.cert);

    // O(M2) = M1 against O(M1 + M1) = M2 + M2, padded by free summands
    REQUIRE(rot.x_core == 1);
    REQUIRE(rot.y_core == 4);
    REQUIRE(rot.cert.x.d == rot.cert.y.d);
    REQUIRE(iso_test(spec, rot.cert.y, jordan_sum(spec, {2, 2})).verdict == Ternary::yes);
    REQUIRE(iso_test(spec, rot.cert.x, jordan_sum(spec, {1, 3})).verdict == Ternary::yes);

    // the rotated relation re-derives independently
    auto again = deg_search(spec, rot.cert.x, rot.cert.y);
    REQUIRE(again.verdict == Verdict::proved);

    SECTION("rotating twice keeps certifying") {
        auto rot2 = rotate(spec, rad.basis, rot.cert);
        REQUIRE(rot2.cert.x.d == rot2.cert.y.d);
        REQUIRE(rot2.y_core == syzygy(spec, rot.cert.y, rad.basis).omega.d);
    }

    SECTION("trivial certificates rotate to trivial relations") {
        auto refl = deg_search(spec, m2, m2);
        auto r = rotate(spec, rad.basis, refl.cert);
        REQUIRE(r.cert.x.d == 1);
        REQUIRE(r.cert.y.d == 1);
        REQUIRE(iso_test(spec, r.cert.x, m1).verdict == Ternary::yes);
    }

    SECTION("input validation") {
        auto soc = socle_columns(spec, regular_module(spec), rad.basis);
        auto push = pushout_one_step(spec, regular_module(spec), soc);
        REQUIRE_THROWS_AS(rotate(spec, rad.basis, push), InputError);
        auto broken = found.cert;
        broken.u.at(0, 0) = (broken.u.at(0, 0) + 1) % spec.p;
        REQUIRE_THROWS_AS(rotate(spec, rad.basis, broken), InputError);
    }
}

TEST_CASE("rotation respects the path algebra example") {
    auto kit = build_bound_quiver(2, 2, {{0, 1, "a"}}, {}, 2);
    const auto& spec = kit.spec;
    auto rad = radical(spec);
    auto reg = regular_module(spec);
    std::vector<u32> e0 = {1, 0, 0}, e1 = {0, 1, 0};
    auto p0 = sub_quotient(spec, reg, spin(spec, reg, {e0}).column_basis()).sub;
    auto p1 = sub_quotient(spec, reg, spin(spec, reg, {e1}).column_basis()).sub;

    StOptions opt;
    opt.projectives = {p0, p1};
    auto st = st_compare(spec, rad.basis, kit.simples[1], kit.simples[0], opt);
    REQUIRE(st.verdict == Verdict::proved);

    auto rot = rotate(spec, rad.basis, st.cert);
    REQUIRE(rot.cert.x.d == rot.cert.y.d);
    REQUIRE(rot.x_core == syzygy(spec, st.cert.x, rad.basis).omega.d);
    // both syzygies are projective here, so the rotated ends are stably zero
    REQUIRE(is_stably_zero(spec, rad.basis, rot.cert.x));
    REQUIRE(is_stably_zero(spec, rad.basis, rot.cert.y));
}
