#include "doctest.h"

#include "qhcalc/session.hpp"
#include "test_data.hpp"

using namespace qhcalc;

TEST_CASE("tilting modules") {
    Session k1(load_algebra("k1.alg"));
    CHECK(k1.tilting_module(0)->total_dim() == 1);

    Session a3(load_algebra("a3_line.alg"));
    for (int i = 0; i < 3; ++i) {
        auto iso = iso_shift_test(a3.tilting_module(i), a3.projective(i));
        REQUIRE(iso.has_value()); // T(i) = P(i) for the directed line
        CHECK(iso->shift == 0);
    }

    Session sl2(load_algebra("sl2_block.alg"));
    CHECK(sl2.tilting_module(0)->total_dim() == 1);
    auto T2 = sl2.tilting_module(1);
    CHECK(T2->total_dim() == 3);
    CHECK(T2->slot_dim(0, -1) == 1);
    CHECK(T2->slot_dim(1, 0) == 1);
    CHECK(T2->slot_dim(0, 1) == 1);
    // P(s) ≅ T(e)<-1>
    auto iso = iso_shift_test(sl2.projective(0), T2);
    REQUIRE(iso.has_value());
    CHECK(iso->shift == -1);
    // Loewy lengths from the sl2 battery
    CHECK(loewy_data(T2).loewy_length == 3);
    CHECK(loewy_data(sl2.tilting_module(0)).loewy_length == 1);

    Session a4(load_algebra("a4_branch.alg"));
    CHECK(a4.tilting_module(1)->total_dim() == 2);
    CHECK(a4.tilting_module(2)->total_dim() == 3);
    CHECK(a4.tilting_module(3)->total_dim() == 4);

    // universal extension is the identity when Ext^1 vanishes
    for (int j = 0; j < 3; ++j)
        for (int i = j + 1; i < 3; ++i)
            CHECK(a3.universal_extension(a3.standard(i), j)->total_dim() ==
                  a3.standard(i)->total_dim());

    // Ext-orthogonality across all degrees up to the resolution length
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            for (int l = 1; l <= 2; ++l) {
                CHECK(sl2.ext_graded(sl2.standard(j), sl2.tilting_module(i), l).total() == 0);
                CHECK(sl2.op()
                          .ext_graded(sl2.op().standard(j),
                                      dualize(sl2.tilting_module(i), sl2.opp_algebra()), l)
                          .total() == 0); // Ext^l(T(i), ∇(j)) by duality
            }
        }
}

TEST_CASE("ringel dual") {
    Session k1(load_algebra("k1.alg"));
    CHECK(k1.ringel_dual()->total_dim() == 1);

    // End of ⊕P(i): T = A as a module, End(T)^opp ≅ A
    Session a3(load_algebra("a3_line.alg"));
    auto R = a3.ringel_dual();
    CHECK(R->dims() == a3.algebra()->dims());
    auto r = iso_search(*a3.algebra(), *R);
    CHECK(r.verdict == IsoResult::Verdict::Witness);

    Session sl2(load_algebra("sl2_block.alg"));
    auto Rs = sl2.ringel_dual(true); // relabeled i -> n+1-i
    auto rs = iso_search(*sl2.algebra(), *Rs);
    CHECK(rs.verdict == IsoResult::Verdict::Witness);
    CHECK(sl2.tilting().ringel_positive);
    CHECK(sl2.tilting().ringel_generated_01);

    Session c4(load_algebra("c4_flow.alg"));
    CHECK(!c4.tilting().ringel_positive);
    CHECK_THROWS_AS(c4.ringel_dual(), NotPositivelyGraded);

    Session a4(load_algebra("a4_branch.alg"));
    CHECK(!a4.tilting().ringel_positive);
}

TEST_CASE("tilting resolutions") {
    Session sl2(load_algebra("sl2_block.alg"));
    auto tr = sl2.tilting_resolution(sl2.costandard(1), false);
    CHECK(tr.length == 1);
    CHECK(tr.linear);
    CHECK(tr.multiplicity(0, 1, 0) == 1);   // T(2)
    CHECK(tr.multiplicity(-1, 0, -1) == 1); // T(1)<-1>
    // M = T(i) has the length-0 resolution
    auto tt = sl2.tilting_resolution(sl2.tilting_module(1), false);
    CHECK(tt.length == 0);
    CHECK(tt.summands.at(0).size() == 1);

    Session a3(load_algebra("a3_line.alg"));
    auto t3 = a3.tilting_resolution(a3.costandard(2), false);
    CHECK(t3.length == 1);
    CHECK(t3.linear);
    CHECK(t3.multiplicity(0, 2, 0) == 1);
    CHECK(t3.multiplicity(-1, 1, -1) == 1); // T(2)<-1>

    // homology concentrated at position 0 ≅ the resolved module; minimality
    for (const char* name : {"a3_line.alg", "sl2_block.alg", "a4_branch.alg", "c4_flow.alg"}) {
        Session s(load_algebra(name));
        for (int i = 0; i < s.n(); ++i) {
            auto t = s.tilting_resolution(s.costandard(i), false);
            for (int p = -t.length; p < 0; ++p)
                CHECK(complex_homology(t.cx, p, s.algebra())->total_dim() == 0);
            auto K = submodule(t.cx.at(0, s.algebra()), t.augmentation.kernel());
            CHECK(t.cx.at(0, s.algebra())->total_dim() - K.module->total_dim() ==
                  s.costandard(i)->total_dim());
            // coresolutions of standards
            auto c = s.tilting_resolution(s.standard(i), true);
            for (int p = 1; p <= c.length; ++p)
                CHECK(complex_homology(c.cx, p, s.algebra())->total_dim() == 0);
            CHECK(c.augmentation.is_injective());
        }
    }

    // L(e) has neither a standard nor a costandard filtration
    CHECK_THROWS_AS(sl2.tilting_resolution(sl2.simple(1), false), FiltrationMissing);
    CHECK_THROWS_AS(sl2.tilting_resolution(sl2.simple(1), true), FiltrationMissing);
}

TEST_CASE("classify flags") {
    Session k1(load_algebra("k1.alg"));
    auto& rk = k1.classify();
    CHECK(rk.qh);
    CHECK(rk.sct);
    CHECK(rk.sck);
    CHECK(rk.balanced);

    Session sl2(load_algebra("sl2_block.alg"));
    auto& rs = sl2.classify();
    CHECK(rs.qh);
    CHECK(rs.koszul);
    CHECK(rs.standard_koszul);
    CHECK(rs.sct);
    CHECK(rs.sck);
    CHECK(rs.ringel_positive);
    CHECK(rs.ringel_generated_01);
    CHECK(rs.balanced);

    Session a4(load_algebra("a4_branch.alg"));
    auto& ra = a4.classify();
    CHECK(ra.standard_koszul);
    CHECK(!ra.ringel_positive);
    CHECK(!ra.lt_resolutions_all_costd); // some ∇(i) has no LT-resolution
    CHECK(!ra.sct);
    CHECK(!ra.sck);

    Session c4(load_algebra("c4_flow.alg"));
    auto& rc = c4.classify();
    CHECK(rc.lt_resolutions_all_costd); // condition (i) holds for all i
    CHECK(!rc.ringel_positive);         // condition (ii) fails
    CHECK(!rc.sck);

    Session loop(load_algebra("loop1.alg"));
    CHECK(!loop.classify().qh);

    Session a3(load_algebra("a3_line.alg"));
    CHECK(a3.classify().sct == a3.classify().sck);
}

TEST_CASE("SCT coker layers have positive shifts") {
    // subquotients of coker(Δ(i) -> T(i)) are Δ(j)<l>, l > 0, on SCT inputs
    for (const char* name : {"a3_line.alg", "sl2_block.alg"}) {
        Session s(load_algebra(name));
        REQUIRE(s.classify().sct);
        for (int i = 0; i < s.n(); ++i) {
            const auto& td = s.tilting();
            auto ck = quotient_module(td.modules[i], td.std_embeddings[i].image());
            if (ck.module->is_zero()) continue;
            auto f = s.filtration(ck.module, FiltKind::Standard);
            REQUIRE(f.has_value());
            for (const auto& l : f->layers) CHECK(l.shift > 0);
        }
    }
}

TEST_CASE("Lemma 4.2 composites") {
    // random homogeneous beta: Δ(i) -> T(j), gamma: T(j) -> ∇(k);
    // a nonzero composite forces i = j = k
    Session sl2(load_algebra("sl2_block.alg"));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                auto hb = hom_graded(sl2.standard(i), sl2.tilting_module(j));
                auto hg = hom_graded(sl2.tilting_module(j), sl2.costandard(k));
                for (const auto& [s1, betas] : hb)
                    for (const auto& [s2, gammas] : hg)
                        for (int t = 0; t < 8; ++t) {
                            ModuleMap beta = betas[0].scaled(Scalar(0));
                            for (const auto& b : betas) beta = beta + b.scaled(Scalar(coef(rng)));
                            ModuleMap gamma = gammas[0].scaled(Scalar(0));
                            for (const auto& g : gammas)
                                gamma = gamma + g.scaled(Scalar(coef(rng)));
                            if (!gamma.compose(beta).is_zero()) {
                                CHECK(i == j);
                                CHECK(j == k);
                                CHECK(!beta.is_zero());
                                CHECK(!gamma.is_zero());
                            }
                        }
            }
}
