#include "doctest.h"

#include "qhcalc/algebra.hpp"
#include "test_data.hpp"

using namespace qhcalc;

TEST_CASE("build_algebra on the bundled corpus") {
    auto k1 = load_algebra("k1.alg");
    CHECK(k1->dims() == std::vector<int>{1});
    CHECK(k1->total_dim() == 1);

    auto a3 = load_algebra("a3_line.alg");
    CHECK(a3->dims() == std::vector<int>{3, 2, 1});
    CHECK(a3->total_dim() == 6);

    auto sl2 = load_algebra("sl2_block.alg");
    CHECK(sl2->dims() == std::vector<int>{2, 2, 1});
    CHECK(sl2->total_dim() == 5);

    auto a4 = load_algebra("a4_branch.alg");
    CHECK(a4->total_dim() == 4 + 3 + 1); // e_i, arrows, b.c

    auto c4 = load_algebra("c4_flow.alg");
    CHECK(c4->total_dim() == 4 + 3 + 2); // a.b and c.b in degree 2

    auto loop1 = load_algebra("loop1.alg");
    CHECK(loop1->dims() == std::vector<int>{1, 1});
}

TEST_CASE("build_algebra error cases") {
    Presentation p;
    p.vertices = {"1"};
    p.arrows.push_back({"x", 0, 0, 1});
    BuildOptions opt;
    opt.degree_cap = 16;
    CHECK_THROWS_AS(build_algebra(p, opt), NotFiniteDimensional);

    Presentation bad;
    bad.vertices = {"1"};
    bad.arrows.push_back({"x", 0, 0, 0});
    CHECK_THROWS_AS(build_algebra(bad), NotPositivelyGraded);
}

TEST_CASE("multiplication: idempotents, composition order, associativity") {
    auto a3 = load_algebra("a3_line.alg");
    const Field& f = a3->field();
    // e_i ∘ e_i = e_i, e_i ∘ e_j = 0
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Matrix prod = a3->multiply_basis(0, i, 0, j);
            for (int k = 0; k < 3; ++k)
                CHECK(prod.at(k, 0) == ((i == j && k == i) ? Scalar(1) : Scalar(0)));
        }
    // e_1 ∘ a = a for the arrow a: 2 -> 1
    int a_idx = -1;
    for (int k = 0; k < a3->dim(1); ++k)
        if (a3->basis_label(1, k) == "a") a_idx = k;
    REQUIRE(a_idx >= 0);
    Matrix lhs = a3->multiply_basis(0, 0, 1, a_idx);
    Matrix unit(a3->dim(1), 1, f);
    unit.set(a_idx, 0, Scalar(1));
    CHECK(lhs == unit);

    auto sl2 = load_algebra("sl2_block.alg");
    // v ∘ u = 0 is the defining relation (u: e->s first, then v: s->e)
    int u_idx = -1, v_idx = -1;
    for (int k = 0; k < sl2->dim(1); ++k) {
        if (sl2->basis_label(1, k) == "u") u_idx = k;
        if (sl2->basis_label(1, k) == "v") v_idx = k;
    }
    REQUIRE(u_idx >= 0);
    REQUIRE(v_idx >= 0);
    CHECK(sl2->multiply_basis(1, v_idx, 1, u_idx).is_zero());
    CHECK(!sl2->multiply_basis(1, u_idx, 1, v_idx).is_zero());

    // associativity on all basis triples, and the grading of products
    for (auto alg : {a3, sl2}) {
        for (int d1 = 0; d1 <= alg->max_degree(); ++d1)
            for (int d2 = 0; d1 + d2 <= alg->max_degree(); ++d2)
                for (int d3 = 0; d1 + d2 + d3 <= alg->max_degree(); ++d3)
                    for (int k1 = 0; k1 < alg->dim(d1); ++k1)
                        for (int k2 = 0; k2 < alg->dim(d2); ++k2)
                            for (int k3 = 0; k3 < alg->dim(d3); ++k3) {
                                Matrix xy = alg->multiply_basis(d1, k1, d2, k2);
                                Matrix yz = alg->multiply_basis(d2, k2, d3, k3);
                                Matrix z(alg->dim(d3), 1, alg->field());
                                z.set(k3, 0, Scalar(1));
                                Matrix x(alg->dim(d1), 1, alg->field());
                                x.set(k1, 0, Scalar(1));
                                CHECK(alg->multiply(d1 + d2, xy, d3, z) ==
                                      alg->multiply(d1, x, d2 + d3, yz));
                            }
    }
}

TEST_CASE("opposite") {
    auto a3 = load_algebra("a3_line.alg");
    auto opp = opposite(a3);
    CHECK(opp->dims() == a3->dims());
    // arrows now 1 -> 2 and 2 -> 3
    CHECK(opp->dim_pair(1, 0, 1) == 1);
    CHECK(opp->dim_pair(1, 1, 2) == 1);
    CHECK(opp->dim_pair(1, 1, 0) == 0);

    auto sl2 = load_algebra("sl2_block.alg");
    auto sl2op = opposite(sl2);
    CHECK(sl2op->dims() == sl2->dims());
    auto r = iso_search(*sl2, *sl2op);
    CHECK(r.verdict == IsoResult::Verdict::Witness);
}

TEST_CASE("quadratic dual") {
    auto k1 = load_algebra("k1.alg");
    auto k1d = quadratic_dual(k1);
    CHECK(k1d->dims() == std::vector<int>{1});

    auto a3 = load_algebra("a3_line.alg");
    auto a3d = quadratic_dual(a3);
    CHECK(a3d->dims() == std::vector<int>{3, 2});
    CHECK(a3d->total_dim() == 5);

    auto sl2 = load_algebra("sl2_block.alg");
    auto sl2d = quadratic_dual(sl2);
    CHECK(sl2d->dims() == sl2->dims());
    // the relation moves to the other composite; the quasi-hereditary orders
    // are opposite, so the iso reverses the labels
    auto rel = build_algebra_ptr(relabel_presentation(sl2d->presentation(), reversal_perm(2)));
    auto r = iso_search(*sl2, *rel);
    CHECK(r.verdict == IsoResult::Verdict::Witness);
    IsoOptions any;
    any.label_preserving = false;
    CHECK(iso_search(*sl2, *sl2d, any).verdict == IsoResult::Verdict::Witness);

    // double dual is label-preserving isomorphic to the original
    for (auto alg : {a3, sl2}) {
        auto dd = quadratic_dual(quadratic_dual(alg));
        CHECK(iso_search(*alg, *dd).verdict == IsoResult::Verdict::Witness);
    }

    // dim of degree-2 part of the dual = composable arrow pairs - dim A_2
    for (auto alg : {a3, sl2, load_algebra("a4_branch.alg"), load_algebra("c4_flow.alg")}) {
        int pairs = 0;
        const auto& pr = alg->presentation();
        for (const auto& x : pr.arrows)
            for (const auto& y : pr.arrows)
                if (x.dst == y.src) ++pairs;
        auto d = quadratic_dual(alg);
        CHECK(d->dim(2) == pairs - alg->dim(2));
    }

    Presentation deg2;
    deg2.vertices = {"1", "2"};
    deg2.arrows.push_back({"z", 0, 1, 2});
    auto heavy = build_algebra_ptr(deg2);
    CHECK_THROWS_AS(quadratic_dual(heavy), NotDegreeOneGenerated);
}

TEST_CASE("iso_search basics") {
    auto a3 = load_algebra("a3_line.alg");
    auto self = iso_search(*a3, *a3);
    REQUIRE(self.verdict == IsoResult::Verdict::Witness);

    auto opp = opposite(a3);
    auto r = iso_search(*a3, *opp);
    REQUIRE(r.verdict == IsoResult::Verdict::Distinguisher);

    auto sl2 = load_algebra("sl2_block.alg");
    CHECK(iso_search(*sl2, *quadratic_dual(sl2), IsoOptions{false, 2000000}).verdict ==
          IsoResult::Verdict::Witness);
}

namespace {

// wrap a built algebra as an AbstractAlgebra over its own structure constants
AbstractAlgebra as_abstract(const AlgebraPtr& a) {
    AbstractAlgebra ab;
    ab.field = a->field();
    ab.vertex_labels = a->presentation().vertices;
    ab.basis.resize(a->max_degree() + 1);
    for (int d = 0; d <= a->max_degree(); ++d)
        for (int k = 0; k < a->dim(d); ++k)
            ab.basis[d].push_back({a->basis_info(d, k).src, a->basis_info(d, k).dst});
    ab.mult = [a](int d1, int k1, int d2, int k2) {
        Matrix p = a->multiply_basis(d1, k1, d2, k2);
        std::vector<Scalar> out(p.rows());
        for (int r = 0; r < p.rows(); ++r) out[r] = p.at(r, 0);
        return out;
    };
    return ab;
}

} // namespace

TEST_CASE("presentation_extract round trip") {
    for (const char* name : {"k1.alg", "a3_line.alg", "a4_branch.alg", "c4_flow.alg",
                             "sl2_block.alg", "loop1.alg"}) {
        auto a = load_algebra(name);
        if (!a->generated_in_degree_one()) continue;
        Presentation q = presentation_extract(as_abstract(a));
        auto b = build_algebra_ptr(q);
        CHECK(b->dims() == a->dims());
        auto r = iso_search(*a, *b);
        CHECK(r.verdict == IsoResult::Verdict::Witness);
    }
}

TEST_CASE("presentation parser rejects bad input") {
    CHECK_THROWS_AS(parse_presentation("vertices 1 2\narrow a 1 9\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("vertices 1\nrelation 1*zz\n"), ParseError);
    // non-homogeneous relation: x has degree 1, x.x degree 2
    CHECK_THROWS_AS(
        parse_presentation("vertices 1\narrow x 1 1\nrelation 1*x + 1*x.x\n"),
        ParseError);
    // mixed source/target
    CHECK_THROWS_AS(
        parse_presentation("vertices 1 2\narrow a 1 2\narrow b 2 1\nrelation 1*a + 1*b\n"),
        ParseError);
}
