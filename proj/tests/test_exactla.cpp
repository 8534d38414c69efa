#include "doctest.h"

#include <random>

#include "qhcalc/matrix.hpp"

using namespace qhcalc;

namespace {

// Independent rank oracle: fraction-free (Bareiss) elimination over the
// integers after clearing denominators. Shares no code with rank_rref.
int bareiss_rank(const Matrix& m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (int r = 0; r < rows; ++r) {
        mpz_class lcm_den(1);
        for (int c = 0; c < cols; ++c) {
            mpz_class d = m.at(r, c).get_den();
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        }
        for (int c = 0; c < cols; ++c) {
            mpq_class v = m.at(r, c) * mpq_class(lcm_den);
            a[r][c] = v.get_num();
        }
    }
    mpz_class prev(1);
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int sel = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[sel], a[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int k = c + 1; k < cols; ++k)
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, bool degenerate) {
    Matrix m(rows, cols);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, Scalar(num(rng), den(rng)));
    if (degenerate && rows >= 2) {
        // overwrite one row with a combination of two others
        std::uniform_int_distribution<int> pick(0, rows - 1);
        int t = pick(rng), s = pick(rng);
        if (t != s)
            for (int c = 0; c < cols; ++c)
                m.set(t, c, m.at(s, c) * Scalar(num(rng)));
    }
    return m;
}

} // namespace

TEST_CASE("rank_rref basics") {
    Matrix m(2, 2);
    m.set(0, 0, Scalar(1));
    m.set(0, 1, Scalar(2));
    m.set(1, 0, Scalar(2));
    m.set(1, 1, Scalar(4));
    auto rr = rank_rref(m);
    CHECK(rr.rank == 1);

    for (int n : {1, 3, 5}) {
        auto id = Matrix::identity(n);
        auto r = rank_rref(id);
        CHECK(r.rank == n);
        CHECK(r.rref == id);
    }
}

TEST_CASE("rank agrees with fraction-free oracle on random matrices") {
    std::mt19937_64 rng(20240901);
    for (int t = 0; t < 40; ++t) {
        Matrix m = random_matrix(rng, 5, 7, t % 2 == 0);
        CHECK(rank_rref(m).rank == bareiss_rank(m));
        CHECK(rank_rref(m.transpose()).rank == rank_rref(m).rank);
    }
}

TEST_CASE("kernel basis") {
    Matrix m(1, 2);
    m.set(0, 0, Scalar(1));
    m.set(0, 1, Scalar(1));
    Matrix k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == -k.at(1, 0));
    CHECK((m * k).is_zero());

    Matrix z = Matrix::zero(3, 4);
    CHECK(kernel_basis(z).cols() == 4);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        Matrix a = random_matrix(rng, 4, 6, t % 3 == 0);
        Matrix k2 = kernel_basis(a);
        CHECK((a * k2).is_zero());
        CHECK(rank_rref(a).rank + k2.cols() == a.cols());
        CHECK(rank_rref(k2).rank == k2.cols());
    }
}

TEST_CASE("solve") {
    Matrix id = Matrix::identity(3);
    Matrix b(3, 1);
    b.set(0, 0, Scalar(5));
    b.set(2, 0, Scalar(-1, 3));
    auto x = solve(id, b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    Matrix m(1, 2);
    m.set(0, 0, Scalar(1));
    m.set(0, 1, Scalar(1));
    Matrix zero1(1, 1);
    auto x2 = solve(m, zero1);
    REQUIRE(x2.has_value());
    CHECK(x2->is_zero()); // free variables zeroed

    Matrix bad(2, 1);
    bad.set(0, 0, Scalar(1));
    bad.set(1, 0, Scalar(1));
    Matrix rhs(2, 1);
    rhs.set(1, 0, Scalar(1));
    CHECK(!solve(bad, rhs).has_value());

    std::mt19937_64 rng(99);
    for (int t = 0; t < 20; ++t) {
        Matrix a = random_matrix(rng, 4, 5, false);
        Matrix xs = random_matrix(rng, 5, 2, false);
        Matrix rhs2 = a * xs;
        auto sol = solve(a, rhs2);
        REQUIRE(sol.has_value());
        CHECK(a * *sol == rhs2);
    }
}

TEST_CASE("prime field arithmetic") {
    Field f5 = Field::prime(5);
    Scalar a = f5.from_long(3), b = f5.from_long(4);
    CHECK(f5.add(a, b) == f5.from_long(2));
    CHECK(f5.mul(a, f5.inv(a)) == Scalar(1));
    CHECK(f5.from_string("1/2") == f5.from_long(3)); // 2^{-1} = 3 mod 5

    Matrix m(2, 2, f5);
    m.set(0, 0, Scalar(2));
    m.set(0, 1, Scalar(1));
    m.set(1, 0, Scalar(4));
    m.set(1, 1, Scalar(2));
    CHECK(rank_rref(m).rank == 1); // second row = 2 * first mod 5
    CHECK(kernel_basis(m).cols() == 1);
}

TEST_CASE("determinant and inverse") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        Matrix a = random_matrix(rng, 4, 4, false);
        Scalar d = determinant(a);
        auto inv = inverse(a);
        if (sgn(d) == 0) {
            CHECK(!inv.has_value());
        } else {
            REQUIRE(inv.has_value());
            CHECK(a * *inv == Matrix::identity(4));
        }
    }
}
