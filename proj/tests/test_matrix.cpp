#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "trimono/matrix.hpp"

using namespace trimono;

namespace {

Matrix from_ints(Field f, const std::vector<std::vector<long long>>& rows) {
    std::vector<std::vector<Scalar>> s;
    for (auto& r : rows) {
        std::vector<Scalar> row;
        for (long long v : r) row.push_back(Scalar::from_long(f, v));
        s.push_back(row);
    }
    return Matrix::from_rows(f, s);
}

Matrix random_matrix(Field f, size_t nr, size_t nc, std::mt19937& rng) {
    Matrix m(f, nr, nc);
    std::uniform_int_distribution<long long> d(-4, 4);
    for (size_t r = 0; r < nr; ++r)
        for (size_t c = 0; c < nc; ++c) m.set_long(r, c, d(rng));
    return m;
}

}  // namespace

TEST_CASE("scalar arithmetic over F_p and Q") {
    Field f5 = Field::prime(5);
    auto a = Scalar::from_long(f5, 3), b = Scalar::from_long(f5, 4);
    CHECK((a * b).fp_value() == 2);
    CHECK((a + b).fp_value() == 2);
    CHECK((a / b).fp_value() == 2);  // 3 * 4^{-1} = 3*4 = 12 = 2
    CHECK((-a).fp_value() == 2);

    Field q = Field::rationals();
    auto h = Scalar::parse(q, "1/2");
    CHECK((h + h).is_one());
    CHECK((h * Scalar::from_long(q, 4)).to_string() == "2");
    CHECK(Scalar::parse(q, "-2/4").to_string() == "-1/2");
    CHECK_THROWS(Scalar::parse(f5, "1/2"));
    CHECK_THROWS(Field::prime(6));
}

TEST_CASE("rref identity and zero") {
    Field f = Field::rationals();
    auto id = Matrix::identity(f, 3);
    auto rr = rref(id);
    CHECK(rr.reduced == id);
    CHECK(rr.rank == 3);

    Matrix z(f, 2, 2);
    CHECK(rref(z).rank == 0);
    CHECK(rref(z).reduced == z);
}

TEST_CASE("rref over F_2 rank-1 example") {
    Field f2 = Field::prime(2);
    auto m = from_ints(f2, {{1, 1}, {1, 1}});
    auto rr = rref(m);
    CHECK(rr.rank == 1);
    CHECK(rr.reduced == from_ints(f2, {{1, 1}, {0, 0}}));
    auto ker = kernel(m);
    CHECK(ker.rows() == 1);
    CHECK(ker == from_ints(f2, {{1, 1}}));
}

TEST_CASE("kernel basics") {
    Field f = Field::rationals();
    CHECK(kernel(Matrix::identity(f, 3)).rows() == 0);
    CHECK(kernel(Matrix(f, 3, 3)).rows() == 3);
}

TEST_CASE("solve") {
    Field q = Field::rationals();
    auto m = from_ints(q, {{2}});
    auto rhs = from_ints(q, {{1}});
    auto x = solve(m, rhs);
    REQUIRE(x.has_value());
    CHECK(x->at(0, 0).to_string() == "1/2");

    auto z = Matrix(q, 2, 2);
    CHECK(!solve(z, from_ints(q, {{1}, {0}})).has_value());
    CHECK(solve(Matrix::identity(q, 2), from_ints(q, {{3}, {4}})).value() ==
          from_ints(q, {{3}, {4}}));
}

TEST_CASE("kronecker") {
    Field q = Field::rationals();
    CHECK(kronecker(Matrix::identity(q, 2), Matrix::identity(q, 3)) ==
          Matrix::identity(q, 6));
    auto n = from_ints(q, {{0, 1}, {0, 0}});
    CHECK(kronecker(n, Matrix::identity(q, 1)) == n);
    CHECK(kronecker(n, Matrix(q, 2, 2)).is_zero());
}

TEST_CASE("property: rref idempotent, rank-nullity, kron multiplicativity") {
    std::mt19937 rng(12345);
    for (Field f : {Field::prime(2), Field::prime(5), Field::rationals()}) {
        for (int iter = 0; iter < 25; ++iter) {
            std::uniform_int_distribution<size_t> dim(0, 5);
            size_t nr = dim(rng), nc = dim(rng);
            Matrix m = random_matrix(f, nr, nc, rng);
            auto rr = rref(m);
            CHECK(rref(rr.reduced).reduced == rr.reduced);
            CHECK(rr.rank + kernel(m).rows() == nc);
            // exactness of solve when consistent
            Matrix x = random_matrix(f, nc, 1, rng);
            Matrix rhs = m * x;
            auto sol = solve(m, rhs);
            REQUIRE(sol.has_value());
            CHECK(m * *sol == rhs);
        }
        // kron(a,b)kron(c,d) = kron(ac, bd)
        for (int iter = 0; iter < 10; ++iter) {
            Matrix a = random_matrix(f, 2, 3, rng), c = random_matrix(f, 3, 2, rng);
            Matrix b = random_matrix(f, 2, 2, rng), d = random_matrix(f, 2, 3, rng);
            CHECK(kronecker(a, b) * kronecker(c, d) == kronecker(a * c, b * d));
        }
    }
}

TEST_CASE("subspace canonical form and lattice ops") {
    Field f = Field::rationals();
    auto s1 = Subspace::from_rows(from_ints(f, {{2, 0, 2}, {0, 1, 1}}));
    auto s2 = Subspace::from_rows(from_ints(f, {{1, 0, 1}, {0, 2, 2}}));
    CHECK(s1 == s2);
    CHECK(s1.dim() == 2);
    CHECK(s1.contains_row(from_ints(f, {{1, 1, 2}})));
    CHECK(!s1.contains_row(from_ints(f, {{1, 0, 0}})));

    auto line = Subspace::from_rows(from_ints(f, {{1, 1, 2}}));
    CHECK(s1.intersect(line) == line);
    CHECK(s1.sum(line) == s1);
    auto other = Subspace::from_rows(from_ints(f, {{0, 0, 1}}));
    CHECK(s1.sum(other).dim() == 3);
    CHECK(s1.intersect(other).dim() == 0);
}
