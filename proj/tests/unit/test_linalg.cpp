#include "doctest.h"

#include "lodim/error.hpp"
#include "lodim/linalg.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <array>
#include <functional>
#include <random>

using namespace lodim;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);

Mat mat(FieldSpec f, std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<Vec> rs;
    std::size_t cols = 0;
    for (auto r : rows) {
        rs.push_back(make_vec(f, r));
        cols = r.size();
    }
    return Mat::from_rows(f, rs, cols);
}

Mat random_small(std::mt19937_64& eng, FieldSpec f) {
    std::size_t r = eng() % 9, c = eng() % 9;
    return random_mat(r, c, f, eng());
}

// Every k-subset of the vectors, checked by rank.
bool all_subsets_independent(const std::vector<Vec>& u, std::size_t k, FieldSpec f) {
    std::vector<std::size_t> idx;
    std::function<bool(std::size_t)> go = [&](std::size_t from) {
        if (idx.size() == k) {
            std::vector<Vec> pick;
            for (auto i : idx)
                pick.push_back(u[i]);
            return rank(f, pick, u[0].size()) == k;
        }
        for (std::size_t i = from; i < u.size(); ++i) {
            idx.push_back(i);
            bool ok = go(i + 1);
            idx.pop_back();
            if (!ok)
                return false;
        }
        return true;
    };
    return go(0);
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("rank examples") {
    CHECK(rank(Mat::identity(F2, 3)) == 3);
    for (unsigned p : {2u, 3u, 5u}) {
        Mat ones(FieldSpec::prime(p), 4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                ones(i, j) = FieldElem::one(FieldSpec::prime(p));
        CHECK(rank(ones) == 1);
    }
    CHECK(rank(mat(F2, {{1, 1}, {1, 1}, {0, 1}})) == 2);
    CHECK(rank(Mat(F2, 0, 3)) == 0);
    CHECK(rank(mat(FieldSpec::rationals(), {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("rank of a matrix equals rank of its transpose") {
    std::mt19937_64 eng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const FieldSpec f = FieldSpec::prime(trial % 2 ? 3 : 2);
        Mat m = random_small(eng, f);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("extend_basis") {
    Basis b(F2, 3);
    b.insert(make_vec(F2, {1, 0, 0}));
    CHECK(extend_basis(b, make_vec(F2, {1, 0, 0})).in_span);
    auto r = extend_basis(b, make_vec(F2, {0, 1, 0}));
    CHECK_FALSE(r.in_span);
    CHECK(r.basis.size() == 2);
    CHECK(b.size() == 1);
    CHECK(extend_basis(Basis(F2, 3), zero_vec(F2, 3)).in_span);
    CHECK_THROWS_AS(extend_basis(b, make_vec(F2, {1, 0})), PreconditionError);
}

TEST_CASE("repeated insertion reaches the rank and keeps echelon form") {
    std::mt19937_64 eng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const FieldSpec f = FieldSpec::prime(trial % 3 == 0 ? 5 : 2);
        Mat m = random_mat(1 + eng() % 7, 1 + eng() % 7, f, eng());
        Basis b(f, m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            b.insert(m.row(r));
        CHECK(b.size() == rank(m));
        CHECK(b.is_reduced_echelon());
    }
}

TEST_CASE("nullspace examples") {
    Basis n1 = nullspace_basis(mat(F2, {{1, 1}}));
    REQUIRE(n1.size() == 1);
    CHECK(n1.rows()[0] == make_vec(F2, {1, 1}));
    CHECK(nullspace_basis(Mat::identity(F2, 4)).size() == 0);
    CHECK(nullspace_basis(Mat(F2, 2, 3)).size() == 3);
}

TEST_CASE("nullspace dimension and membership on random matrices") {
    std::mt19937_64 eng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const FieldSpec f = FieldSpec::prime(trial % 2 ? 7 : 2);
        Mat m = random_mat(1 + eng() % 6, 1 + eng() % 6, f, eng());
        Basis nb = nullspace_basis(m);
        CHECK(nb.size() == m.cols() - rank(m));
        for (const auto& v : nb.rows())
            CHECK(is_zero_vec(m.apply(v)));
    }
}

TEST_CASE("solve_left") {
    const FieldSpec f = FieldSpec::prime(5);
    Mat b = mat(f, {{1, 2, 0}, {0, 1, 1}});
    auto lam = solve_left(b, make_vec(f, {2, 2, 3}));
    REQUIRE(lam);
    CHECK(*lam == make_vec(f, {2, 3}));
    CHECK_FALSE(solve_left(b, make_vec(f, {0, 0, 1})));
}

TEST_CASE("vandermonde examples") {
    const FieldSpec f5 = FieldSpec::prime(5);
    auto u = vandermonde(3, 2, f5);
    REQUIRE(u.size() == 3);
    CHECK(u[0] == make_vec(f5, {1, 0}));
    CHECK(u[1] == make_vec(f5, {1, 1}));
    CHECK(u[2] == make_vec(f5, {1, 2}));
    CHECK(all_subsets_independent(u, 2, f5));
    CHECK(vandermonde(1, 1, F2) == std::vector<Vec>{make_vec(F2, {1})});
    CHECK_THROWS_AS(vandermonde(3, 2, F2), Infeasible);
    CHECK_THROWS_AS(vandermonde(2, 3, f5), PreconditionError);
}

TEST_CASE("vandermonde families are independent in every small subset") {
    for (unsigned p : {7u, 11u, 13u})
        for (std::size_t m = 1; m <= std::min<std::size_t>(8, p); ++m)
            for (std::size_t ell = 1; ell <= std::min<std::size_t>(4, m); ++ell)
                CHECK(all_subsets_independent(vandermonde(m, ell, FieldSpec::prime(p)), ell, FieldSpec::prime(p)));
}

TEST_CASE("ceil_log") {
    CHECK(ceil_log(2, 0) == 0);
    CHECK(ceil_log(2, 1) == 0);
    CHECK(ceil_log(2, 5) == 3);
    CHECK(ceil_log(2, 8) == 3);
    CHECK(ceil_log(3, 10) == 3);
    CHECK(ceil_log(5, 5) == 1);
}

TEST_CASE("greedy vector family: fixed example") {
    auto u = schulman_vectors({{0, 1}, {1, 2}}, 3, 2, F2);
    REQUIRE(u.size() == 3);
    CHECK(u[0] == make_vec(F2, {0, 0, 1}));
    CHECK(u[1] == make_vec(F2, {0, 1, 0}));
    CHECK(u[2] == make_vec(F2, {0, 0, 1}));
    CHECK(family_independent_on(u, {{0, 1}, {1, 2}}));
    CHECK_FALSE(family_independent_on(u, {{0, 2}}));
}

TEST_CASE("greedy vector family without constraints") {
    auto u = schulman_vectors({}, 2, 2, F2);
    REQUIRE(u.size() == 2);
    for (const auto& v : u) {
        CHECK(v.size() == 2);
        CHECK_FALSE(is_zero_vec(v));
    }
    CHECK(u[0] == make_vec(F2, {0, 1}));
}

TEST_CASE("greedy vector family rejects oversized sets") {
    CHECK_THROWS_AS(schulman_vectors({{0, 1, 2}}, 3, 2, F2), PreconditionError);
    CHECK_THROWS_AS(schulman_vectors({{0, 5}}, 3, 2, F2), PreconditionError);
    CHECK_THROWS_AS(schulman_vectors({{0}}, 1, 1, FieldSpec::rationals()), PreconditionError);
}

TEST_CASE("greedy vector family on random instances") {
    std::mt19937_64 eng(66);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned q = std::array<unsigned, 3>{2, 3, 5}[eng() % 3];
        const std::size_t m = 1 + eng() % 10, ell = 1 + eng() % std::min<std::size_t>(4, m), h = 1 + eng() % 8;
        std::vector<std::vector<std::size_t>> sets;
        for (std::size_t s = 0; s < h; ++s) {
            std::vector<std::size_t> set;
            for (std::size_t i = 0; i < m && set.size() < ell; ++i)
                if (eng() % 2)
                    set.push_back(i);
            if (set.empty())
                set.push_back(eng() % m);
            sets.push_back(set);
        }
        auto u = schulman_vectors(sets, m, ell, FieldSpec::prime(q));
        REQUIRE(u.size() == m);
        CHECK(u[0].size() == ell + ceil_log(q, h));
        CHECK(family_independent_on(u, sets));
    }
}

TEST_CASE("random matrices") {
    CHECK(random_mat(3, 4, FieldSpec::prime(7), 99) == random_mat(3, 4, FieldSpec::prime(7), 99));
    CHECK_FALSE(random_mat(3, 4, FieldSpec::prime(7), 99) == random_mat(3, 4, FieldSpec::prime(7), 100));
    Mat empty = random_mat(0, 5, F2, 1);
    CHECK(empty.rows() == 0);
    CHECK(empty.cols() == 5);
    CHECK_THROWS_AS(random_mat(1, 1, FieldSpec::rationals(), 0), PreconditionError);

    int ones = 0;
    for (std::uint64_t s = 0; s < 10000; ++s)
        ones += random_mat(1, 1, F2, s)(0, 0).residue();
    CHECK(ones >= 4700);
    CHECK(ones <= 5300);
}

TEST_CASE("images of two independent vectors under a random map are jointly uniform") {
    // 16 cells for the pair (A w1, A w2) in F_2^2 x F_2^2; chi-square with 15
    // degrees of freedom at significance 0.001.
    const Vec w1 = make_vec(F2, {1, 1, 0}), w2 = make_vec(F2, {0, 1, 1});
    const int samples = 2000;
    std::array<int, 16> cells{};
    for (int s = 0; s < samples; ++s) {
        Mat a = random_mat(2, 3, F2, static_cast<std::uint64_t>(s));
        Vec x = a.apply(w1), y = a.apply(w2);
        cells[x[0].residue() | x[1].residue() << 1 | y[0].residue() << 2 | y[1].residue() << 3]++;
    }
    const double expected = samples / 16.0;
    double stat = 0;
    for (int c : cells)
        stat += (c - expected) * (c - expected) / expected;
    const double critical = boost::math::quantile(boost::math::chi_squared(15), 0.999);
    CHECK(stat < critical);
}

}
