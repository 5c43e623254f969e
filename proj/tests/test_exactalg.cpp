#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "gainmat/matrix.hpp"
#include "gainmat/random.hpp"

using namespace gainmat;

namespace {

ExactMatrix from_ints(std::size_t r, std::size_t c, std::initializer_list<int> vals) {
    ExactMatrix m(r, c);
    auto it = vals.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(*it++);
    return m;
}

ExactMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, unsigned quad = 0) {
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            Rational a = rng.random_rational(64);
            Rational b = quad ? rng.random_rational(64) : Rational(0);
            if (rng.next() % 2) a = -a;
            if (quad && rng.next() % 2) b = -b;
            m.at(i, j) = Scalar::quad(a, b, quad);
        }
    return m;
}

// Rank recomputed through the field-arithmetic path, independent of Bareiss.
std::size_t rank_via_rref(const ExactMatrix& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

}  // namespace

TEST_SUITE_BEGIN("exactalg");

TEST_CASE("scalar arithmetic in Q(sqrt(3))") {
    const Scalar s3 = Scalar::sqrt_of(3);
    const Scalar one(1);
    CHECK((one + s3) * (one - s3) == Scalar(-2));
    CHECK(s3 * s3 == Scalar(3));
    CHECK(Scalar(1) / (one + s3) == Scalar::quad(Rational(-1, 2), Rational(1, 2), 3));
    CHECK((s3 - s3).is_rational());
    CHECK(Scalar::quad(Rational(2), Rational(0), 3).is_rational());
}

TEST_CASE("mixing distinct quadratic contexts is rejected") {
    const Scalar a = Scalar::sqrt_of(2);
    const Scalar b = Scalar::sqrt_of(3);
    CHECK_THROWS_AS((void)(a + b), context_error);
    CHECK_THROWS_AS((void)(a * b), context_error);
    CHECK_THROWS_AS(Scalar::quad(1, 1, 12), input_error);  // 12 = 4*3 not square-free
    ExactMatrix m(1, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    CHECK_THROWS_AS((void)rank(m), context_error);
}

TEST_CASE("rank of fixed matrices") {
    CHECK(rank(ExactMatrix::identity(3)) == 3);
    CHECK(rank(ExactMatrix(2, 4)) == 0);
    CHECK(rank(from_ints(2, 2, {1, 2, 2, 4})) == 1);
    CHECK(rank(ExactMatrix(0, 5)) == 0);

    // Rank-1 Gram matrix of (1, sqrt(3)).
    ExactMatrix g(2, 2);
    g.at(0, 0) = Scalar(1);
    g.at(0, 1) = Scalar::sqrt_of(3);
    g.at(1, 0) = Scalar::sqrt_of(3);
    g.at(1, 1) = Scalar(3);
    CHECK(rank(g) == 1);
}

TEST_CASE("rank invariants on random matrices") {
    Rng rng(20260824);
    for (int t = 0; t < 40; ++t) {
        const unsigned quad = (t % 2) ? 3 : 0;
        const ExactMatrix m = random_matrix(rng, 1 + t % 5, 1 + (t / 2) % 6, quad);
        const std::size_t r = rank(m);
        CHECK(r == rank(m.transpose()));
        CHECK(r == rank_via_rref(m));
        const ExactMatrix p = m * random_matrix(rng, m.cols(), 3, quad);
        CHECK(rank(p) <= std::min<std::size_t>(r, 3));
    }
}

TEST_CASE("null space solves exactly") {
    CHECK(null_space(ExactMatrix::identity(4)).empty());

    const ExactMatrix row = from_ints(1, 2, {1, 1});
    const auto basis = null_space(row);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].at(0, 0) == -basis[0].at(1, 0));

    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const ExactMatrix m = random_matrix(rng, 2 + t % 3, 4 + t % 3, (t % 2) ? 3 : 0);
        const auto ns = null_space(m);
        CHECK(ns.size() == m.cols() - rank(m));
        ExactMatrix stacked;
        for (const auto& v : ns) {
            CHECK((m * v).is_zero());
            stacked = hstack(stacked, v);
        }
        if (!ns.empty()) CHECK(rank(stacked) == ns.size());
    }
}

TEST_CASE("matrix inverse round-trips") {
    Rng rng(99);
    for (int t = 0; t < 10; ++t) {
        ExactMatrix m = random_matrix(rng, 3, 3, (t % 2) ? 3 : 0);
        if (rank(m) < 3) continue;
        CHECK(m * inverse(m) == ExactMatrix::identity(3));
    }
    CHECK_THROWS_AS(inverse(from_ints(2, 2, {1, 2, 2, 4})), error);
}

TEST_CASE("exterior square of fixed matrices") {
    CHECK(exterior_square(ExactMatrix::identity(3)) == ExactMatrix::identity(3));

    ExactMatrix d(3, 3);
    d.at(0, 0) = Scalar(2);
    d.at(1, 1) = Scalar(5);
    d.at(2, 2) = Scalar(7);
    const ExactMatrix e = exterior_square(d);
    // Pair order (0,1), (0,2), (1,2) gives diagonal (10, 14, 35).
    CHECK(e.at(0, 0) == Scalar(10));
    CHECK(e.at(1, 1) == Scalar(14));
    CHECK(e.at(2, 2) == Scalar(35));

    const ExactMatrix m = from_ints(2, 2, {1, 2, 3, 4});
    const ExactMatrix det = exterior_square(m);
    REQUIRE(det.rows() == 1);
    CHECK(det.at(0, 0) == Scalar(-2));

    CHECK_THROWS_AS(exterior_square(ExactMatrix(2, 3)), shape_error);
}

TEST_CASE("exterior square is multiplicative and matches wedge2") {
    Rng rng(424242);
    int done = 0;
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int t = 0; t < 34; ++t) {
            const unsigned quad = (t % 2) ? 3 : 0;
            const ExactMatrix a = random_matrix(rng, d, d, quad);
            const ExactMatrix b = random_matrix(rng, d, d, quad);
            CHECK(exterior_square(a * b) == exterior_square(a) * exterior_square(b));
            const ExactMatrix u = random_matrix(rng, d, 1, quad);
            const ExactMatrix v = random_matrix(rng, d, 1, quad);
            CHECK(exterior_square(a) * wedge2(u, v) == wedge2(a * u, a * v));
            ++done;
        }
    }
    CHECK(done >= 100);
}

TEST_CASE("kronecker dimensions and rank") {
    const ExactMatrix a = from_ints(2, 2, {1, 2, 3, 4});
    const ExactMatrix b = from_ints(2, 2, {1, 1, 1, 1});
    const ExactMatrix k = kronecker(a, b);
    CHECK(k.rows() == 4);
    CHECK(rank(k) == rank(a) * rank(b));
}

TEST_CASE("random scalars are deterministic, positive and replayable") {
    Rng a(11), b(11), c(12);
    std::vector<Scalar> draws_a, draws_b;
    bool any_diff_from_c = false;
    for (int i = 0; i < 10000; ++i) {
        const Scalar x = a.random_scalar();
        const Scalar y = b.random_scalar();
        CHECK(x == y);
        CHECK(!x.is_zero());
        CHECK(x.rational_part() > 0);
        CHECK(num(x.rational_part()) <= 65536);
        CHECK(den(x.rational_part()) <= 65536);
        if (x != c.random_scalar()) any_diff_from_c = true;
    }
    CHECK(any_diff_from_c);

    // Derived streams with distinct tags are distinct.
    Rng s1(5, 1), s2(5, 2);
    bool differ = false;
    for (int i = 0; i < 8; ++i) differ |= (s1.next() != s2.next());
    CHECK(differ);
}

TEST_SUITE_END();
