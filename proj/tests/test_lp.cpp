#include <doctest.h>

#include <algorithm>
#include <random>

#include "gpt/lp.hpp"
#include "oracles.hpp"

using namespace gpt;

namespace {

using Q = Rational;

HPolytope<Q> unit_square()
{
    HPolytope<Q> h;
    h.dim = 2;
    h.inequalities = {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, -1}, {{0, -1}, -1}};
    return h;
}

template <class T>
Polytope<T> random_polytope(std::mt19937_64& rng, std::size_t dim, std::size_t npts)
{
    std::vector<Vector<T>> pts;
    for (std::size_t i = 0; i < npts; ++i) {
        Vector<T> p;
        for (std::size_t j = 0; j < dim; ++j) {
            p.push_back(T(oracle::random_rational(rng, -3, 3, 4)));
        }
        pts.push_back(std::move(p));
    }
    return Polytope<T>::from_points(dim, std::move(pts));
}

}  // namespace

TEST_CASE("maximize over the unit square")
{
    LinearProgram<Q> lp(unit_square());
    REQUIRE(lp.feasible());
    auto r = lp.maximize({1, 1});
    CHECK(r.value == 2);
    CHECK(r.point == Vector<Q>{1, 1});
    r = lp.maximize({-1, 2});
    CHECK(r.value == 2);
    CHECK(r.point == Vector<Q>{0, 1});
    r = lp.minimize({1, 1});
    CHECK(r.value == 0);
}

TEST_CASE("phase one finds a vertex away from the origin")
{
    HPolytope<Q> h;
    h.dim = 2;
    h.inequalities = {{{1, 0}, 2}, {{0, 1}, 3}, {{-1, 0}, -5}, {{0, -1}, -7}};
    LinearProgram<Q> lp(h);
    REQUIRE(lp.feasible());
    CHECK(lp.maximize({1, 0}).value == 5);
    CHECK(lp.minimize({0, 1}).value == 3);
}

TEST_CASE("equalities restrict the feasible set")
{
    HPolytope<Q> h;
    h.dim = 3;
    h.inequalities = {{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0}};
    h.equalities = {{{1, 1, 1}, 1}};
    LinearProgram<Q> lp(h);
    auto r = lp.maximize({Q(1, 2), 3, 1});
    CHECK(r.value == 3);
    CHECK(r.point == Vector<Q>{0, 1, 0});
}

TEST_CASE("empty and unbounded programs")
{
    HPolytope<Q> empty;
    empty.dim = 1;
    empty.inequalities = {{{1}, 1}, {{-1}, 0}};
    LinearProgram<Q> e(empty);
    CHECK_FALSE(e.feasible());
    CHECK_THROWS_AS(e.maximize({1}), InvalidInput);

    HPolytope<Q> ray;
    ray.dim = 2;
    ray.inequalities = {{{1, 0}, 0}, {{0, 1}, 0}};
    LinearProgram<Q> r(ray);
    CHECK_THROWS_AS(r.maximize({1, 1}), UnboundedError);

    HPolytope<Q> bad_eq;
    bad_eq.dim = 2;
    bad_eq.equalities = {{{1, 1}, 1}, {{2, 2}, 3}};
    CHECK_FALSE(LinearProgram<Q>(bad_eq).feasible());
}

TEST_CASE("degenerate vertex: pyramid apex")
{
    // Four facets meet at the apex of a square pyramid in dimension 3.
    HPolytope<Q> h;
    h.dim = 3;
    h.inequalities = {{{0, 0, 1}, 0}, {{1, 0, -1}, -1}, {{-1, 0, -1}, -1}, {{0, 1, -1}, -1}, {{0, -1, -1}, -1}};
    LinearProgram<Q> lp(h);
    CHECK(lp.maximize({0, 0, 1}).value == 1);
    CHECK(lp.maximize({1, 1, 0}).value == 2);
    CHECK(lp.maximize({0, 0, 1}).point == Vector<Q>{0, 0, 1});
}

TEST_CASE("property: simplex optimum equals the best vertex (exact and approx)")
{
    std::mt19937_64 rng(1234);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 2 + static_cast<std::size_t>(trial % 4);
        const auto p = random_polytope<Q>(rng, dim, dim + 3 + static_cast<std::size_t>(trial % 5));
        if (rank(Matrix<Q>::from_rows(p.vertices(), dim), 0.0) < 2) {
            continue;
        }
        const auto& h = p.constraints();
        LinearProgram<Q> lp(h);
        LinearProgram<double> lpd(convert_polytope<double>(p).constraints());
        REQUIRE(lp.feasible());
        for (int k = 0; k < 8; ++k) {
            Vector<Q> c;
            for (std::size_t j = 0; j < dim; ++j) {
                c.push_back(oracle::random_rational(rng, -5, 5, 3));
            }
            Q best = dot(c, p.vertices().front());
            for (const auto& v : p.vertices()) {
                best = std::max(best, dot(c, v));
            }
            const auto r = lp.maximize(c);
            CHECK(r.value == best);
            CHECK(p.contains(r.point));
            CHECK(std::find(p.vertices().begin(), p.vertices().end(), r.point) != p.vertices().end());
            const auto rd = lpd.maximize(convert_vector<double>(c));
            CHECK(rd.value == doctest::Approx(best.convert_to<double>()).epsilon(1e-9));
            ++checked;
        }
    }
    CHECK(checked > 300);
}
