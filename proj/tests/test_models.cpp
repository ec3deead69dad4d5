#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gpt/models.hpp"
#include "support.hpp"

using namespace gpt;
using namespace gpt::test;

namespace {

bool is_trivial(const VQ& e, const VQ& u) { return e == u || std::all_of(e.begin(), e.end(), [](const Q& x) { return x == 0; }); }

template <class T>
std::vector<Vector<T>> extreme_rays(const std::vector<Vector<T>>& gens, std::size_t dim)
{
    return dual_cone(dual_cone(ConeV<T>(dim, gens))).rays();
}

}  // namespace

TEST_CASE("classical systems")
{
    for (int k = 2; k <= 5; ++k) {
        CAPTURE(k);
        const auto c = classical(k);
        CHECK(c.dim() == static_cast<std::size_t>(k));
        CHECK(c.states().size() == static_cast<std::size_t>(k));
        CHECK(is_unrestricted(c));
        // The effect polytope of a simplex is a cube.
        CHECK(c.effects().size() == (std::size_t{1} << k));
        const auto& w = c.states().vertices();
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (std::size_t j = 0; j < w.size(); ++j) {
                if (i == j) {
                    continue;
                }
                const bool separated = std::any_of(c.effects().vertices().begin(), c.effects().vertices().end(),
                                                   [&](const VQ& e) { return evaluate(e, w[i]) == 1 && evaluate(e, w[j]) == 0; });
                CHECK(separated);
            }
        }
    }
    CHECK_THROWS_AS(classical(1), InvalidInput);
    CHECK(dichotomic_observables(classical(2)).size() == 4);
}

TEST_CASE("boxworld")
{
    const auto bw = boxworld();
    CHECK(bw.dim() == 3);
    CHECK(bw.unit() == q({0, 0, 1}));
    CHECK(bw.states().size() == 4);
    int nontrivial = 0;
    for (const auto& e : bw.effects().vertices()) {
        if (is_trivial(e, bw.unit())) {
            continue;
        }
        ++nontrivial;
        int ones = 0;
        int zeros = 0;
        for (const auto& w : bw.states().vertices()) {
            ones += evaluate(e, w) == 1;
            zeros += evaluate(e, w) == 0;
        }
        CHECK(ones == 2);
        CHECK(zeros == 2);
    }
    CHECK(nontrivial == 4);
}

TEST_CASE("noisy boxworld")
{
    CHECK(noisy_boxworld(Q(1)).effects().vertices() == boxworld().effects().vertices());

    const auto half = noisy_boxworld(Q(1, 2));
    const auto& ev = half.effects().vertices();
    REQUIRE(std::find(ev.begin(), ev.end(), q({"1/4", "0", "1/2"})) != ev.end());
    Q best = 0;
    for (const auto& w : half.states().vertices()) {
        best = std::max(best, evaluate(q({"1/4", "0", "1/2"}), w));
    }
    CHECK(best == Q(3, 4));

    for (const Q lambda : {Q(1, 4), Q(1, 2), Q(3, 4), Q(99, 100)}) {
        const auto s = noisy_boxworld(lambda);
        for (const auto& e : s.effects().vertices()) {
            if (is_trivial(e, s.unit())) {
                continue;
            }
            for (const auto& w : s.states().vertices()) {
                CHECK(evaluate(e, w) < 1);
            }
        }
    }

    // Shrinks monotonically.
    CHECK(noisy_boxworld(Q(1, 4)).effects().subset_of(noisy_boxworld(Q(1, 2)).effects()));
    CHECK(noisy_boxworld(Q(1, 2)).effects().subset_of(noisy_boxworld(Q(3, 4)).effects()));
    CHECK_FALSE(noisy_boxworld(Q(3, 4)).effects().subset_of(noisy_boxworld(Q(1, 2)).effects()));

    CHECK_THROWS_AS(noisy_boxworld(Q(0)), InvalidInput);
    CHECK_THROWS_AS(noisy_boxworld(Q(3, 2)), InvalidInput);
    CHECK_THROWS_AS(noisy_boxworld(Q(-1, 2)), InvalidInput);
    CHECK(noisy_boxworld(0.5).effects().size() == 6);
}

TEST_CASE("polygon(4) is boxworld in another basis")
{
    // States: (x, y) -> (r/2) (x + y, y - x) takes the square onto the polygon's axis-aligned vertices.
    const double r = std::pow(2.0, 0.25);
    Matrix<double> m = Matrix<double>::identity(3);
    m(0, 0) = r / 2;
    m(0, 1) = r / 2;
    m(1, 0) = -r / 2;
    m(1, 1) = r / 2;
    // States transform by (L^-1)^T, so L = (M^-1)^T.
    const Matrix<double> l = inverse(m, 1e-12).transpose();
    const auto moved = transform_representation(convert_system<double>(boxworld()), l);
    const auto p4 = polygon(4);
    CHECK(moved.states().same_vertices(p4.states()));
    CHECK(moved.effects().same_vertices(p4.effects()));
    CHECK(vectors_equal(moved.unit(), p4.unit(), 1e-12));
}

TEST_CASE("polygon(3) effect rays are proportional to the states")
{
    const auto p3 = polygon(3);
    const auto rays = dual_cone(ConeV<double>(3, p3.states().vertices())).rays();
    REQUIRE(rays.size() == 3);
    for (const auto& e : rays) {
        const bool found = std::any_of(p3.states().vertices().begin(), p3.states().vertices().end(), [&](const auto& w) {
            return vectors_equal(canonical_ray(w, 1e-9), e, 1e-9);
        });
        CHECK(found);
    }
    CHECK_THROWS_AS(polygon(2), InvalidInput);
}

TEST_CASE("even polygons: extreme effects sit between adjacent states")
{
    for (int n : {4, 6, 8, 10}) {
        CAPTURE(n);
        const auto p = polygon(n);
        const double r = std::sqrt(1.0 / std::cos(std::numbers::pi / n));
        CHECK(p.effects().size() == static_cast<std::size_t>(n) + 2);
        for (int i = 0; i < n; ++i) {
            const double t = (2 * i - 1) * std::numbers::pi / n;
            const Vector<double> e{0.5 * r * std::cos(t), 0.5 * r * std::sin(t), 0.5};
            CHECK(p.effects().contains(e));
            const bool vertex = std::any_of(p.effects().vertices().begin(), p.effects().vertices().end(),
                                            [&](const auto& v) { return vectors_equal(v, e, 1e-9); });
            CHECK(vertex);
            double lo = 1;
            double hi = 0;
            for (const auto& w : p.states().vertices()) {
                lo = std::min(lo, dot(e, w));
                hi = std::max(hi, dot(e, w));
            }
            CHECK(lo == doctest::Approx(0).epsilon(1e-12));
            CHECK(hi == doctest::Approx(1).epsilon(1e-12));
        }
    }
}

TEST_CASE("polygons are invariant under rotation by 2 pi / n")
{
    for (int n : {5, 6, 7}) {
        CAPTURE(n);
        const auto p = polygon(n);
        const double a = 2 * std::numbers::pi / n;
        Matrix<double> rot = Matrix<double>::identity(3);
        rot(0, 0) = std::cos(a);
        rot(0, 1) = -std::sin(a);
        rot(1, 0) = std::sin(a);
        rot(1, 1) = std::cos(a);
        // Orthogonal, so states and effects move the same way.
        const auto t = transform_representation(p, rot);
        CHECK(t.states().same_vertices(p.states()));
        CHECK(t.effects().same_vertices(p.effects()));
    }
}

TEST_CASE("self-dualization")
{
    SUBCASE("classical systems are fixed points")
    {
        for (int k : {2, 3, 4}) {
            const auto c = classical(k);
            CHECK(self_dualize(c).effects().vertices() == c.effects().vertices());
        }
    }
    SUBCASE("raw boxworld coordinates give the diamond cone")
    {
        // The dual of the square cone is the smaller diamond cone, so the intersection is the diamond.
        const auto sd = self_dualize(boxworld());
        const std::vector<VQ> diamond{q({-1, 0, 1}), q({0, -1, 1}), q({0, 1, 1}), q({1, 0, 1})};
        CHECK(extreme_rays(sd.effects().vertices(), 3) == diamond);
        CHECK(sd.label() == "selfdual_boxworld");
    }
    SUBCASE("polygon(4) gives the octagon cone")
    {
        const auto sd = self_dualize(polygon(4));
        CHECK(extreme_rays(sd.effects().vertices(), 3).size() == 8);
    }
    SUBCASE("effects lie in the state cone and its dual, and are internally positive")
    {
        for (int n : {4, 5, 6, 8}) {
            CAPTURE(n);
            const auto p = polygon(n);
            const auto sd = self_dualize(p);
            const auto cone_h = facet_enumeration(p.states().vertices(), 3);
            for (const auto& e : sd.effects().vertices()) {
                CHECK(cone_h.contains(e));
                CHECK(p.effects().contains(e));
                for (const auto& w : p.states().vertices()) {
                    CHECK(dot(e, w) >= -1e-9);
                }
                for (const auto& f : sd.effects().vertices()) {
                    CHECK(dot(e, f) >= -1e-9);
                }
            }
            CHECK(self_dualize(sd).effects().same_vertices(sd.effects()));
            CHECK(self_dualize(sd).label() == sd.label());
        }
    }
    SUBCASE("exact idempotence")
    {
        const auto once = self_dualize(noisy_boxworld(Q(1, 2)));
        CHECK(self_dualize(once).effects().vertices() == once.effects().vertices());
    }
}

TEST_CASE("Spekkens bit")
{
    const auto r = spekkens_bit(SpekkensKind::Restricted);
    CHECK(r.dim() == 4);
    CHECK(r.unit() == q({0, 0, 0, 1}));
    CHECK(r.states().size() == 6);
    CHECK_FALSE(is_unrestricted(r));
    for (const auto& e : r.effects().vertices()) {
        if (is_trivial(e, r.unit())) {
            continue;
        }
        int ones = 0;
        int zeros = 0;
        int halves = 0;
        for (const auto& w : r.states().vertices()) {
            const Q p = evaluate(e, w);
            ones += p == 1;
            zeros += p == 0;
            halves += p == Q(1, 2);
            if (p == 1) {
                // The antipode is the zero.
                CHECK(evaluate(e, Q(2) * r.unit() - w) == 0);
            }
        }
        CHECK(ones == 1);
        CHECK(zeros == 1);
        CHECK(halves == 4);
    }
    const auto u = spekkens_bit(SpekkensKind::Unrestricted);
    CHECK(is_unrestricted(u));
    CHECK(u.label() == "spekkens_unrestricted");
    CHECK(u.states().vertices() == r.states().vertices());
}

TEST_CASE("model ids")
{
    for (const char* name : {"classical:3", "boxworld", "noisy_boxworld:3/4", "polygon:8", "selfdual_polygon:6",
                             "spekkens_restricted", "spekkens_unrestricted"}) {
        CHECK(ModelId::parse(name).str() == name);
    }
    CHECK(ModelId::parse("noisy_boxworld:0.5").str() == "noisy_boxworld:1/2");
    CHECK(ModelId::parse("boxworld").exact());
    CHECK_FALSE(ModelId::parse("polygon:5").exact());
    CHECK(build_model(ModelId::parse("polygon:5")).index() == 1);
    CHECK(build_model(ModelId::parse("noisy_boxworld:1/2")).index() == 0);
    for (const char* bad : {"", "boxworld:2", "classical:1", "classical", "noisy_boxworld:0", "noisy_boxworld:2",
                            "noisy_boxworld:x", "polygon:2", "selfdual_polygon:-4", "qubit"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(ModelId::parse(bad), InvalidInput);
    }
}
