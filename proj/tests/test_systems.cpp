#include <doctest.h>

#include <algorithm>
#include <random>

#include "gpt/models.hpp"
#include "gpt/systems.hpp"
#include "support.hpp"

using namespace gpt;
using namespace gpt::test;

namespace {

GptSystem<Q> square_with(std::vector<VQ> effects)
{
    return GptSystem<Q>::from_points("square", q({0, 0, 1}), {q({1, 1, 1}), q({1, -1, 1}), q({-1, 1, 1}), q({-1, -1, 1})},
                                     std::move(effects));
}

Matrix<Q> transpose_inverse(const Matrix<Q>& l) { return inverse(l, 0.0).transpose(); }

}  // namespace

TEST_CASE("evaluate on the square system")
{
    const auto bw = boxworld();
    for (const auto& w : bw.states().vertices()) {
        CHECK(evaluate(bw.unit(), w) == 1);
        CHECK(evaluate(q({0, 0, 0}), w) == 0);
    }
    CHECK(evaluate(q({"1/2", "0", "1/2"}), q({1, 1, 1})) == 1);
    CHECK(evaluate(q({"1/2", "0", "1/2"}), q({-1, 1, 1})) == 0);
    CHECK_THROWS_AS(evaluate(q({1, 0}), q({1, 1, 1})), InvalidInput);
}

TEST_CASE("mix")
{
    const auto bw = boxworld();
    const auto& pure = bw.states().vertices();
    CHECK(mix<Q>({pure[2]}, {Q(1)}) == pure[2]);
    const Q quarter(1, 4);
    CHECK(mix<Q>(pure, {quarter, quarter, quarter, quarter}) == q({0, 0, 1}));
    const auto half = mix<Q>({q({0, 0, 0}), bw.unit()}, {Q(1, 2), Q(1, 2)});
    for (const auto& w : pure) {
        CHECK(evaluate(half, w) == Q(1, 2));
    }
    CHECK_THROWS_AS(mix<Q>({pure[0], pure[1]}, {Q(3, 2), Q(-1, 2)}), InvalidInput);
    CHECK_THROWS_AS(mix<Q>({pure[0], pure[1]}, {Q(1, 2), Q(1, 3)}), InvalidInput);
    CHECK_THROWS_AS(mix<Q>({pure[0]}, {Q(1, 2), Q(1, 2)}), InvalidInput);
}

TEST_CASE("system validation")
{
    const auto states = std::vector<VQ>{q({1, 1, 1}), q({1, -1, 1}), q({-1, 1, 1}), q({-1, -1, 1})};
    SUBCASE("unnormalized state")
    {
        auto bad = states;
        bad[0] = q({1, 1, 2});
        CHECK_THROWS_AS(GptSystem<Q>::from_points("x", q({0, 0, 1}), bad, {q({0, 0, 0}), q({0, 0, 1})}), InvalidInput);
    }
    SUBCASE("effect out of range")
    {
        CHECK_THROWS_AS(square_with({q({0, 0, 0}), q({0, 0, 1}), q({1, 0, 1})}), InvalidInput);
    }
    SUBCASE("missing zero or unit")
    {
        CHECK_THROWS_AS(square_with({q({0, 0, 1}), q({"1/2", "0", "1/2"})}), InvalidInput);
        CHECK_THROWS_AS(square_with({q({0, 0, 0}), q({"1/2", "0", "1/2"})}), InvalidInput);
    }
    SUBCASE("states not spanning")
    {
        CHECK_THROWS_AS(GptSystem<Q>::from_points("x", q({0, 0, 1}), {q({1, 0, 1}), q({-1, 0, 1})},
                                                  {q({0, 0, 0}), q({0, 0, 1})}),
                        InvalidInput);
    }
    SUBCASE("minimal valid system")
    {
        CHECK_NOTHROW(square_with({q({0, 0, 0}), q({0, 0, 1})}));
    }
}

TEST_CASE("unrestrict")
{
    const auto bw = boxworld();
    CHECK(unrestrict(bw).effects().vertices() == bw.effects().vertices());
    CHECK(is_unrestricted(bw));

    const auto noisy = noisy_boxworld(Q(1, 2));
    CHECK_FALSE(is_unrestricted(noisy));
    const std::vector<VQ> expected{q({"-1/2", "0", "1/2"}), q({"0", "-1/2", "1/2"}), q({0, 0, 0}), q({0, 0, 1}),
                                   q({"0", "1/2", "1/2"}), q({"1/2", "0", "1/2"})};
    CHECK(unrestrict(noisy).effects().vertices() == expected);

    // Octahedron: the [0,1]-valued functionals form a cube with corners (1/2)(+-1,+-1,+-1,1), plus 0 and u.
    const auto sp = unrestrict(spekkens_bit(SpekkensKind::Restricted));
    CHECK(sp.effects().size() == 10);
    for (const auto& e : sp.effects().vertices()) {
        if (e == q({0, 0, 0, 0}) || e == q({0, 0, 0, 1})) {
            continue;
        }
        CHECK(e[3] == Q(1, 2));
        for (int i = 0; i < 3; ++i) {
            CHECK(abs(e[static_cast<std::size_t>(i)]) == Q(1, 2));
        }
        for (const auto& w : sp.states().vertices()) {
            CHECK(evaluate(e, w) >= 0);
            CHECK(evaluate(e, w) <= 1);
        }
    }

    CHECK(is_unrestricted(classical(2)));
    CHECK(is_unrestricted(classical(4)));
}

TEST_CASE("restrict_effects_linear")
{
    const auto bw = boxworld();
    CHECK(restrict_effects_linear(bw, Matrix<Q>::identity(3)).effects().vertices() == bw.effects().vertices());

    const auto half = restrict_effects_linear(bw, diag({"1/2", "1/2", "1"}));
    CHECK(half.effects().vertices() == noisy_boxworld(Q(1, 2)).effects().vertices());
    // lambda e + (1 - lambda) u / 2
    for (const auto& e : bw.effects().vertices()) {
        if (e == q({0, 0, 0}) || e == bw.unit()) {
            continue;
        }
        const VQ mixed = Q(1, 2) * e + Q(1, 4) * bw.unit();
        CHECK(std::find(half.effects().vertices().begin(), half.effects().vertices().end(), mixed) !=
              half.effects().vertices().end());
    }

    CHECK_THROWS_AS(restrict_effects_linear(bw, diag({"2", "2", "1"})), InvalidRestriction);
    CHECK_THROWS_AS(restrict_effects_linear(bw, diag({"1", "0", "1"})), SingularMap);
    // Shrinks the unit away.
    CHECK_THROWS_AS(restrict_effects_linear(bw, diag({"1/2", "1/2", "1/2"})), InvalidRestriction);
    CHECK_THROWS_AS(restrict_effects_linear(bw, Matrix<Q>::identity(2)), InvalidInput);
}

TEST_CASE("transform_representation preserves probabilities")
{
    const auto bw = boxworld();
    CHECK(transform_representation(bw, Matrix<Q>::identity(3)).effects().vertices() == bw.effects().vertices());
    CHECK(transform_representation(bw, Matrix<Q>::identity(3)).states().vertices() == bw.states().vertices());

    Matrix<Q> two = Matrix<Q>::identity(3);
    for (std::size_t i = 0; i < 3; ++i) {
        two(i, i) = 2;
    }
    const auto t = transform_representation(bw, two);
    CHECK(t.unit() == q({0, 0, 2}));
    for (const auto& e : t.effects().vertices()) {
        for (const auto& w : t.states().vertices()) {
            CHECK(evaluate(e, w) >= 0);
            CHECK(evaluate(e, w) <= 1);
        }
    }
    CHECK_THROWS_AS(transform_representation(bw, diag({"1", "1", "0"})), SingularMap);
}

TEST_CASE("property: probability table invariance under 100 random invertible maps")
{
    std::mt19937_64 rng(6);
    const std::vector<GptSystem<Q>> zoo{boxworld(), noisy_boxworld(Q(3, 4)), spekkens_bit(SpekkensKind::Restricted),
                                        classical(3)};
    int maps = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto& s = zoo[static_cast<std::size_t>(trial) % zoo.size()];
        const auto l = random_invertible(rng, s.dim());
        const auto lt = transpose_inverse(l);
        const auto t = transform_representation(s, l);
        CHECK(t.unit() == l * s.unit());

        // The transformed vertices are exactly the images, and every pair keeps its probability.
        std::vector<VQ> states;
        for (const auto& w : s.states().vertices()) {
            states.push_back(lt * w);
        }
        std::vector<VQ> effects;
        for (const auto& e : s.effects().vertices()) {
            effects.push_back(l * e);
        }
        std::sort(states.begin(), states.end(), lex_less<Q>);
        std::sort(effects.begin(), effects.end(), lex_less<Q>);
        CHECK(t.states().vertices() == states);
        CHECK(t.effects().vertices() == effects);
        for (const auto& e : s.effects().vertices()) {
            for (const auto& w : s.states().vertices()) {
                CHECK(evaluate(l * e, lt * w) == evaluate(e, w));
            }
        }

        // Same multiset of table entries.
        auto flat = [](const Matrix<Q>& m) {
            std::vector<Q> v;
            for (const auto& row : table_of(m)) {
                v.insert(v.end(), row.begin(), row.end());
            }
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(flat(probability_table(t)) == flat(probability_table(s)));
        ++maps;
    }
    CHECK(maps == 100);
}

TEST_CASE("dichotomic observables")
{
    const auto bw = boxworld();
    CHECK(dichotomic_observables(bw) == bw.effects().vertices());

    const auto noisy = noisy_boxworld(Q(1, 2));
    const auto d = dichotomic_observables(noisy);
    CHECK(d == noisy.effects().vertices());
    for (const auto& e : d) {
        CHECK(is_dichotomic(noisy, e));
        CHECK(is_dichotomic(noisy, noisy.unit() - e));
    }

    const auto c2 = classical(2);
    const std::vector<VQ> bit{q({"-1/2", "1/2"}), q({0, 0}), q({0, 1}), q({"1/2", "1/2"})};
    CHECK(dichotomic_observables(c2) == bit);

    // Restricted to effects below 1/2, only 0, u and midpoints survive as dichotomic.
    const auto low = square_with({q({0, 0, 0}), q({0, 0, 1}), q({"1/4", "0", "1/4"})});
    for (const auto& e : dichotomic_observables(low)) {
        CHECK(is_dichotomic(low, e));
    }
    CHECK_FALSE(is_dichotomic(low, q({"1/4", "0", "1/4"})));
}

TEST_CASE("property: restriction round trips and unrestrict is extensive")
{
    std::mt19937_64 rng(17);
    const auto bw = boxworld();
    for (int trial = 0; trial < 20; ++trial) {
        const Q l1 = oracle::random_rational(rng, 0, 1, 8);
        const Q l2 = oracle::random_rational(rng, 0, 1, 8);
        if (l1 == 0 || l2 == 0) {
            continue;
        }
        Matrix<Q> l = Matrix<Q>::identity(3);
        l(0, 0) = l1;
        l(1, 1) = l2;
        const auto r = restrict_effects_linear(bw, l);
        const auto u = unrestrict(r);
        CHECK(u.effects().vertices() == bw.effects().vertices());
        CHECK(u.states().vertices() == r.states().vertices());
        CHECK(is_unrestricted(u));
        CHECK(r.effects().subset_of(u.effects()));
        CHECK(unrestrict(u).effects().vertices() == u.effects().vertices());
    }
}

TEST_CASE("zoo: every vertex pair evaluates into [0,1]")
{
    for (const char* name : {"classical:2", "classical:3", "boxworld", "noisy_boxworld:1/3", "spekkens_restricted",
                             "spekkens_unrestricted", "polygon:5", "selfdual_polygon:6"}) {
        CAPTURE(name);
        std::visit(
            [](const auto& s) {
                using T = typename std::decay_t<decltype(s.unit())>::value_type;
                const auto t = probability_table(s);
                for (std::size_t i = 0; i < t.rows(); ++i) {
                    for (std::size_t j = 0; j < t.cols(); ++j) {
                        CHECK(NumTraits<T>::sign(t(i, j), 1e-9) >= 0);
                        CHECK(NumTraits<T>::sign(t(i, j) - T(1), 1e-9) <= 0);
                    }
                }
            },
            build_model(ModelId::parse(name)));
    }
}

TEST_CASE("exact to approx conversion keeps the vertex sets")
{
    const auto bw = boxworld();
    const auto d = convert_system<double>(bw);
    REQUIRE(d.states().size() == bw.states().size());
    REQUIRE(d.effects().size() == bw.effects().size());
    for (std::size_t i = 0; i < bw.effects().size(); ++i) {
        CHECK(vectors_equal(d.effects().vertices()[i], convert_vector<double>(bw.effects().vertices()[i]), 1e-12));
    }
    CHECK(is_unrestricted(d));
}
