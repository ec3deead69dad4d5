#include "gpt/models.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gpt {
namespace {

Vector<Rational> qv(std::initializer_list<Rational> xs) { return Vector<Rational>(xs); }

int parse_count(std::string_view text, std::string_view what)
{
    try {
        const Rational v = parse_rational(text);
        if (boost::multiprecision::denominator(v) != 1 || v > 1000000 || v < -1000000) {
            throw InvalidInput("");
        }
        return boost::multiprecision::numerator(v).convert_to<int>();
    } catch (const InvalidInput&) {
        throw InvalidInput("model " + std::string(what) + ": '" + std::string(text) + "' is not an integer");
    }
}

}  // namespace

GptSystem<Rational> classical(int k, const Settings& cfg)
{
    if (k < 2) {
        throw InvalidInput("classical(k) needs k >= 2");
    }
    const std::size_t dim = static_cast<std::size_t>(k);
    // v_i = (-1,...,-1, i, 0,...,0) with i-1 leading -1s, and v_k = (-1,...,-1)
    // satisfy v_i.v_j = -1, so the lifted states (v_i, 1) are orthogonal.
    std::vector<Vector<Rational>> states;
    for (std::size_t i = 1; i <= dim; ++i) {
        Vector<Rational> w(dim, Rational(0));
        for (std::size_t j = 0; j + 1 < dim; ++j) {
            if (j + 1 < i) {
                w[j] = -1;
            } else if (j + 1 == i) {
                w[j] = static_cast<long>(i);
            }
        }
        w[dim - 1] = 1;
        states.push_back(std::move(w));
    }
    Vector<Rational> unit(dim, Rational(0));
    unit.back() = 1;
    const auto sp = Polytope<Rational>::from_points(dim, states, cfg);
    GptSystem<Rational> seed("classical:" + std::to_string(k), unit, sp,
                             Polytope<Rational>::from_points(dim, {Vector<Rational>(dim, Rational(0)), unit}, cfg), cfg);
    return unrestrict(seed, cfg);
}

GptSystem<Rational> boxworld(const Settings& cfg)
{
    const Vector<Rational> unit = qv({0, 0, 1});
    const auto states = Polytope<Rational>::from_points(3, {qv({1, 1, 1}), qv({1, -1, 1}), qv({-1, 1, 1}), qv({-1, -1, 1})}, cfg);
    GptSystem<Rational> seed("boxworld", unit, states, Polytope<Rational>::from_points(3, {qv({0, 0, 0}), unit}, cfg), cfg);
    return unrestrict(seed, cfg);
}

template <class T>
GptSystem<T> noisy_boxworld(const T& lambda, const Settings& cfg)
{
    if (NumTraits<T>::sign(lambda, 0.0) <= 0 || NumTraits<T>::sign(T(1) - lambda, 0.0) < 0) {
        throw InvalidInput("noisy_boxworld: lambda must lie in (0, 1]");
    }
    const auto box = convert_system<T>(boxworld(cfg), cfg);
    const Matrix<T> l = Matrix<T>::diagonal({lambda, lambda, T(1)});
    return restrict_effects_linear(box, l, cfg).relabeled("noisy_boxworld:" + NumTraits<T>::format(lambda));
}

GptSystem<double> polygon(int n, const Settings& cfg)
{
    if (n < 3) {
        throw InvalidInput("polygon(n) needs n >= 3");
    }
    const double r = std::sqrt(1.0 / std::cos(std::numbers::pi / n));
    std::vector<Vector<double>> states;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * i / n;
        states.push_back({r * std::cos(a), r * std::sin(a), 1.0});
    }
    const Vector<double> unit{0.0, 0.0, 1.0};
    GptSystem<double> seed("polygon:" + std::to_string(n), unit, Polytope<double>::from_points(3, states, cfg),
                           Polytope<double>::from_points(3, {{0.0, 0.0, 0.0}, unit}, cfg), cfg);
    return unrestrict(seed, cfg);
}

template <class T>
GptSystem<T> self_dualize(const GptSystem<T>& s, const Settings& cfg)
{
    const auto& states = s.states().vertices();
    const ConeH<T> state_cone = facet_enumeration(states, s.dim(), cfg);
    HPolytope<T> h;
    h.dim = s.dim();
    for (const auto& f : state_cone.inequalities) {
        h.inequalities.push_back({f, T(0)});
    }
    for (const auto& f : state_cone.equalities) {
        h.equalities.push_back({f, T(0)});
    }
    for (const auto& w : states) {
        h.inequalities.push_back({w, T(0)});
        Vector<T> neg(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            neg[i] = -w[i];
        }
        h.inequalities.push_back({std::move(neg), T(-1)});
    }
    auto effects = Polytope<T>::from_inequalities(std::move(h), cfg);
    std::string label = s.label();
    if (label.rfind("selfdual_", 0) != 0) {
        label = "selfdual_" + label;
    }
    return GptSystem<T>(std::move(label), s.unit(), s.states(), std::move(effects), cfg);
}

GptSystem<Rational> spekkens_bit(SpekkensKind kind, const Settings& cfg)
{
    const Vector<Rational> unit = qv({0, 0, 0, 1});
    std::vector<Vector<Rational>> states;
    std::vector<Vector<Rational>> effects{qv({0, 0, 0, 0}), unit};
    const Rational half(1, 2);
    for (std::size_t axis = 0; axis < 3; ++axis) {
        for (int sgn : {1, -1}) {
            Vector<Rational> w(4, Rational(0));
            w[axis] = sgn;
            w[3] = 1;
            Vector<Rational> e(4, Rational(0));
            e[axis] = Rational(sgn) * half;
            e[3] = half;
            states.push_back(std::move(w));
            effects.push_back(std::move(e));
        }
    }
    auto restricted = GptSystem<Rational>::from_points("spekkens_restricted", unit, states, effects, cfg);
    if (kind == SpekkensKind::Restricted) {
        return restricted;
    }
    return unrestrict(restricted, cfg).relabeled("spekkens_unrestricted");
}

ModelId ModelId::parse(std::string_view text)
{
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    const bool has_arg = colon != std::string_view::npos;

    ModelId id;
    auto need_arg = [&](bool wanted) {
        if (wanted != has_arg) {
            throw InvalidInput("model '" + std::string(text) + "': " +
                               (wanted ? "missing parameter" : "takes no parameter"));
        }
    };
    if (head == "classical") {
        need_arg(true);
        id.name = Name::Classical;
        id.count = parse_count(arg, "classical");
        if (id.count < 2) {
            throw InvalidInput("classical(k) needs k >= 2");
        }
    } else if (head == "boxworld") {
        need_arg(false);
        id.name = Name::Boxworld;
    } else if (head == "noisy_boxworld") {
        need_arg(true);
        id.name = Name::NoisyBoxworld;
        const Rational l = parse_rational(arg);
        if (l <= 0 || l > 1) {
            throw InvalidInput("noisy_boxworld: lambda must lie in (0, 1]");
        }
        id.parameter = l.str();
    } else if (head == "polygon" || head == "selfdual_polygon") {
        need_arg(true);
        id.name = head == "polygon" ? Name::Polygon : Name::SelfdualPolygon;
        id.count = parse_count(arg, "polygon");
        if (id.count < 3) {
            throw InvalidInput("polygon(n) needs n >= 3");
        }
    } else if (head == "spekkens_restricted") {
        need_arg(false);
        id.name = Name::SpekkensRestricted;
    } else if (head == "spekkens_unrestricted") {
        need_arg(false);
        id.name = Name::SpekkensUnrestricted;
    } else {
        throw InvalidInput("unknown model '" + std::string(text) + "'");
    }
    return id;
}

std::string ModelId::str() const
{
    switch (name) {
    case Name::Classical:
        return "classical:" + std::to_string(count);
    case Name::Boxworld:
        return "boxworld";
    case Name::NoisyBoxworld:
        return "noisy_boxworld:" + parameter;
    case Name::Polygon:
        return "polygon:" + std::to_string(count);
    case Name::SelfdualPolygon:
        return "selfdual_polygon:" + std::to_string(count);
    case Name::SpekkensRestricted:
        return "spekkens_restricted";
    case Name::SpekkensUnrestricted:
        return "spekkens_unrestricted";
    }
    return "?";
}

bool ModelId::exact() const { return name != Name::Polygon && name != Name::SelfdualPolygon; }

AnySystem build_model(const ModelId& id, const Settings& cfg)
{
    switch (id.name) {
    case ModelId::Name::Classical:
        return classical(id.count, cfg);
    case ModelId::Name::Boxworld:
        return boxworld(cfg);
    case ModelId::Name::NoisyBoxworld:
        return noisy_boxworld(parse_rational(id.parameter), cfg);
    case ModelId::Name::Polygon:
        return polygon(id.count, cfg);
    case ModelId::Name::SelfdualPolygon:
        return self_dualize(polygon(id.count, cfg), cfg);
    case ModelId::Name::SpekkensRestricted:
        return spekkens_bit(SpekkensKind::Restricted, cfg);
    case ModelId::Name::SpekkensUnrestricted:
        return spekkens_bit(SpekkensKind::Unrestricted, cfg);
    }
    throw InvalidInput("unknown model");
}

template GptSystem<Rational> noisy_boxworld(const Rational&, const Settings&);
template GptSystem<double> noisy_boxworld(const double&, const Settings&);
template GptSystem<Rational> self_dualize(const GptSystem<Rational>&, const Settings&);
template GptSystem<double> self_dualize(const GptSystem<double>&, const Settings&);

}  // namespace gpt
