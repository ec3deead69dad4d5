#include "gpt/systems.hpp"

#include <sstream>
#include <utility>

namespace gpt {
namespace {

template <class T>
bool in_unit_interval(const T& p, double eps)
{
    return NumTraits<T>::sign(p, eps) >= 0 && NumTraits<T>::sign(T(1) - p, eps) >= 0;
}

template <class T>
std::string describe(const Vector<T>& v)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? "," : "") << NumTraits<T>::format(v[i]);
    }
    os << ")";
    return os.str();
}

/// Throws InvalidInput describing the first violated invariant.
template <class T>
void validate(const std::string& label, const Vector<T>& unit, const Polytope<T>& states, const Polytope<T>& effects,
              const Settings& cfg)
{
    const std::size_t dim = unit.size();
    const std::string who = "system '" + label + "': ";
    if (dim == 0) {
        throw InvalidInput(who + "dimension must be positive");
    }
    if (states.dim() != dim || effects.dim() != dim) {
        throw InvalidInput(who + "state/effect dimension differs from the unit");
    }
    if (states.vertices().empty()) {
        throw InvalidInput(who + "no states");
    }
    for (const auto& w : states.vertices()) {
        if (!NumTraits<T>::is_zero(dot(unit, w) - T(1), cfg.eps)) {
            throw InvalidInput(who + "state " + describe(w) + " is not normalized");
        }
    }
    for (const auto& e : effects.vertices()) {
        for (const auto& w : states.vertices()) {
            if (!in_unit_interval(dot(e, w), cfg.eps)) {
                throw InvalidInput(who + "effect " + describe(e) + " gives " + NumTraits<T>::format(dot(e, w)) +
                                   " on state " + describe(w));
            }
        }
    }
    if (!effects.contains(Vector<T>(dim, T(0)), cfg)) {
        throw InvalidInput(who + "zero effect missing");
    }
    if (!effects.contains(unit, cfg)) {
        throw InvalidInput(who + "unit effect missing");
    }
    if (rank(Matrix<T>::from_rows(states.vertices(), dim), cfg.eps) != dim) {
        throw InvalidInput(who + "states do not span the state space");
    }
}

template <class T>
Vector<T> transposed_apply(const Matrix<T>& m, const Vector<T>& v)
{
    return m.transpose() * v;
}

}  // namespace

template <class T>
GptSystem<T>::GptSystem(std::string label, Vector<T> unit, Polytope<T> states, Polytope<T> effects,
                        const Settings& cfg)
    : label_(std::move(label)), unit_(std::move(unit)), states_(std::move(states)), effects_(std::move(effects))
{
    validate(label_, unit_, states_, effects_, cfg);
}

template <class T>
GptSystem<T> GptSystem<T>::from_points(std::string label, Vector<T> unit, std::vector<Vector<T>> states,
                                       std::vector<Vector<T>> effects, const Settings& cfg)
{
    const std::size_t dim = unit.size();
    auto sp = Polytope<T>::from_points(dim, std::move(states), cfg);
    auto ep = Polytope<T>::from_points(dim, std::move(effects), cfg);
    return GptSystem(std::move(label), std::move(unit), std::move(sp), std::move(ep), cfg);
}

template <class T>
GptSystem<T> GptSystem<T>::relabeled(std::string label) const
{
    GptSystem copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

template <class T>
T evaluate(const Vector<T>& effect, const Vector<T>& state)
{
    if (effect.size() != state.size()) {
        throw InvalidInput("evaluate: dimension mismatch");
    }
    return dot(effect, state);
}

template <class T>
Vector<T> mix(const std::vector<Vector<T>>& points, const std::vector<T>& weights, const Settings& cfg)
{
    if (points.empty() || points.size() != weights.size()) {
        throw InvalidInput("mix: need one weight per point");
    }
    T total = T(0);
    for (const auto& w : weights) {
        if (NumTraits<T>::sign(w, cfg.eps) < 0) {
            throw InvalidInput("mix: negative weight");
        }
        total += w;
    }
    if (!NumTraits<T>::is_zero(total - T(1), cfg.eps)) {
        throw InvalidInput("mix: weights do not sum to one");
    }
    Vector<T> out(points.front().size(), T(0));
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].size() != out.size()) {
            throw InvalidInput("mix: dimension mismatch");
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += weights[k] * points[k][i];
        }
    }
    return out;
}

template <class T>
Matrix<T> probability_table(const GptSystem<T>& s)
{
    const auto& es = s.effects().vertices();
    const auto& ws = s.states().vertices();
    Matrix<T> table(es.size(), ws.size());
    for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = 0; j < ws.size(); ++j) {
            table(i, j) = dot(es[i], ws[j]);
        }
    }
    return table;
}

template <class T>
GptSystem<T> unrestrict(const GptSystem<T>& s, const Settings& cfg)
{
    HPolytope<T> h;
    h.dim = s.dim();
    for (const auto& w : s.states().vertices()) {
        h.inequalities.push_back({w, T(0)});
        Vector<T> neg(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            neg[i] = -w[i];
        }
        h.inequalities.push_back({std::move(neg), T(-1)});
    }
    auto effects = Polytope<T>::from_inequalities(std::move(h), cfg);
    return GptSystem<T>(s.label(), s.unit(), s.states(), std::move(effects), cfg);
}

template <class T>
bool is_unrestricted(const GptSystem<T>& s, const Settings& cfg)
{
    return s.effects().same_vertices(unrestrict(s, cfg).effects(), cfg);
}

template <class T>
GptSystem<T> restrict_effects_linear(const GptSystem<T>& s, const Matrix<T>& L, const Settings& cfg)
{
    if (L.rows() != s.dim() || L.cols() != s.dim()) {
        throw InvalidInput("restrict_effects_linear: map has wrong shape");
    }
    (void)inverse(L, cfg.eps);
    const auto full = unrestrict(s, cfg);
    std::vector<Vector<T>> image;
    for (const auto& e : full.effects().vertices()) {
        auto le = L * e;
        for (const auto& w : s.states().vertices()) {
            if (!in_unit_interval(dot(le, w), cfg.eps)) {
                throw InvalidRestriction("restricted effect " + describe(le) + " gives " +
                                         NumTraits<T>::format(dot(le, w)) + " on state " + describe(w));
            }
        }
        image.push_back(std::move(le));
    }
    // A bijection maps extreme points to extreme points.
    auto effects = Polytope<T>::from_extreme_points(s.dim(), std::move(image), cfg);
    if (!effects.contains(s.unit(), cfg)) {
        throw InvalidRestriction("restriction removes the unit effect");
    }
    return GptSystem<T>(s.label(), s.unit(), s.states(), std::move(effects), cfg);
}

template <class T>
GptSystem<T> transform_representation(const GptSystem<T>& s, const Matrix<T>& L, const Settings& cfg)
{
    if (L.rows() != s.dim() || L.cols() != s.dim()) {
        throw InvalidInput("transform_representation: map has wrong shape");
    }
    const Matrix<T> inv = inverse(L, cfg.eps);
    std::vector<Vector<T>> states;
    for (const auto& w : s.states().vertices()) {
        states.push_back(transposed_apply(inv, w));
    }
    std::vector<Vector<T>> effects;
    for (const auto& e : s.effects().vertices()) {
        effects.push_back(L * e);
    }
    return GptSystem<T>(s.label(), L * s.unit(), Polytope<T>::from_extreme_points(s.dim(), std::move(states), cfg),
                        Polytope<T>::from_extreme_points(s.dim(), std::move(effects), cfg), cfg);
}

template <class T>
std::vector<Vector<T>> dichotomic_observables(const GptSystem<T>& s, const Settings& cfg)
{
    const auto& e = s.effects().constraints(cfg);
    HPolytope<T> h = e;
    // e in u - E  <=>  a.(u - e) >= b  <=>  -a.e >= b - a.u
    for (const auto& f : e.inequalities) {
        Vector<T> neg(f.normal.size());
        for (std::size_t i = 0; i < neg.size(); ++i) {
            neg[i] = -f.normal[i];
        }
        h.inequalities.push_back({std::move(neg), f.offset - dot(f.normal, s.unit())});
    }
    for (const auto& f : e.equalities) {
        Vector<T> neg(f.normal.size());
        for (std::size_t i = 0; i < neg.size(); ++i) {
            neg[i] = -f.normal[i];
        }
        h.equalities.push_back({std::move(neg), f.offset - dot(f.normal, s.unit())});
    }
    return vertex_enumeration(h, cfg);
}

template <class T>
bool is_dichotomic(const GptSystem<T>& s, const Vector<T>& e, const Settings& cfg)
{
    return s.effects().contains(e, cfg) && s.effects().contains(s.unit() - e, cfg);
}

template <class To, class From>
GptSystem<To> convert_system(const GptSystem<From>& s, const Settings& cfg)
{
    return GptSystem<To>(s.label(), convert_vector<To>(s.unit()), convert_polytope<To>(s.states(), cfg),
                         convert_polytope<To>(s.effects(), cfg), cfg);
}

#define GPT_INSTANTIATE_SYSTEMS(T)                                                                        \
    template class GptSystem<T>;                                                                          \
    template T evaluate(const Vector<T>&, const Vector<T>&);                                              \
    template Vector<T> mix(const std::vector<Vector<T>>&, const std::vector<T>&, const Settings&);        \
    template Matrix<T> probability_table(const GptSystem<T>&);                                            \
    template GptSystem<T> unrestrict(const GptSystem<T>&, const Settings&);                               \
    template bool is_unrestricted(const GptSystem<T>&, const Settings&);                                  \
    template GptSystem<T> restrict_effects_linear(const GptSystem<T>&, const Matrix<T>&, const Settings&); \
    template GptSystem<T> transform_representation(const GptSystem<T>&, const Matrix<T>&, const Settings&); \
    template std::vector<Vector<T>> dichotomic_observables(const GptSystem<T>&, const Settings&);         \
    template bool is_dichotomic(const GptSystem<T>&, const Vector<T>&, const Settings&);

GPT_INSTANTIATE_SYSTEMS(Rational)
GPT_INSTANTIATE_SYSTEMS(double)

template GptSystem<double> convert_system(const GptSystem<Rational>&, const Settings&);
template GptSystem<double> convert_system(const GptSystem<double>&, const Settings&);
template GptSystem<Rational> convert_system(const GptSystem<Rational>&, const Settings&);

#undef GPT_INSTANTIATE_SYSTEMS

}  // namespace gpt
