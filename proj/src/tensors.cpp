#include "gpt/tensors.hpp"

#include <algorithm>
#include <string>

namespace gpt {
namespace {

/// Nonzero extreme effects, dropping the unit when it is the sum of two
/// other listed effects (its product rows are then implied).
template <class T>
std::vector<Vector<T>> factor_rows(const std::vector<Vector<T>>& effects, const Vector<T>& unit, double eps)
{
    auto listed = [&](const Vector<T>& v) {
        return std::any_of(effects.begin(), effects.end(), [&](const Vector<T>& e) { return vectors_equal(e, v, eps); });
    };
    bool unit_splits = false;
    for (const auto& e : effects) {
        if (!is_zero_vector(e, eps) && !vectors_equal(e, unit, eps) && listed(unit - e)) {
            unit_splits = true;
            break;
        }
    }
    std::vector<Vector<T>> out;
    for (const auto& e : effects) {
        if (is_zero_vector(e, eps) || (unit_splits && vectors_equal(e, unit, eps))) {
            continue;
        }
        out.push_back(e);
    }
    return out;
}

template <class T>
void add_product_rows(const GptSystem<T>& a, const GptSystem<T>& b, double eps, std::vector<Vector<T>>& rows)
{
    const auto ea = factor_rows(a.effects().vertices(), a.unit(), eps);
    const auto eb = factor_rows(b.effects().vertices(), b.unit(), eps);
    for (const auto& e : ea) {
        for (const auto& f : eb) {
            rows.push_back(canonical_ray(kron(e, f), eps));
        }
    }
}

template <class T>
HPolytope<T> rows_to_polytope(std::vector<Vector<T>> rows, const Vector<T>& unit, double eps)
{
    sort_unique(rows, eps);
    HPolytope<T> h;
    h.dim = unit.size();
    h.inequalities.reserve(rows.size());
    for (auto& r : rows) {
        h.inequalities.push_back({std::move(r), T(0)});
    }
    h.equalities.push_back({unit, T(1)});
    return h;
}

template <class T>
void check_joint(const Vector<T>& joint, const GptSystem<T>& a, const GptSystem<T>& b)
{
    if (joint.size() != a.dim() * b.dim()) {
        throw InvalidInput("joint vector has dimension " + std::to_string(joint.size()) + ", expected " +
                           std::to_string(a.dim() * b.dim()));
    }
}

/// (I (x) f) w when side == B, (e (x) I) w when side == A.
template <class T>
Vector<T> contract(const Vector<T>& joint, Side side, const Vector<T>& effect, std::size_t da, std::size_t db)
{
    if (side == Side::B) {
        Vector<T> out(da, T(0));
        for (std::size_t i = 0; i < da; ++i) {
            for (std::size_t j = 0; j < db; ++j) {
                out[i] += joint[i * db + j] * effect[j];
            }
        }
        return out;
    }
    Vector<T> out(db, T(0));
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < db; ++j) {
            out[j] += effect[i] * joint[i * db + j];
        }
    }
    return out;
}

template <class T>
Conditional<T> condition_unchecked(const Vector<T>& joint, Side side, const Vector<T>& effect,
                                   const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg)
{
    Conditional<T> c;
    c.unnormalized = contract(joint, side, effect, a.dim(), b.dim());
    const auto& other_unit = side == Side::B ? a.unit() : b.unit();
    c.prob = dot(other_unit, c.unnormalized);
    if (NumTraits<T>::sign(c.prob, cfg.eps) > 0) {
        Vector<T> s = c.unnormalized;
        for (auto& x : s) {
            x /= c.prob;
        }
        c.state = std::move(s);
    }
    return c;
}

template <class T>
bool side_valid(const Vector<T>& joint, Side side, const GptSystem<T>& a, const GptSystem<T>& b,
                const Settings& cfg)
{
    const auto& measured = side == Side::B ? b : a;
    const auto& other = side == Side::B ? a : b;
    for (const auto& f : measured.effects().vertices()) {
        const auto c = condition_unchecked(joint, side, f, a, b, cfg);
        const int sg = NumTraits<T>::sign(c.prob, cfg.eps);
        if (sg < 0) {
            return false;
        }
        if (sg == 0) {
            if (!is_zero_vector(c.unnormalized, cfg.eps)) {
                return false;
            }
            continue;
        }
        if (!other.states().contains(*c.state, cfg)) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::string_view to_string(TensorKind k)
{
    switch (k) {
    case TensorKind::ProductStates:
        return "product";
    case TensorKind::GeneralizedMaxTensor:
        return "genmax";
    case TensorKind::MaxTensor:
        return "max";
    }
    return "?";
}

TensorKind parse_tensor_kind(std::string_view s)
{
    if (s == "product") {
        return TensorKind::ProductStates;
    }
    if (s == "genmax") {
        return TensorKind::GeneralizedMaxTensor;
    }
    if (s == "max") {
        return TensorKind::MaxTensor;
    }
    throw InvalidInput("unknown tensor kind '" + std::string(s) + "' (expected product|genmax|max)");
}

template <class T>
HPolytope<T> max_tensor_constraints(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg)
{
    std::vector<Vector<T>> rows;
    add_product_rows(a, b, cfg.eps, rows);
    return rows_to_polytope(std::move(rows), kron(a.unit(), b.unit()), cfg.eps);
}

template <class T>
HPolytope<T> generalized_constraints(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg)
{
    const auto ua = unrestrict(a, cfg);
    const auto ub = unrestrict(b, cfg);
    std::vector<Vector<T>> rows;
    add_product_rows(ua, b, cfg.eps, rows);
    add_product_rows(a, ub, cfg.eps, rows);
    return rows_to_polytope(std::move(rows), kron(a.unit(), b.unit()), cfg.eps);
}

template <class T>
const std::vector<Vector<T>>& JointSystem<T>::vertices() const
{
    if (!states) {
        throw InvalidInput("joint state space of kind '" + std::string(to_string(kind)) +
                           "' was not enumerated");
    }
    return states->vertices();
}

template <class T>
const HPolytope<T>& JointSystem<T>::constraints(const Settings& cfg) const
{
    if (h) {
        return *h;
    }
    return states->constraints(cfg);
}

template <class T>
bool JointSystem<T>::contains(const Vector<T>& x, const Settings& cfg) const
{
    if (x.size() != dim()) {
        throw InvalidInput("joint vector has dimension " + std::to_string(x.size()) + ", expected " +
                           std::to_string(dim()));
    }
    return h ? h->contains(x, cfg) : states->contains(x, cfg);
}

template <class T>
void enumerate_states(JointSystem<T>& j, const Settings& cfg)
{
    if (!j.states) {
        j.states = Polytope<T>::from_inequalities(*j.h, cfg);
    }
}

namespace {

template <class T>
JointSystem<T> from_constraints(TensorKind kind, const GptSystem<T>& a, const GptSystem<T>& b, HPolytope<T> h,
                                const Settings& cfg, Enumeration mode)
{
    JointSystem<T> j{a, b, kind, std::nullopt, std::move(h)};
    if (mode == Enumeration::Skip) {
        return j;
    }
    try {
        enumerate_states(j, cfg);
    } catch (const BudgetExceeded&) {
        if (mode == Enumeration::Required) {
            throw;
        }
    }
    return j;
}

}  // namespace

template <class T>
JointSystem<T> max_tensor(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg, Enumeration mode)
{
    return from_constraints(TensorKind::MaxTensor, a, b, max_tensor_constraints(a, b, cfg), cfg, mode);
}

template <class T>
JointSystem<T> generalized_max_tensor(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg,
                                      Enumeration mode)
{
    return from_constraints(TensorKind::GeneralizedMaxTensor, a, b, generalized_constraints(a, b, cfg), cfg, mode);
}

template <class T>
JointSystem<T> product_tensor(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg)
{
    std::vector<Vector<T>> pts;
    for (const auto& wa : a.states().vertices()) {
        for (const auto& wb : b.states().vertices()) {
            pts.push_back(kron(wa, wb));
        }
    }
    // Products of extreme points are extreme in the hull of all products.
    auto states = Polytope<T>::from_extreme_points(a.dim() * b.dim(), std::move(pts), cfg);
    return {a, b, TensorKind::ProductStates, std::move(states), std::nullopt};
}

template <class T>
JointSystem<T> make_tensor(TensorKind kind, const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg,
                           Enumeration mode)
{
    switch (kind) {
    case TensorKind::ProductStates:
        return product_tensor(a, b, cfg);
    case TensorKind::GeneralizedMaxTensor:
        return generalized_max_tensor(a, b, cfg, mode);
    case TensorKind::MaxTensor:
        break;
    }
    return max_tensor(a, b, cfg, mode);
}

template <class T>
Vector<T> product_state(const Vector<T>& state_a, const Vector<T>& state_b)
{
    if (state_a.empty() || state_b.empty()) {
        throw InvalidInput("product_state: empty state");
    }
    return kron(state_a, state_b);
}

template <class T>
Conditional<T> conditional_state(const Vector<T>& joint, Side side, const Vector<T>& effect, const GptSystem<T>& a,
                                 const GptSystem<T>& b, const Settings& cfg)
{
    check_joint(joint, a, b);
    const auto& measured = side == Side::B ? b : a;
    if (effect.size() != measured.dim()) {
        throw InvalidInput("conditional_state: effect has wrong dimension");
    }
    if (!measured.effects().contains(effect, cfg)) {
        throw InvalidEffect("conditional_state: effect is not in the effect set of system '" + measured.label() + "'");
    }
    return condition_unchecked(joint, side, effect, a, b, cfg);
}

template <class T>
Vector<T> marginal(const Vector<T>& joint, Side keep, const GptSystem<T>& a, const GptSystem<T>& b)
{
    check_joint(joint, a, b);
    return keep == Side::A ? contract(joint, Side::B, b.unit(), a.dim(), b.dim())
                           : contract(joint, Side::A, a.unit(), a.dim(), b.dim());
}

template <class T>
bool has_valid_conditionals(const Vector<T>& joint, const GptSystem<T>& a, const GptSystem<T>& b,
                            const Settings& cfg)
{
    check_joint(joint, a, b);
    return side_valid(joint, Side::B, a, b, cfg) && side_valid(joint, Side::A, a, b, cfg);
}

template <class T>
bool membership_generalized(const Vector<T>& joint, const GptSystem<T>& a, const GptSystem<T>& b,
                            const Settings& cfg)
{
    check_joint(joint, a, b);
    return generalized_constraints(a, b, cfg).contains(joint, cfg);
}

#define GPT_INSTANTIATE_TENSORS(T)                                                                              \
    template HPolytope<T> max_tensor_constraints(const GptSystem<T>&, const GptSystem<T>&, const Settings&);    \
    template HPolytope<T> generalized_constraints(const GptSystem<T>&, const GptSystem<T>&, const Settings&);   \
    template struct JointSystem<T>;                                                                             \
    template void enumerate_states(JointSystem<T>&, const Settings&);                                           \
    template JointSystem<T> max_tensor(const GptSystem<T>&, const GptSystem<T>&, const Settings&, Enumeration); \
    template JointSystem<T> generalized_max_tensor(const GptSystem<T>&, const GptSystem<T>&, const Settings&,   \
                                                   Enumeration);                                                \
    template JointSystem<T> product_tensor(const GptSystem<T>&, const GptSystem<T>&, const Settings&);          \
    template JointSystem<T> make_tensor(TensorKind, const GptSystem<T>&, const GptSystem<T>&, const Settings&,  \
                                        Enumeration);                                                           \
    template Vector<T> product_state(const Vector<T>&, const Vector<T>&);                                       \
    template Conditional<T> conditional_state(const Vector<T>&, Side, const Vector<T>&, const GptSystem<T>&,    \
                                              const GptSystem<T>&, const Settings&);                            \
    template Vector<T> marginal(const Vector<T>&, Side, const GptSystem<T>&, const GptSystem<T>&);              \
    template bool has_valid_conditionals(const Vector<T>&, const GptSystem<T>&, const GptSystem<T>&,            \
                                         const Settings&);                                                      \
    template bool membership_generalized(const Vector<T>&, const GptSystem<T>&, const GptSystem<T>&,            \
                                         const Settings&);

GPT_INSTANTIATE_TENSORS(Rational)
GPT_INSTANTIATE_TENSORS(double)

#undef GPT_INSTANTIATE_TENSORS

}  // namespace gpt
