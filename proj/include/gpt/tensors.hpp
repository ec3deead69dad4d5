#pragma once

#include <optional>
#include <string_view>

#include "gpt/systems.hpp"

namespace gpt {

enum class TensorKind { ProductStates, GeneralizedMaxTensor, MaxTensor };

std::string_view to_string(TensorKind k);
/// Accepts "product", "genmax", "max".
TensorKind parse_tensor_kind(std::string_view s);

/// Joint system on V_A (x) V_B with row-major (A-major) Kronecker layout.
/// Product joints are held by their vertices; the maximal kinds always
/// carry their defining constraints and carry vertices once enumerated.
template <class T>
struct JointSystem {
    GptSystem<T> a;
    GptSystem<T> b;
    TensorKind kind;
    std::optional<Polytope<T>> states;
    std::optional<HPolytope<T>> h;

    Vector<T> unit() const { return kron(a.unit(), b.unit()); }
    std::size_t dim() const { return a.dim() * b.dim(); }
    bool enumerated() const { return states.has_value(); }
    /// Vertices; throws InvalidInput when they were not enumerated.
    const std::vector<Vector<T>>& vertices() const;
    const HPolytope<T>& constraints(const Settings& cfg = {}) const;
    bool contains(const Vector<T>& x, const Settings& cfg = {}) const;
};

enum class Enumeration {
    Required,    // enumerate vertices, BudgetExceeded propagates
    BestEffort,  // keep only the constraints when the budget is exceeded
    Skip,        // constraints only
};

/// Positivity on every product of nonzero extreme effects of the stored
/// effect sets, plus normalization by u_A (x) u_B.
template <class T>
HPolytope<T> max_tensor_constraints(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg = {});

/// Constraints of max_tensor(unrestrict(A), B) and max_tensor(A, unrestrict(B)) together.
template <class T>
HPolytope<T> generalized_constraints(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg = {});

template <class T>
JointSystem<T> max_tensor(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg = {},
                          Enumeration mode = Enumeration::Required);

template <class T>
JointSystem<T> generalized_max_tensor(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg = {},
                                      Enumeration mode = Enumeration::Required);

/// Convex hull of products of pure states; always enumerated.
template <class T>
JointSystem<T> product_tensor(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg = {});

template <class T>
JointSystem<T> make_tensor(TensorKind kind, const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg = {},
                           Enumeration mode = Enumeration::Required);

/// Enumerates the vertices of `j` in place if missing.
template <class T>
void enumerate_states(JointSystem<T>& j, const Settings& cfg = {});

template <class T>
Vector<T> product_state(const Vector<T>& state_a, const Vector<T>& state_b);

/// The party whose effect is applied.
enum class Side { A, B };

template <class T>
struct Conditional {
    T prob;
    /// Normalized post-measurement state of the other party; absent when prob is zero.
    std::optional<Vector<T>> state;
    /// Contraction before normalization.
    Vector<T> unnormalized;
};

/// Applies `effect` on `side` and returns the outcome probability and the
/// other party's conditional state. Throws InvalidEffect if the effect is not
/// in the stored effect set of that side.
template <class T>
Conditional<T> conditional_state(const Vector<T>& joint, Side side, const Vector<T>& effect, const GptSystem<T>& a,
                                 const GptSystem<T>& b, const Settings& cfg = {});

/// Marginal of `keep` obtained by contracting the other party with its unit.
template <class T>
Vector<T> marginal(const Vector<T>& joint, Side keep, const GptSystem<T>& a, const GptSystem<T>& b);

/// Every extreme effect on either side yields a nonnegative probability and,
/// when that probability is positive, a conditional state inside the other
/// party's state space; a zero-probability outcome must leave a vanishing
/// unnormalized conditional.
template <class T>
bool has_valid_conditionals(const Vector<T>& joint, const GptSystem<T>& a, const GptSystem<T>& b,
                            const Settings& cfg = {});

/// Membership in the generalized maximal tensor product by direct constraint evaluation.
template <class T>
bool membership_generalized(const Vector<T>& joint, const GptSystem<T>& a, const GptSystem<T>& b,
                            const Settings& cfg = {});

}  // namespace gpt
