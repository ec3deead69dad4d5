#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gpt/tensors.hpp"

namespace gpt {

/// Two dichotomic measurements per party. Each entry is the effect of
/// outcome "+"; outcome "-" is u minus it.
template <class T>
struct Scenario {
    std::array<Vector<T>, 2> a;
    std::array<Vector<T>, 2> b;
};

/// Throws InvalidEffect unless every effect and its complement lie in the
/// effect set of its system.
template <class T>
Scenario<T> make_scenario(const GptSystem<T>& A, const GptSystem<T>& B, std::array<Vector<T>, 2> a,
                          std::array<Vector<T>, 2> b, const Settings& cfg = {});

/// p(a,b|x,y) with outcome index 0 for "+" and 1 for "-".
template <class T>
struct Behavior {
    std::array<T, 16> p{};

    static constexpr std::size_t index(int x, int y, int a, int b) { return static_cast<std::size_t>(((x * 2 + y) * 2 + a) * 2 + b); }
    T& operator()(int x, int y, int a, int b) { return p[index(x, y, a, b)]; }
    const T& operator()(int x, int y, int a, int b) const { return p[index(x, y, a, b)]; }
    /// E_xy = p(++) - p(+-) - p(-+) + p(--).
    T correlator(int x, int y) const;
};

template <class T>
Behavior<T> behavior(const Vector<T>& joint, const Scenario<T>& sc, const GptSystem<T>& A, const GptSystem<T>& B,
                     const Settings& cfg = {});

/// First violated behavior invariant (range, normalization, no-signalling), if any.
template <class T>
std::optional<std::string> behavior_violation(const Behavior<T>& b, const Settings& cfg = {});

template <class T>
T chsh_value(const Behavior<T>& b);

/// The CHSH functional as a vector on V_A (x) V_B.
template <class T>
Vector<T> chsh_functional(const Scenario<T>& sc, const Vector<T>& unit_a, const Vector<T>& unit_b);

enum class ChshMethod { Vertices, LinearProgram };

template <class T>
struct ChshResult {
    T value;
    Vector<T> state;
    Scenario<T> scenario;
    /// Index into the sorted vertex list (vertex method only).
    std::optional<std::size_t> vertex_index;
    ChshMethod method;
};

/// Maximum of chsh_value over joint states and ordered 4-tuples of extreme
/// dichotomic effects. Uses the vertices when the joint space was
/// enumerated, otherwise one linear program per effect tuple over its
/// constraints. The witness is the lexicographically first maximizer.
template <class T>
ChshResult<T> chsh_max(const JointSystem<T>& j, const Settings& cfg = {});

/// Same, with explicit observable lists for each party. Throws InvalidEffect
/// if an entry is not dichotomic for its system.
template <class T>
ChshResult<T> chsh_max(const JointSystem<T>& j, const std::vector<Vector<T>>& obs_a,
                       const std::vector<Vector<T>>& obs_b, const Settings& cfg = {});

template <class T>
struct BoundReport {
    T s_generalized;  // restricted effects on the generalized maximal tensor product
    T s_unrestricted;  // unrestricted effects on the maximal tensor product of the unrestricted systems
    T s_restricted_max;  // restricted effects on the maximal tensor product of the restricted systems
    bool bound_holds;
    bool identity_holds;
};

/// Restricts A and B by LA and LB and compares the three CHSH maxima.
/// Throws InvalidRestriction from restrict_effects_linear.
template <class T>
BoundReport<T> correlation_bound_check(const GptSystem<T>& A, const GptSystem<T>& B, const Matrix<T>& LA,
                                       const Matrix<T>& LB, const Settings& cfg = {},
                                       Enumeration mode = Enumeration::BestEffort);

/// Rows "x,y,a,b,p" with outcomes written as + and -.
template <class T>
std::string behavior_csv(const Behavior<T>& b);

}  // namespace gpt
