#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gpt/correlations.hpp"
#include "gpt/tensors.hpp"

namespace gpt {

using Rng = std::mt19937_64;

/// Uniform on the grid {lo + k/den} in [lo, hi], reduced.
Rational random_rational(Rng& rng, int lo, int hi, int den);

/// Every point of `small` satisfies the constraints of `big`. Uses the
/// vertices of `small` when present and one linear program per constraint
/// of `big` otherwise.
template <class T>
bool joint_subset(const JointSystem<T>& small, const JointSystem<T>& big, const Settings& cfg = {});

/// product <= max(unrestrict A, unrestrict B) <= genmax(A, B) <= max(A, B).
template <class T>
struct Hierarchy {
    JointSystem<T> product;
    JointSystem<T> max_unrestricted;
    JointSystem<T> generalized;
    JointSystem<T> max;
    bool product_in_max_unrestricted = false;
    bool max_unrestricted_in_generalized = false;
    bool generalized_in_max = false;

    bool holds() const { return product_in_max_unrestricted && max_unrestricted_in_generalized && generalized_in_max; }
};

template <class T>
Hierarchy<T> tensor_hierarchy(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg = {},
                              Enumeration mode = Enumeration::Required);

/// Points known to lie in `j`: its vertices, or vertices reached by linear
/// programs with random objectives when it was not enumerated.
template <class T>
std::vector<Vector<T>> sample_vertices(const JointSystem<T>& j, Rng& rng, std::size_t count, const Settings& cfg = {});

template <class T>
struct EquivalenceReport {
    std::size_t samples = 0;
    std::size_t inside = 0;
    std::size_t outside = 0;
    std::size_t disagreements = 0;
    /// First sample where membership and the conditional-state test differ.
    std::optional<Vector<T>> counterexample;
    bool counterexample_member = false;
};

/// Samples normalized joint vectors along random lines through points of
/// the generalized maximal tensor product, alternating between points before
/// and after the line leaves it, and compares membership_generalized with
/// has_valid_conditionals on each.
template <class T>
EquivalenceReport<T> conditional_equivalence(const JointSystem<T>& generalized, Rng& rng, std::size_t samples,
                                             const Settings& cfg = {});

template <class T>
struct CollapseReport {
    bool applicable = false;
    bool holds = false;
    std::optional<std::size_t> generalized_vertices;
    std::optional<std::size_t> max_vertices;
};

/// When either side is unrestricted, genmax(A, B) must equal
/// max(unrestrict A, unrestrict B).
template <class T>
CollapseReport<T> collapse_check(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg = {},
                                 Enumeration mode = Enumeration::Required);

/// Random invertible L with L u = u that keeps every effect of unrestrict(s)
/// inside [0,1] on the states: a random perturbation of the identity mixed
/// with the map e -> (e.c) u, where c is the barycenter of the states.
template <class T>
Matrix<T> random_restriction(const GptSystem<T>& s, Rng& rng, const Settings& cfg = {});

}  // namespace gpt
