#pragma once

#include <cstddef>
#include <vector>

#include "gpt/cones.hpp"

namespace gpt {

template <class T>
struct LpOptimum {
    T value;
    /// An optimal vertex of the polytope.
    Vector<T> point;
};

/// Simplex method on a bounded H-polytope, walking vertices with Bland's
/// rule. Successive solves start from the previous optimal vertex.
template <class T>
class LinearProgram {
public:
    explicit LinearProgram(const HPolytope<T>& p, const Settings& cfg = {});

    bool feasible() const { return feasible_; }
    std::size_t dim() const { return dim_; }

    /// Throws InvalidInput on an empty polytope, UnboundedError when the
    /// polytope is unbounded.
    LpOptimum<T> maximize(const Vector<T>& objective);
    LpOptimum<T> minimize(const Vector<T>& objective);

    /// Number of pivots performed so far.
    std::size_t pivots() const { return pivots_; }

    /// Simplex on {y : rows y >= rhs} in reduced coordinates.
    struct Core {
        std::vector<Vector<T>> rows;
        std::vector<T> rhs;
        std::size_t k = 0;
        double eps = 1e-9;

        Vector<T> y;
        std::vector<T> slack;
        std::vector<std::size_t> basis;  // row index per basic position
        std::vector<Vector<T>> dirs;     // dirs[j]: rows[basis[l]].dirs[j] = delta_lj
        std::vector<char> in_basis;
        std::size_t pivots = 0;

        /// Moves from a feasible point to a vertex.
        void start_at(Vector<T> point);
        /// Returns the optimal value of c.y from the current vertex.
        T maximize(const Vector<T>& c);
    };

private:
    std::size_t dim_ = 0;
    bool feasible_ = false;
    Settings cfg_;
    Vector<T> origin_;
    std::vector<Vector<T>> basis_;  // parametrization x = origin + sum y_j basis_j
    Core core_;
    std::size_t pivots_ = 0;
};

}  // namespace gpt
