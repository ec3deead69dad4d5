#pragma once

#include <cstddef>
#include <vector>

#include "gpt/linalg.hpp"
#include "gpt/scalar.hpp"

namespace gpt::detail {

template <class T>
struct ConeGenerators {
    /// Extreme rays of the cone cut by the complement section
    /// {x : x_p = 0 for every pivot p of the lineality basis}; canonical, sorted.
    std::vector<Vector<T>> rays;
    /// Lineality basis in reduced echelon form with pivots taken from the right.
    std::vector<Vector<T>> lineality;
};

/// Double description method for {x : A x >= 0, E x = 0}.
template <class T>
ConeGenerators<T> enumerate_cone(const std::vector<Vector<T>>& inequalities,
                                 const std::vector<Vector<T>>& equalities, std::size_t dim, const Settings& cfg);

}  // namespace gpt::detail
