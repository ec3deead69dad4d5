#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "gpt/linalg.hpp"
#include "gpt/scalar.hpp"

namespace gpt {

/// A finitely generated cone. Canonical form: every ray scaled by
/// canonical_ray, duplicates removed, sorted lexicographically. A lineality
/// direction l appears as the pair l, -l.
template <class T>
class ConeV {
public:
    ConeV(std::size_t dim, std::vector<Vector<T>> rays, const Settings& cfg = {});

    std::size_t dim() const { return dim_; }
    const std::vector<Vector<T>>& rays() const { return rays_; }

    friend bool operator==(const ConeV&, const ConeV&) = default;

private:
    std::size_t dim_;
    std::vector<Vector<T>> rays_;
};

/// {x : a.x >= 0 for every inequality a, b.x = 0 for every equality b}.
template <class T>
struct ConeH {
    std::size_t dim = 0;
    std::vector<Vector<T>> inequalities;
    std::vector<Vector<T>> equalities;

    bool contains(const Vector<T>& x, const Settings& cfg = {}) const;
};

/// normal.x >= offset (inequality) or normal.x == offset (equality).
template <class T>
struct Halfspace {
    Vector<T> normal;
    T offset;

    friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

template <class T>
struct HPolytope {
    std::size_t dim = 0;
    std::vector<Halfspace<T>> inequalities;
    std::vector<Halfspace<T>> equalities;

    bool contains(const Vector<T>& x, const Settings& cfg = {}) const;
    /// Homogenized cone {(x, t) : normal.x - offset*t >= 0, t >= 0}.
    ConeH<T> homogenize() const;
};

/// Bounded polytope held by its extreme points; an inequality description
/// is computed on first use and cached.
template <class T>
class Polytope {
public:
    /// Drops interior and repeated points.
    static Polytope from_points(std::size_t dim, std::vector<Vector<T>> points, const Settings& cfg = {});
    /// Enumerates vertices; `h` is kept as the constraint description.
    static Polytope from_inequalities(HPolytope<T> h, const Settings& cfg = {});
    /// Caller guarantees `points` are exactly the extreme points.
    static Polytope from_extreme_points(std::size_t dim, std::vector<Vector<T>> points, const Settings& cfg = {});
    static Polytope from_parts(std::vector<Vector<T>> vertices, HPolytope<T> h, const Settings& cfg = {});

    std::size_t dim() const { return dim_; }
    const std::vector<Vector<T>>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    /// Valid (not necessarily minimal) inequality description.
    const HPolytope<T>& constraints(const Settings& cfg = {}) const;
    bool contains(const Vector<T>& x, const Settings& cfg = {}) const;
    /// Every vertex of `this` lies in `other`.
    bool subset_of(const Polytope& other, const Settings& cfg = {}) const;
    bool same_vertices(const Polytope& other, const Settings& cfg = {}) const;

private:
    struct Cache {
        std::once_flag once;
        std::optional<HPolytope<T>> h;
    };

    Polytope(std::size_t dim, std::vector<Vector<T>> vertices);

    std::size_t dim_ = 0;
    std::vector<Vector<T>> vertices_;
    std::shared_ptr<Cache> cache_;
};

enum class Kind { Cone, Polytope };

/// Extreme rays of {a : a.r >= 0 for every ray r of c}.
template <class T>
ConeV<T> dual_cone(const ConeV<T>& c, const Settings& cfg = {});

/// Generators of an H-cone (pointed rays plus +-lineality).
template <class T>
ConeV<T> vertex_enumeration(const ConeH<T>& h, const Settings& cfg = {});

/// Vertices of an H-polytope, sorted lexicographically. Empty if infeasible;
/// throws UnboundedError if the feasible set is unbounded.
template <class T>
std::vector<Vector<T>> vertex_enumeration(const HPolytope<T>& h, const Settings& cfg = {});

/// Minimal description of cone(rays): inequalities are the extreme rays of
/// the dual cone reduced modulo the equalities, equalities in reduced
/// echelon form.
template <class T>
ConeH<T> facet_enumeration(const std::vector<Vector<T>>& rays, std::size_t dim, const Settings& cfg = {});

/// Minimal description of conv(points).
template <class T>
HPolytope<T> facet_enumeration_polytope(const std::vector<Vector<T>>& points, std::size_t dim,
                                        const Settings& cfg = {});

template <class T>
ConeH<T> intersect(const ConeH<T>& a, const ConeH<T>& b);

template <class T>
HPolytope<T> intersect(const HPolytope<T>& a, const HPolytope<T>& b);

template <class T>
Polytope<T> intersect(const Polytope<T>& a, const Polytope<T>& b, const Settings& cfg = {});

template <class T>
ConeV<T> intersect(const ConeV<T>& a, const ConeV<T>& b, const Settings& cfg = {});

template <class T>
bool member(const ConeH<T>& c, const Vector<T>& x, const Settings& cfg = {})
{
    return c.contains(x, cfg);
}

template <class T>
bool member(const HPolytope<T>& p, const Vector<T>& x, const Settings& cfg = {})
{
    return p.contains(x, cfg);
}

template <class T>
bool member(const Polytope<T>& p, const Vector<T>& x, const Settings& cfg = {})
{
    return p.contains(x, cfg);
}

template <class To, class From>
Polytope<To> convert_polytope(const Polytope<From>& p, const Settings& cfg = {});

}  // namespace gpt
