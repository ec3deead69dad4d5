#include "gpt/cones.hpp"

#include <utility>

#include "gpt/detail/double_description.hpp"

namespace gpt {
namespace {

template <class T>
std::vector<Vector<T>> with_lineality(std::vector<Vector<T>> rays, const std::vector<Vector<T>>& lineality)
{
    for (const auto& l : lineality) {
        rays.push_back(l);
        Vector<T> neg(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) {
            neg[i] = -l[i];
        }
        rays.push_back(std::move(neg));
    }
    return rays;
}

template <class T>
bool slack_ok(const T& value, double row_norm, double point_norm, const Settings& cfg)
{
    if constexpr (is_exact_v<T>) {
        return value.sign() >= 0;
    } else {
        return value >= -cfg.eps * row_norm * point_norm;
    }
}

template <class T>
bool equality_ok(const T& value, double row_norm, double point_norm, const Settings& cfg)
{
    if constexpr (is_exact_v<T>) {
        return value.is_zero();
    } else {
        return std::abs(value) <= cfg.eps * row_norm * point_norm;
    }
}

template <class T>
Vector<T> homogeneous_point(const Vector<T>& x)
{
    Vector<T> h = x;
    h.push_back(T(1));
    return h;
}

template <class T>
Vector<T> homogeneous_row(const Halfspace<T>& h)
{
    Vector<T> r = h.normal;
    r.push_back(-h.offset);
    return r;
}

template <class T>
Halfspace<T> dehomogenize_row(const Vector<T>& r)
{
    Halfspace<T> h;
    h.normal.assign(r.begin(), r.end() - 1);
    h.offset = -r.back();
    return h;
}

template <class T>
void check_dims(const std::vector<Vector<T>>& vs, std::size_t dim, const char* what)
{
    for (const auto& v : vs) {
        if (v.size() != dim) {
            throw InvalidInput(std::string(what) + ": dimension mismatch");
        }
    }
}

}  // namespace

template <class T>
ConeV<T>::ConeV(std::size_t dim, std::vector<Vector<T>> rays, const Settings& cfg) : dim_(dim)
{
    check_dims(rays, dim, "ConeV");
    for (auto& r : rays) {
        if (is_zero_vector(r, cfg.eps)) {
            continue;
        }
        rays_.push_back(canonical_ray(std::move(r), cfg.eps));
    }
    sort_unique(rays_, cfg.eps);
}

template <class T>
bool ConeH<T>::contains(const Vector<T>& x, const Settings& cfg) const
{
    if (x.size() != dim) {
        throw InvalidInput("ConeH::contains: dimension mismatch");
    }
    const double xn = is_exact_v<T> ? 1.0 : norm(x);
    for (const auto& a : inequalities) {
        if (!slack_ok(dot(a, x), is_exact_v<T> ? 1.0 : norm(a), xn, cfg)) {
            return false;
        }
    }
    for (const auto& b : equalities) {
        if (!equality_ok(dot(b, x), is_exact_v<T> ? 1.0 : norm(b), xn, cfg)) {
            return false;
        }
    }
    return true;
}

template <class T>
bool HPolytope<T>::contains(const Vector<T>& x, const Settings& cfg) const
{
    if (x.size() != dim) {
        throw InvalidInput("HPolytope::contains: dimension mismatch");
    }
    const auto hx = homogeneous_point(x);
    const double xn = is_exact_v<T> ? 1.0 : norm(hx);
    for (const auto& h : inequalities) {
        const auto r = homogeneous_row(h);
        if (!slack_ok(dot(r, hx), is_exact_v<T> ? 1.0 : norm(r), xn, cfg)) {
            return false;
        }
    }
    for (const auto& h : equalities) {
        const auto r = homogeneous_row(h);
        if (!equality_ok(dot(r, hx), is_exact_v<T> ? 1.0 : norm(r), xn, cfg)) {
            return false;
        }
    }
    return true;
}

template <class T>
ConeH<T> HPolytope<T>::homogenize() const
{
    ConeH<T> c;
    c.dim = dim + 1;
    for (const auto& h : inequalities) {
        if (h.normal.size() != dim) {
            throw InvalidInput("HPolytope: inequality has wrong dimension");
        }
        c.inequalities.push_back(homogeneous_row(h));
    }
    Vector<T> t(dim + 1, T(0));
    t.back() = T(1);
    c.inequalities.push_back(std::move(t));
    for (const auto& h : equalities) {
        if (h.normal.size() != dim) {
            throw InvalidInput("HPolytope: equality has wrong dimension");
        }
        c.equalities.push_back(homogeneous_row(h));
    }
    return c;
}

template <class T>
Polytope<T>::Polytope(std::size_t dim, std::vector<Vector<T>> vertices)
    : dim_(dim), vertices_(std::move(vertices)), cache_(std::make_shared<Cache>())
{
}

template <class T>
Polytope<T> Polytope<T>::from_points(std::size_t dim, std::vector<Vector<T>> points, const Settings& cfg)
{
    check_dims(points, dim, "Polytope::from_points");
    for (auto& p : points) {
        p = snap(std::move(p), cfg.eps);
    }
    sort_unique(points, cfg.eps);
    if (points.empty()) {
        return Polytope(dim, {});
    }
    std::vector<Vector<T>> hom;
    hom.reserve(points.size());
    for (const auto& p : points) {
        hom.push_back(homogeneous_point(p));
    }
    const ConeH<T> facets = facet_enumeration(hom, dim + 1, cfg);

    // A point is a vertex iff its tight rows (with the equalities) have rank dim.
    std::vector<Vector<T>> extreme;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<Vector<T>> tight = facets.equalities;
        const double hn = is_exact_v<T> ? 1.0 : norm(hom[i]);
        for (const auto& a : facets.inequalities) {
            if (equality_ok(dot(a, hom[i]), is_exact_v<T> ? 1.0 : norm(a), hn, cfg)) {
                tight.push_back(a);
            }
        }
        if (!tight.empty() && rank(Matrix<T>::from_rows(tight, dim + 1), cfg.eps) == dim) {
            extreme.push_back(points[i]);
        } else if (tight.empty() && dim == 0) {
            extreme.push_back(points[i]);
        }
    }

    HPolytope<T> h;
    h.dim = dim;
    for (const auto& a : facets.inequalities) {
        h.inequalities.push_back(dehomogenize_row(a));
    }
    for (const auto& b : facets.equalities) {
        h.equalities.push_back(dehomogenize_row(b));
    }
    return from_parts(std::move(extreme), std::move(h), cfg);
}

template <class T>
Polytope<T> Polytope<T>::from_inequalities(HPolytope<T> h, const Settings& cfg)
{
    auto verts = vertex_enumeration(h, cfg);
    return from_parts(std::move(verts), std::move(h), cfg);
}

template <class T>
Polytope<T> Polytope<T>::from_extreme_points(std::size_t dim, std::vector<Vector<T>> points, const Settings& cfg)
{
    check_dims(points, dim, "Polytope::from_extreme_points");
    for (auto& p : points) {
        p = snap(std::move(p), cfg.eps);
    }
    sort_unique(points, cfg.eps);
    return Polytope(dim, std::move(points));
}

template <class T>
Polytope<T> Polytope<T>::from_parts(std::vector<Vector<T>> vertices, HPolytope<T> h, const Settings& cfg)
{
    const std::size_t dim = h.dim;
    Polytope p = from_extreme_points(dim, std::move(vertices), cfg);
    std::call_once(p.cache_->once, [&] { p.cache_->h = std::move(h); });
    return p;
}

template <class T>
const HPolytope<T>& Polytope<T>::constraints(const Settings& cfg) const
{
    std::call_once(cache_->once, [&] { cache_->h = facet_enumeration_polytope(vertices_, dim_, cfg); });
    return *cache_->h;
}

template <class T>
bool Polytope<T>::contains(const Vector<T>& x, const Settings& cfg) const
{
    if (vertices_.empty()) {
        return false;
    }
    return constraints(cfg).contains(x, cfg);
}

template <class T>
bool Polytope<T>::subset_of(const Polytope& other, const Settings& cfg) const
{
    for (const auto& v : vertices_) {
        if (!other.contains(v, cfg)) {
            return false;
        }
    }
    return true;
}

template <class T>
bool Polytope<T>::same_vertices(const Polytope& other, const Settings& cfg) const
{
    return dim_ == other.dim_ && same_point_set(vertices_, other.vertices_, cfg.eps * 1e3);
}

template <class T>
ConeV<T> dual_cone(const ConeV<T>& c, const Settings& cfg)
{
    if (c.dim() == 0) {
        throw InvalidInput("dual_cone: dimension must be positive");
    }
    const auto gens = detail::enumerate_cone<T>(c.rays(), {}, c.dim(), cfg);
    return ConeV<T>(c.dim(), with_lineality(gens.rays, gens.lineality), cfg);
}

template <class T>
ConeV<T> vertex_enumeration(const ConeH<T>& h, const Settings& cfg)
{
    const auto gens = detail::enumerate_cone(h.inequalities, h.equalities, h.dim, cfg);
    return ConeV<T>(h.dim, with_lineality(gens.rays, gens.lineality), cfg);
}

template <class T>
std::vector<Vector<T>> vertex_enumeration(const HPolytope<T>& h, const Settings& cfg)
{
    const ConeH<T> c = h.homogenize();
    const auto gens = detail::enumerate_cone(c.inequalities, c.equalities, c.dim, cfg);
    std::vector<Vector<T>> verts;
    bool recession = !gens.lineality.empty();
    for (const auto& r : gens.rays) {
        const T& t = r.back();
        if (NumTraits<T>::sign(t, cfg.eps) > 0) {
            Vector<T> v(r.begin(), r.end() - 1);
            for (auto& x : v) {
                x /= t;
            }
            verts.push_back(snap(std::move(v), cfg.eps));
        } else {
            recession = true;
        }
    }
    if (verts.empty()) {
        return verts;
    }
    if (recession) {
        throw UnboundedError("vertex_enumeration: polytope is unbounded");
    }
    sort_unique(verts, cfg.eps);
    return verts;
}

template <class T>
ConeH<T> facet_enumeration(const std::vector<Vector<T>>& rays, std::size_t dim, const Settings& cfg)
{
    if (rays.empty()) {
        throw InvalidInput("facet_enumeration: empty input");
    }
    check_dims(rays, dim, "facet_enumeration");
    const auto gens = detail::enumerate_cone<T>(rays, {}, dim, cfg);
    ConeH<T> h;
    h.dim = dim;
    h.inequalities = gens.rays;
    h.equalities = gens.lineality;
    return h;
}

template <class T>
HPolytope<T> facet_enumeration_polytope(const std::vector<Vector<T>>& points, std::size_t dim, const Settings& cfg)
{
    if (points.empty()) {
        throw InvalidInput("facet_enumeration: empty input");
    }
    check_dims(points, dim, "facet_enumeration");
    std::vector<Vector<T>> hom;
    hom.reserve(points.size());
    for (const auto& p : points) {
        hom.push_back(homogeneous_point(p));
    }
    const ConeH<T> c = facet_enumeration(hom, dim + 1, cfg);
    HPolytope<T> h;
    h.dim = dim;
    for (const auto& a : c.inequalities) {
        h.inequalities.push_back(dehomogenize_row(a));
    }
    for (const auto& b : c.equalities) {
        h.equalities.push_back(dehomogenize_row(b));
    }
    return h;
}

template <class T>
ConeH<T> intersect(const ConeH<T>& a, const ConeH<T>& b)
{
    if (a.dim != b.dim) {
        throw InvalidInput("intersect: dimension mismatch");
    }
    ConeH<T> r = a;
    r.inequalities.insert(r.inequalities.end(), b.inequalities.begin(), b.inequalities.end());
    r.equalities.insert(r.equalities.end(), b.equalities.begin(), b.equalities.end());
    return r;
}

template <class T>
HPolytope<T> intersect(const HPolytope<T>& a, const HPolytope<T>& b)
{
    if (a.dim != b.dim) {
        throw InvalidInput("intersect: dimension mismatch");
    }
    HPolytope<T> r = a;
    r.inequalities.insert(r.inequalities.end(), b.inequalities.begin(), b.inequalities.end());
    r.equalities.insert(r.equalities.end(), b.equalities.begin(), b.equalities.end());
    return r;
}

template <class T>
Polytope<T> intersect(const Polytope<T>& a, const Polytope<T>& b, const Settings& cfg)
{
    return Polytope<T>::from_inequalities(intersect(a.constraints(cfg), b.constraints(cfg)), cfg);
}

template <class T>
ConeV<T> intersect(const ConeV<T>& a, const ConeV<T>& b, const Settings& cfg)
{
    if (a.dim() != b.dim()) {
        throw InvalidInput("intersect: dimension mismatch");
    }
    return vertex_enumeration(intersect(facet_enumeration(a.rays(), a.dim(), cfg), facet_enumeration(b.rays(), b.dim(), cfg)),
                              cfg);
}

template <class To, class From>
Polytope<To> convert_polytope(const Polytope<From>& p, const Settings& cfg)
{
    std::vector<Vector<To>> vs;
    vs.reserve(p.size());
    for (const auto& v : p.vertices()) {
        vs.push_back(convert_vector<To>(v));
    }
    return Polytope<To>::from_extreme_points(p.dim(), std::move(vs), cfg);
}

#define GPT_INSTANTIATE_CONES(T)                                                                             \
    template class ConeV<T>;                                                                                 \
    template struct ConeH<T>;                                                                                \
    template struct HPolytope<T>;                                                                            \
    template class Polytope<T>;                                                                              \
    template ConeV<T> dual_cone(const ConeV<T>&, const Settings&);                                           \
    template ConeV<T> vertex_enumeration(const ConeH<T>&, const Settings&);                                  \
    template std::vector<Vector<T>> vertex_enumeration(const HPolytope<T>&, const Settings&);               \
    template ConeH<T> facet_enumeration(const std::vector<Vector<T>>&, std::size_t, const Settings&);        \
    template HPolytope<T> facet_enumeration_polytope(const std::vector<Vector<T>>&, std::size_t,             \
                                                     const Settings&);                                       \
    template ConeH<T> intersect(const ConeH<T>&, const ConeH<T>&);                                           \
    template HPolytope<T> intersect(const HPolytope<T>&, const HPolytope<T>&);                               \
    template Polytope<T> intersect(const Polytope<T>&, const Polytope<T>&, const Settings&);                 \
    template ConeV<T> intersect(const ConeV<T>&, const ConeV<T>&, const Settings&);

GPT_INSTANTIATE_CONES(Rational)
GPT_INSTANTIATE_CONES(double)

template Polytope<double> convert_polytope(const Polytope<Rational>&, const Settings&);
template Polytope<Rational> convert_polytope(const Polytope<Rational>&, const Settings&);
template Polytope<double> convert_polytope(const Polytope<double>&, const Settings&);

#undef GPT_INSTANTIATE_CONES

}  // namespace gpt
