#include "gpt/verify.hpp"

#include <algorithm>

#include "gpt/lp.hpp"

namespace gpt {
namespace {

template <class T>
T random_scalar(Rng& rng, int lo, int hi, int den)
{
    return convert_scalar<T>(random_rational(rng, lo, hi, den));
}

template <class T>
Vector<T> random_vector(Rng& rng, std::size_t n, int lo, int hi, int den)
{
    Vector<T> v(n);
    for (auto& x : v) {
        x = random_scalar<T>(rng, lo, hi, den);
    }
    return v;
}

template <class T>
bool h_subset(const HPolytope<T>& small, const HPolytope<T>& big, const Settings& cfg)
{
    LinearProgram<T> lp(small, cfg);
    if (!lp.feasible()) {
        return true;
    }
    for (const auto& h : big.inequalities) {
        if (NumTraits<T>::sign(lp.minimize(h.normal).value - h.offset, cfg.eps) < 0) {
            return false;
        }
    }
    for (const auto& h : big.equalities) {
        if (NumTraits<T>::sign(lp.minimize(h.normal).value - h.offset, cfg.eps) != 0 ||
            NumTraits<T>::sign(lp.maximize(h.normal).value - h.offset, cfg.eps) != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

Rational random_rational(Rng& rng, int lo, int hi, int den)
{
    std::uniform_int_distribution<long long> pick(0, static_cast<long long>(hi - lo) * den);
    return Rational(lo) + Rational(pick(rng), den);
}

template <class T>
bool joint_subset(const JointSystem<T>& small, const JointSystem<T>& big, const Settings& cfg)
{
    if (small.enumerated()) {
        return std::all_of(small.vertices().begin(), small.vertices().end(),
                           [&](const Vector<T>& v) { return big.contains(v, cfg); });
    }
    return h_subset(small.constraints(cfg), big.constraints(cfg), cfg);
}

template <class T>
Hierarchy<T> tensor_hierarchy(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg, Enumeration mode)
{
    const auto ua = unrestrict(a, cfg);
    const auto ub = unrestrict(b, cfg);
    Hierarchy<T> h{product_tensor(a, b, cfg), max_tensor(ua, ub, cfg, mode), generalized_max_tensor(a, b, cfg, mode),
                   max_tensor(a, b, cfg, mode)};
    h.product_in_max_unrestricted = joint_subset(h.product, h.max_unrestricted, cfg);
    h.max_unrestricted_in_generalized = joint_subset(h.max_unrestricted, h.generalized, cfg);
    h.generalized_in_max = joint_subset(h.generalized, h.max, cfg);
    return h;
}

template <class T>
std::vector<Vector<T>> sample_vertices(const JointSystem<T>& j, Rng& rng, std::size_t count, const Settings& cfg)
{
    if (j.enumerated()) {
        return j.vertices();
    }
    LinearProgram<T> lp(j.constraints(cfg), cfg);
    if (!lp.feasible()) {
        throw InvalidInput("sample_vertices: joint state space is empty");
    }
    std::vector<Vector<T>> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(lp.maximize(random_vector<T>(rng, j.dim(), -4, 4, 3)).point);
    }
    sort_unique(out, cfg.eps);
    return out;
}

template <class T>
EquivalenceReport<T> conditional_equivalence(const JointSystem<T>& generalized, Rng& rng, std::size_t samples,
                                             const Settings& cfg)
{
    const auto& h = generalized.constraints(cfg);
    const auto anchors = sample_vertices(generalized, rng, 4 * generalized.dim(), cfg);
    std::vector<Vector<T>> eq;
    for (const auto& e : h.equalities) {
        eq.push_back(e.normal);
    }
    const auto free_dirs = nullspace(Matrix<T>::from_rows(eq, generalized.dim()), cfg.eps);

    EquivalenceReport<T> r;
    std::uniform_int_distribution<std::size_t> pick(0, anchors.size() - 1);
    for (std::size_t s = 0; s < samples; ++s) {
        // Start from a mixture of a few anchors.
        const std::size_t parts = std::min<std::size_t>(anchors.size(), 1 + s % 4);
        std::vector<Vector<T>> pts;
        std::vector<T> w;
        T total(0);
        for (std::size_t k = 0; k < parts; ++k) {
            pts.push_back(anchors[pick(rng)]);
            w.push_back(random_scalar<T>(rng, 1, 4, 4));
            total += w.back();
        }
        for (auto& x : w) {
            x /= total;
        }
        const Vector<T> x0 = mix(pts, w, cfg);

        Vector<T> d(generalized.dim(), T(0));
        for (const auto& f : free_dirs) {
            d = d + random_scalar<T>(rng, -2, 2, 5) * f;
        }
        std::optional<T> exit;
        for (const auto& c : h.inequalities) {
            const T nd = dot(c.normal, d);
            if (NumTraits<T>::sign(nd, cfg.eps) >= 0) {
                continue;
            }
            T t = (dot(c.normal, x0) - c.offset) / -nd;
            if (t < T(0)) {
                t = T(0);
            }
            if (!exit || t < *exit) {
                exit = t;
            }
        }
        if (!exit) {
            // d is zero within tolerance; the sample stays at x0.
            exit = T(0);
        }
        T t;
        if (s % 2 == 0) {
            t = *exit * random_scalar<T>(rng, 0, 1, 16);
        } else {
            const T quarter = T(1) / T(4);
            const T step = *exit > quarter ? *exit : quarter;
            t = *exit + step * random_scalar<T>(rng, 0, 1, 16);
            if (t == *exit) {
                t += step / T(32);
            }
        }
        const Vector<T> x = x0 + t * d;

        const bool member = membership_generalized(x, generalized.a, generalized.b, cfg);
        const bool conditional = has_valid_conditionals(x, generalized.a, generalized.b, cfg);
        ++r.samples;
        ++(member ? r.inside : r.outside);
        if (member != conditional) {
            if (r.disagreements == 0) {
                r.counterexample = x;
                r.counterexample_member = member;
            }
            ++r.disagreements;
        }
    }
    return r;
}

template <class T>
CollapseReport<T> collapse_check(const GptSystem<T>& a, const GptSystem<T>& b, const Settings& cfg, Enumeration mode)
{
    CollapseReport<T> r;
    r.applicable = is_unrestricted(a, cfg) || is_unrestricted(b, cfg);
    if (!r.applicable) {
        return r;
    }
    const auto g = generalized_max_tensor(a, b, cfg, mode);
    const auto m = max_tensor(unrestrict(a, cfg), unrestrict(b, cfg), cfg, mode);
    if (g.enumerated()) {
        r.generalized_vertices = g.vertices().size();
    }
    if (m.enumerated()) {
        r.max_vertices = m.vertices().size();
    }
    if (g.enumerated() && m.enumerated()) {
        r.holds = same_point_set(g.vertices(), m.vertices(), cfg.eps);
    } else {
        r.holds = joint_subset(g, m, cfg) && joint_subset(m, g, cfg);
    }
    return r;
}

template <class T>
Matrix<T> random_restriction(const GptSystem<T>& s, Rng& rng, const Settings& cfg)
{
    const std::size_t n = s.dim();
    const auto& u = s.unit();
    const auto full = unrestrict(s, cfg);
    Vector<T> center(n, T(0));
    for (const auto& w : s.states().vertices()) {
        center = center + w;
    }
    center = (T(1) / T(static_cast<long>(s.states().size()))) * center;
    const T uu = dot(u, u);

    for (int attempt = 0; attempt < 64; ++attempt) {
        // A = I + N with N u = 0, so A u = u.
        Matrix<T> a = Matrix<T>::identity(n);
        for (std::size_t i = 0; i < n; ++i) {
            Vector<T> row = random_vector<T>(rng, n, -1, 1, 4);
            const T nu = dot(row, u) / uu;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) += row[j] - nu * u[j];
            }
        }
        T lambda(1);
        for (int halving = 0; halving < 24; ++halving, lambda /= T(2)) {
            Matrix<T> l(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    l(i, j) = lambda * a(i, j) + (T(1) - lambda) * u[i] * center[j];
                }
            }
            if (rank(l, cfg.eps) < n) {
                continue;
            }
            const bool valid = std::all_of(full.effects().vertices().begin(), full.effects().vertices().end(),
                                           [&](const Vector<T>& e) {
                                               const auto le = l * e;
                                               return std::all_of(s.states().vertices().begin(),
                                                                  s.states().vertices().end(), [&](const Vector<T>& w) {
                                                                      const T p = dot(le, w);
                                                                      return NumTraits<T>::sign(p, cfg.eps) >= 0 &&
                                                                             NumTraits<T>::sign(p - T(1), cfg.eps) <= 0;
                                                                  });
                                           });
            if (valid) {
                return l;
            }
        }
    }
    throw Error("random_restriction: no valid map found");
}

#define GPT_INSTANTIATE_VERIFY(T)                                                                                    \
    template bool joint_subset(const JointSystem<T>&, const JointSystem<T>&, const Settings&);                       \
    template Hierarchy<T> tensor_hierarchy(const GptSystem<T>&, const GptSystem<T>&, const Settings&, Enumeration);  \
    template std::vector<Vector<T>> sample_vertices(const JointSystem<T>&, Rng&, std::size_t, const Settings&);      \
    template EquivalenceReport<T> conditional_equivalence(const JointSystem<T>&, Rng&, std::size_t, const Settings&); \
    template CollapseReport<T> collapse_check(const GptSystem<T>&, const GptSystem<T>&, const Settings&,             \
                                              Enumeration);                                                          \
    template Matrix<T> random_restriction(const GptSystem<T>&, Rng&, const Settings&);

GPT_INSTANTIATE_VERIFY(Rational)
GPT_INSTANTIATE_VERIFY(double)

#undef GPT_INSTANTIATE_VERIFY

}  // namespace gpt
