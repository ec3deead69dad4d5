#include "gpt/detail/double_description.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

namespace gpt::detail {
namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

std::size_t popcount_and(const Bits& a, const Bits& b, Bits& out)
{
    std::size_t n = 0;
    for (std::size_t w = 0; w < a.size(); ++w) {
        out[w] = a[w] & b[w];
        n += static_cast<std::size_t>(std::popcount(out[w]));
    }
    return n;
}

bool is_superset(const Bits& big, const Bits& small)
{
    for (std::size_t w = 0; w < big.size(); ++w) {
        if ((small[w] & ~big[w]) != 0) {
            return false;
        }
    }
    return true;
}

template <class R>
struct RingOps;

template <>
struct RingOps<Integer> {
    static void normalize(Vector<Integer>& v)
    {
        Integer g = 0;
        for (const auto& x : v) {
            if (!x.is_zero()) {
                g = g.is_zero() ? Integer(boost::multiprecision::abs(x)) : Integer(boost::multiprecision::gcd(g, x));
                if (g == 1) {
                    return;
                }
            }
        }
        if (g > 1) {
            for (auto& x : v) {
                x /= g;
            }
        }
    }
    static int sign(const Integer& x, double) { return x.sign(); }

    static Vector<Integer> from_field(const Vector<Rational>& v)
    {
        Integer l = 1;
        for (const auto& x : v) {
            l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
        }
        Vector<Integer> r;
        r.reserve(v.size());
        for (const auto& x : v) {
            r.push_back(Integer(boost::multiprecision::numerator(x)) * (l / Integer(boost::multiprecision::denominator(x))));
        }
        normalize(r);
        return r;
    }

    static Vector<Rational> to_field(const Vector<Integer>& v)
    {
        Vector<Rational> r;
        r.reserve(v.size());
        for (const auto& x : v) {
            r.emplace_back(x);
        }
        return r;
    }
};

template <>
struct RingOps<double> {
    static void normalize(Vector<double>& v)
    {
        const double n = norm(v);
        if (n > 0.0) {
            for (auto& x : v) {
                x /= n;
            }
        }
    }
    static int sign(double x, double eps) { return NumTraits<double>::sign(x, eps); }
    static Vector<double> from_field(Vector<double> v)
    {
        normalize(v);
        return v;
    }
    static Vector<double> to_field(const Vector<double>& v) { return v; }
};

template <class R>
R ring_dot(const Vector<R>& a, const Vector<R>& b)
{
    R s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

template <class R>
struct Ray {
    Vector<R> v;
    Bits zeros;
};

/// Core iteration on a pointed cone {y : rows y >= 0} of full rank d.
/// `initial` indexes d linearly independent rows whose inverse columns are
/// `initial_rays`.
template <class R>
std::vector<Vector<R>> run_double_description(const std::vector<Vector<R>>& rows,
                                               const std::vector<std::size_t>& initial,
                                               std::vector<Vector<R>> initial_rays, std::size_t d,
                                               const Settings& cfg)
{
    const std::size_t m = rows.size();
    const std::size_t words = (m + 63) / 64;

    std::vector<Ray<R>> rays;
    rays.reserve(initial_rays.size());
    for (std::size_t j = 0; j < initial_rays.size(); ++j) {
        Ray<R> r{std::move(initial_rays[j]), Bits(words, 0)};
        for (std::size_t k = 0; k < initial.size(); ++k) {
            if (k != j) {
                set_bit(r.zeros, initial[k]);
            }
        }
        rays.push_back(std::move(r));
    }

    std::vector<bool> processed(m, false);
    for (auto i : initial) {
        processed[i] = true;
    }

    const std::size_t need = d >= 2 ? d - 2 : 0;
    std::vector<R> vals;
    std::vector<std::vector<std::size_t>> tight_on(m);
    Bits common(words, 0);

    for (std::size_t k = 0; k < m; ++k) {
        if (processed[k]) {
            continue;
        }
        processed[k] = true;
        const auto& a = rows[k];

        vals.resize(rays.size());
        std::vector<std::size_t> pos;
        std::vector<std::size_t> neg;
        std::vector<int> signs(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            vals[r] = ring_dot(a, rays[r].v);
            signs[r] = RingOps<R>::sign(vals[r], cfg.eps);
            if (signs[r] > 0) {
                pos.push_back(r);
            } else if (signs[r] < 0) {
                neg.push_back(r);
            }
        }

        if (neg.empty()) {
            for (std::size_t r = 0; r < rays.size(); ++r) {
                if (signs[r] == 0) {
                    set_bit(rays[r].zeros, k);
                }
            }
            continue;
        }

        // Per-row lists of tight rays bound the superset search in the
        // combinatorial adjacency test.
        for (auto& l : tight_on) {
            l.clear();
        }
        for (std::size_t r = 0; r < rays.size(); ++r) {
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t bits = rays[r].zeros[w];
                while (bits != 0) {
                    const int b = std::countr_zero(bits);
                    tight_on[w * 64 + static_cast<std::size_t>(b)].push_back(r);
                    bits &= bits - 1;
                }
            }
        }

        std::vector<Ray<R>> created;
        for (auto p : pos) {
            for (auto n : neg) {
                const std::size_t shared = popcount_and(rays[p].zeros, rays[n].zeros, common);
                if (shared < need) {
                    continue;
                }
                std::size_t best_row = m;
                std::size_t best_len = std::numeric_limits<std::size_t>::max();
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t bits = common[w];
                    while (bits != 0) {
                        const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                        if (tight_on[j].size() < best_len) {
                            best_len = tight_on[j].size();
                            best_row = j;
                        }
                        bits &= bits - 1;
                    }
                }
                bool adjacent = true;
                if (best_row < m) {
                    for (auto r : tight_on[best_row]) {
                        if (r != p && r != n && is_superset(rays[r].zeros, common)) {
                            adjacent = false;
                            break;
                        }
                    }
                } else if (rays.size() > 2) {
                    // Empty common zero set only happens for d <= 2.
                    for (std::size_t r = 0; r < rays.size(); ++r) {
                        if (r != p && r != n) {
                            adjacent = false;
                            break;
                        }
                    }
                }
                if (!adjacent) {
                    continue;
                }
                Vector<R> v(d);
                const R& vp = vals[p];
                const R nn = -vals[n];
                for (std::size_t i = 0; i < d; ++i) {
                    v[i] = vp * rays[n].v[i] + nn * rays[p].v[i];
                }
                RingOps<R>::normalize(v);
                Ray<R> ray{std::move(v), common};
                set_bit(ray.zeros, k);
                created.push_back(std::move(ray));
            }
        }

        std::vector<Ray<R>> next;
        next.reserve(rays.size() - neg.size() + created.size());
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (signs[r] > 0) {
                next.push_back(std::move(rays[r]));
            } else if (signs[r] == 0) {
                set_bit(rays[r].zeros, k);
                next.push_back(std::move(rays[r]));
            }
        }
        for (auto& c : created) {
            next.push_back(std::move(c));
        }
        rays = std::move(next);
        if (cfg.vertex_budget != 0 && rays.size() > cfg.vertex_budget) {
            throw BudgetExceeded("double description: " + std::to_string(rays.size()) +
                                 " intermediate rays exceed the budget of " + std::to_string(cfg.vertex_budget));
        }
    }

    std::vector<Vector<R>> out;
    out.reserve(rays.size());
    for (auto& r : rays) {
        out.push_back(std::move(r.v));
    }
    return out;
}

template <class T>
Matrix<T> rows_matrix(const std::vector<Vector<T>>& rows, std::size_t dim)
{
    return Matrix<T>::from_rows(rows, dim);
}

}  // namespace

template <class T>
ConeGenerators<T> enumerate_cone(const std::vector<Vector<T>>& inequalities,
                                 const std::vector<Vector<T>>& equalities, std::size_t dim, const Settings& cfg)
{
    using R = typename NumTraits<T>::Ring;
    const double eps = cfg.eps;
    for (const auto& r : inequalities) {
        if (r.size() != dim) {
            throw InvalidInput("enumerate_cone: inequality has wrong dimension");
        }
    }
    for (const auto& r : equalities) {
        if (r.size() != dim) {
            throw InvalidInput("enumerate_cone: equality has wrong dimension");
        }
    }

    ConeGenerators<T> out;

    // Lineality space, canonical basis.
    std::vector<Vector<T>> all_rows = inequalities;
    all_rows.insert(all_rows.end(), equalities.begin(), equalities.end());
    std::vector<std::size_t> lin_pivots;
    {
        auto lin = nullspace(rows_matrix(all_rows, dim), eps);
        if (!lin.empty()) {
            const auto ech = reduced_echelon(Matrix<T>::from_rows(lin, dim), eps, true);
            for (std::size_t i = 0; i < ech.reduced.rows(); ++i) {
                // Lines have no orientation: first nonzero entry made positive.
                auto l = canonical_ray(ech.reduced.row_vector(i), eps);
                const auto first = std::find_if(l.begin(), l.end(), [](const T& x) { return x != T(0); });
                if (first != l.end() && *first < 0) {
                    for (auto& x : l) {
                        x = -x;
                    }
                }
                out.lineality.push_back(std::move(l));
            }
            lin_pivots = ech.pivots;
            sort_unique(out.lineality, eps);
        }
    }

    // Section complementary to the lineality space, inside the equalities.
    std::vector<Vector<T>> section_rows = equalities;
    for (auto p : lin_pivots) {
        Vector<T> e(dim, T(0));
        e[p] = T(1);
        section_rows.push_back(std::move(e));
    }
    std::vector<Vector<T>> basis;
    if (section_rows.empty()) {
        for (std::size_t i = 0; i < dim; ++i) {
            Vector<T> e(dim, T(0));
            e[i] = T(1);
            basis.push_back(std::move(e));
        }
    } else {
        basis = nullspace(rows_matrix(section_rows, dim), eps);
    }
    const std::size_t d = basis.size();
    if (d == 0) {
        return out;
    }

    // Inequalities in section coordinates y, x = sum_j y_j basis_j.
    std::vector<Vector<T>> reduced;
    reduced.reserve(inequalities.size());
    for (const auto& a : inequalities) {
        Vector<T> r(d);
        for (std::size_t j = 0; j < d; ++j) {
            r[j] = dot(a, basis[j]);
        }
        if (is_zero_vector(r, eps)) {
            continue;
        }
        reduced.push_back(canonical_ray(std::move(r), eps));
    }
    sort_unique(reduced, eps);

    // Greedy choice of d independent rows, in lexicographic order.
    std::vector<std::size_t> initial;
    {
        std::vector<Vector<T>> echelon;
        std::vector<std::size_t> piv;
        for (std::size_t i = 0; i < reduced.size() && initial.size() < d; ++i) {
            Vector<T> v = reduced[i];
            for (std::size_t k = 0; k < echelon.size(); ++k) {
                const T f = v[piv[k]];
                if (!NumTraits<T>::is_zero(f, 0.0)) {
                    for (std::size_t j = 0; j < d; ++j) {
                        v[j] -= f * echelon[k][j];
                    }
                }
            }
            std::size_t p = d;
            double best = eps;
            for (std::size_t j = 0; j < d; ++j) {
                if constexpr (is_exact_v<T>) {
                    if (!v[j].is_zero()) {
                        p = j;
                        break;
                    }
                } else if (std::abs(v[j]) > best) {
                    best = std::abs(v[j]);
                    p = j;
                }
            }
            if (p == d) {
                continue;
            }
            const T s = v[p];
            for (auto& x : v) {
                x /= s;
            }
            for (std::size_t k = 0; k < echelon.size(); ++k) {
                const T f = echelon[k][p];
                if (!NumTraits<T>::is_zero(f, 0.0)) {
                    for (std::size_t j = 0; j < d; ++j) {
                        echelon[k][j] -= f * v[j];
                    }
                }
            }
            echelon.push_back(std::move(v));
            piv.push_back(p);
            initial.push_back(i);
        }
    }
    if (initial.size() < d) {
        throw InvalidInput("enumerate_cone: section is not pointed (internal rank defect)");
    }

    Matrix<T> sub(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            sub(i, j) = reduced[initial[i]][j];
        }
    }
    const Matrix<T> inv = inverse(sub, eps * 1e-3);

    std::vector<Vector<R>> ring_rows;
    ring_rows.reserve(reduced.size());
    for (const auto& r : reduced) {
        ring_rows.push_back(RingOps<R>::from_field(r));
    }
    std::vector<Vector<R>> init_rays;
    for (std::size_t j = 0; j < d; ++j) {
        Vector<T> col(d);
        for (std::size_t i = 0; i < d; ++i) {
            col[i] = inv(i, j);
        }
        init_rays.push_back(RingOps<R>::from_field(col));
    }

    auto ys = run_double_description<R>(ring_rows, initial, std::move(init_rays), d, cfg);

    out.rays.reserve(ys.size());
    for (const auto& y : ys) {
        const Vector<T> yf = RingOps<R>::to_field(y);
        Vector<T> x(dim, T(0));
        for (std::size_t j = 0; j < d; ++j) {
            if (NumTraits<T>::is_zero(yf[j], 0.0)) {
                continue;
            }
            for (std::size_t i = 0; i < dim; ++i) {
                x[i] += yf[j] * basis[j][i];
            }
        }
        out.rays.push_back(canonical_ray(std::move(x), eps));
    }
    sort_unique(out.rays, eps);
    return out;
}

template ConeGenerators<Rational> enumerate_cone(const std::vector<Vector<Rational>>&,
                                                 const std::vector<Vector<Rational>>&, std::size_t,
                                                 const Settings&);
template ConeGenerators<double> enumerate_cone(const std::vector<Vector<double>>&, const std::vector<Vector<double>>&,
                                               std::size_t, const Settings&);

}  // namespace gpt::detail
