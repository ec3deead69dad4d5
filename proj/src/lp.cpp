#include "gpt/lp.hpp"

#include <algorithm>
#include <string>

namespace gpt {
namespace {

template <class T>
bool positive(const T& x, double eps)
{
    return NumTraits<T>::sign(x, eps) > 0;
}

template <class T>
bool negative(const T& x, double eps)
{
    return NumTraits<T>::sign(x, eps) < 0;
}

}  // namespace

template <class T>
void LinearProgram<T>::Core::start_at(Vector<T> point)
{
    const std::size_t m = rows.size();
    y = std::move(point);
    slack.assign(m, T(0));
    for (std::size_t i = 0; i < m; ++i) {
        slack[i] = dot(rows[i], y) - rhs[i];
        if (!is_exact_v<T> && NumTraits<T>::sign(slack[i], eps) == 0) {
            slack[i] = T(0);
        }
    }
    basis.clear();
    in_basis.assign(m, 0);

    std::vector<Vector<T>> tight;
    auto try_add = [&](std::size_t i) {
        tight.push_back(rows[i]);
        if (rank(Matrix<T>::from_rows(tight, k), eps) == tight.size()) {
            basis.push_back(i);
            in_basis[i] = 1;
            return true;
        }
        tight.pop_back();
        return false;
    };
    for (std::size_t i = 0; i < m && basis.size() < k; ++i) {
        if (NumTraits<T>::sign(slack[i], eps) == 0) {
            try_add(i);
        }
    }

    while (basis.size() < k) {
        std::vector<Vector<T>> null;
        if (tight.empty()) {
            Vector<T> e(k, T(0));
            e[0] = T(1);
            null.push_back(std::move(e));
        } else {
            null = nullspace(Matrix<T>::from_rows(tight, k), eps);
        }
        const Vector<T> d0 = null.front();
        bool moved = false;
        for (int orient : {1, -1}) {
            Vector<T> d = d0;
            if (orient < 0) {
                for (auto& x : d) {
                    x = -x;
                }
            }
            std::size_t hit = m;
            T best{};
            for (std::size_t i = 0; i < m; ++i) {
                if (in_basis[i]) {
                    continue;
                }
                const T ad = dot(rows[i], d);
                if (!negative(ad, eps)) {
                    continue;
                }
                T s = slack[i];
                if (NumTraits<T>::sign(s, eps) < 0) {
                    s = T(0);
                }
                const T t = s / -ad;
                if (hit == m || t < best) {
                    best = t;
                    hit = i;
                }
            }
            if (hit == m) {
                continue;
            }
            for (std::size_t j = 0; j < k; ++j) {
                y[j] += best * d[j];
            }
            for (std::size_t i = 0; i < m; ++i) {
                slack[i] = dot(rows[i], y) - rhs[i];
            }
            slack[hit] = T(0);
            if (!try_add(hit)) {
                throw Error("linear program: lost rank during crossover");
            }
            moved = true;
            break;
        }
        if (!moved) {
            throw UnboundedError("linear program: polytope contains a line");
        }
    }

    Matrix<T> ab(k, k);
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t j = 0; j < k; ++j) {
            ab(l, j) = rows[basis[l]][j];
        }
    }
    const Matrix<T> inv = inverse(ab, eps * 1e-3);
    dirs.assign(k, Vector<T>(k));
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            dirs[j][i] = inv(i, j);
        }
    }
}

template <class T>
T LinearProgram<T>::Core::maximize(const Vector<T>& c)
{
    const std::size_t m = rows.size();
    std::vector<T> ad(m);
    for (;;) {
        // Bland: entering position with the smallest row index among improving ones.
        std::size_t enter = k;
        for (std::size_t j = 0; j < k; ++j) {
            if (positive(dot(c, dirs[j]), eps) && (enter == k || basis[j] < basis[enter])) {
                enter = j;
            }
        }
        if (enter == k) {
            return dot(c, y);
        }
        const auto& d = dirs[enter];
        std::size_t leave = m;
        T best{};
        for (std::size_t i = 0; i < m; ++i) {
            if (in_basis[i]) {
                continue;
            }
            ad[i] = dot(rows[i], d);
            if (!negative(ad[i], eps)) {
                continue;
            }
            T s = slack[i];
            if (NumTraits<T>::sign(s, eps) <= 0) {
                s = T(0);
            }
            const T t = s / -ad[i];
            if (leave == m || t < best) {
                best = t;
                leave = i;
            }
        }
        if (leave == m) {
            throw UnboundedError("linear program: objective is unbounded");
        }
        ++pivots;
        const std::size_t out_row = basis[enter];
        if (!NumTraits<T>::is_zero(best, 0.0)) {
            for (std::size_t j = 0; j < k; ++j) {
                y[j] += best * d[j];
            }
            for (std::size_t i = 0; i < m; ++i) {
                if (!in_basis[i]) {
                    slack[i] += best * ad[i];
                }
            }
            slack[out_row] += best;
        }
        slack[leave] = T(0);

        // Replace row out_row by row leave in the basis inverse.
        const T alpha = ad[leave];
        Vector<T> nd = dirs[enter];
        for (auto& x : nd) {
            x /= alpha;
        }
        for (std::size_t l = 0; l < k; ++l) {
            if (l == enter) {
                continue;
            }
            const T f = dot(rows[leave], dirs[l]);
            if (NumTraits<T>::is_zero(f, 0.0)) {
                continue;
            }
            for (std::size_t i = 0; i < k; ++i) {
                dirs[l][i] -= f * nd[i];
            }
        }
        dirs[enter] = std::move(nd);
        in_basis[out_row] = 0;
        in_basis[leave] = 1;
        basis[enter] = leave;
    }
}

template <class T>
LinearProgram<T>::LinearProgram(const HPolytope<T>& p, const Settings& cfg) : dim_(p.dim), cfg_(cfg)
{
    const double eps = cfg.eps;
    const std::size_t n = p.dim;

    // Particular solution of the equalities and a basis of their kernel.
    origin_.assign(n, T(0));
    if (!p.equalities.empty()) {
        Matrix<T> aug(p.equalities.size(), n + 1);
        for (std::size_t i = 0; i < p.equalities.size(); ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                aug(i, j) = p.equalities[i].normal[j];
            }
            aug(i, n) = p.equalities[i].offset;
        }
        const auto ech = reduced_echelon(aug, eps);
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
            if (ech.pivots[r] == n) {
                return;
            }
            origin_[ech.pivots[r]] = ech.reduced(r, n);
        }
        std::vector<Vector<T>> eq;
        for (const auto& h : p.equalities) {
            eq.push_back(h.normal);
        }
        basis_ = nullspace(Matrix<T>::from_rows(eq, n), eps);
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            Vector<T> e(n, T(0));
            e[j] = T(1);
            basis_.push_back(std::move(e));
        }
    }
    const std::size_t k = basis_.size();

    core_.k = k;
    core_.eps = eps;
    for (const auto& h : p.inequalities) {
        Vector<T> r(k);
        for (std::size_t j = 0; j < k; ++j) {
            r[j] = dot(h.normal, basis_[j]);
        }
        const T b = h.offset - dot(h.normal, origin_);
        if (is_zero_vector(r, eps)) {
            if (positive(b, eps)) {
                return;
            }
            continue;
        }
        core_.rows.push_back(std::move(r));
        core_.rhs.push_back(b);
    }
    if (k == 0) {
        feasible_ = true;
        return;
    }

    // Phase one: shrink the largest violation t over {rows y + t >= rhs, 0 <= t <= t0}.
    T worst = T(0);
    for (const auto& b : core_.rhs) {
        if (b > worst) {
            worst = b;
        }
    }
    Vector<T> start(k, T(0));
    if (positive(worst, eps)) {
        Core aux;
        aux.k = k + 1;
        aux.eps = eps;
        for (std::size_t i = 0; i < core_.rows.size(); ++i) {
            Vector<T> r = core_.rows[i];
            r.push_back(T(1));
            aux.rows.push_back(std::move(r));
            aux.rhs.push_back(core_.rhs[i]);
        }
        Vector<T> tpos(k + 1, T(0));
        tpos[k] = T(1);
        Vector<T> tneg(k + 1, T(0));
        tneg[k] = T(-1);
        aux.rows.push_back(tpos);
        aux.rhs.push_back(T(0));
        aux.rows.push_back(tneg);
        aux.rhs.push_back(-worst);
        Vector<T> p0(k + 1, T(0));
        p0[k] = worst;
        aux.start_at(std::move(p0));
        const T best = aux.maximize(tneg);
        pivots_ += aux.pivots;
        if (negative(best, eps)) {
            return;
        }
        start.assign(aux.y.begin(), aux.y.begin() + static_cast<std::ptrdiff_t>(k));
    }
    core_.start_at(std::move(start));
    feasible_ = true;
}

template <class T>
LpOptimum<T> LinearProgram<T>::maximize(const Vector<T>& objective)
{
    if (!feasible_) {
        throw InvalidInput("linear program: polytope is empty");
    }
    if (objective.size() != dim_) {
        throw InvalidInput("linear program: objective has dimension " + std::to_string(objective.size()) +
                           ", expected " + std::to_string(dim_));
    }
    const std::size_t k = basis_.size();
    Vector<T> c(k);
    for (std::size_t j = 0; j < k; ++j) {
        c[j] = dot(objective, basis_[j]);
    }
    const std::size_t before = core_.pivots;
    if (k > 0) {
        core_.maximize(c);
    }
    pivots_ += core_.pivots - before;
    Vector<T> x = origin_;
    for (std::size_t j = 0; j < k; ++j) {
        if (NumTraits<T>::is_zero(core_.y[j], 0.0)) {
            continue;
        }
        for (std::size_t i = 0; i < dim_; ++i) {
            x[i] += core_.y[j] * basis_[j][i];
        }
    }
    T value = dot(objective, x);
    return {std::move(value), std::move(x)};
}

template <class T>
LpOptimum<T> LinearProgram<T>::minimize(const Vector<T>& objective)
{
    Vector<T> neg(objective.size());
    for (std::size_t i = 0; i < neg.size(); ++i) {
        neg[i] = -objective[i];
    }
    auto r = maximize(neg);
    r.value = -r.value;
    return r;
}

template class LinearProgram<Rational>;
template class LinearProgram<double>;

}  // namespace gpt
