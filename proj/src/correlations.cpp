#include "gpt/correlations.hpp"

#include <sstream>

#include "gpt/lp.hpp"

namespace gpt {
namespace {

template <class T>
Vector<T> correlator_vector(const Vector<T>& e, const Vector<T>& unit)
{
    Vector<T> r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        r[i] = T(2) * e[i] - unit[i];
    }
    return r;
}

template <class T>
void check_dichotomic(const GptSystem<T>& s, const Vector<T>& e, const char* who, const Settings& cfg)
{
    if (e.size() != s.dim()) {
        throw InvalidEffect(std::string(who) + ": effect has dimension " + std::to_string(e.size()) + ", expected " +
                            std::to_string(s.dim()));
    }
    if (!is_dichotomic(s, e, cfg)) {
        throw InvalidEffect(std::string(who) + ": effect is not a dichotomic observable of system '" + s.label() +
                            "'");
    }
}

/// a > b, with a margin of eps in approximate mode.
template <class T>
bool improves(const T& a, const T& b, double eps)
{
    if constexpr (is_exact_v<T>) {
        return a > b;
    } else {
        return a > b + eps;
    }
}

template <class T>
bool ties(const T& a, const T& b, double eps)
{
    if constexpr (is_exact_v<T>) {
        return a == b;
    } else {
        return std::abs(a - b) <= eps;
    }
}

}  // namespace

template <class T>
Scenario<T> make_scenario(const GptSystem<T>& A, const GptSystem<T>& B, std::array<Vector<T>, 2> a,
                          std::array<Vector<T>, 2> b, const Settings& cfg)
{
    for (const auto& e : a) {
        check_dichotomic(A, e, "scenario", cfg);
    }
    for (const auto& f : b) {
        check_dichotomic(B, f, "scenario", cfg);
    }
    return {std::move(a), std::move(b)};
}

template <class T>
T Behavior<T>::correlator(int x, int y) const
{
    const auto& s = *this;
    return s(x, y, 0, 0) - s(x, y, 0, 1) - s(x, y, 1, 0) + s(x, y, 1, 1);
}

template <class T>
Behavior<T> behavior(const Vector<T>& joint, const Scenario<T>& sc, const GptSystem<T>& A, const GptSystem<T>& B,
                     const Settings& cfg)
{
    if (joint.size() != A.dim() * B.dim()) {
        throw InvalidInput("behavior: joint vector has dimension " + std::to_string(joint.size()) + ", expected " +
                           std::to_string(A.dim() * B.dim()));
    }
    for (const auto& e : sc.a) {
        check_dichotomic(A, e, "behavior", cfg);
    }
    for (const auto& f : sc.b) {
        check_dichotomic(B, f, "behavior", cfg);
    }
    Behavior<T> out;
    for (int x = 0; x < 2; ++x) {
        const std::array<Vector<T>, 2> ea{sc.a[x], A.unit() - sc.a[x]};
        for (int y = 0; y < 2; ++y) {
            const std::array<Vector<T>, 2> fb{sc.b[y], B.unit() - sc.b[y]};
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    out(x, y, i, j) = dot(kron(ea[i], fb[j]), joint);
                }
            }
        }
    }
    return out;
}

template <class T>
std::optional<std::string> behavior_violation(const Behavior<T>& b, const Settings& cfg)
{
    const double eps = cfg.eps;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            T total = T(0);
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    const T& p = b(x, y, i, j);
                    if (NumTraits<T>::sign(p, eps) < 0 || NumTraits<T>::sign(T(1) - p, eps) < 0) {
                        return "p(" + std::to_string(i) + std::to_string(j) + "|" + std::to_string(x) +
                               std::to_string(y) + ") = " + NumTraits<T>::format(p) + " is outside [0,1]";
                    }
                    total += p;
                }
            }
            if (!NumTraits<T>::is_zero(total - T(1), eps)) {
                return "row (" + std::to_string(x) + "," + std::to_string(y) + ") sums to " + NumTraits<T>::format(total);
            }
        }
    }
    for (int x = 0; x < 2; ++x) {
        for (int i = 0; i < 2; ++i) {
            const T m0 = b(x, 0, i, 0) + b(x, 0, i, 1);
            const T m1 = b(x, 1, i, 0) + b(x, 1, i, 1);
            if (!NumTraits<T>::is_zero(m0 - m1, eps)) {
                return "A marginal for x=" + std::to_string(x) + " depends on y";
            }
        }
    }
    for (int y = 0; y < 2; ++y) {
        for (int j = 0; j < 2; ++j) {
            const T m0 = b(0, y, 0, j) + b(0, y, 1, j);
            const T m1 = b(1, y, 0, j) + b(1, y, 1, j);
            if (!NumTraits<T>::is_zero(m0 - m1, eps)) {
                return "B marginal for y=" + std::to_string(y) + " depends on x";
            }
        }
    }
    return std::nullopt;
}

template <class T>
T chsh_value(const Behavior<T>& b)
{
    return b.correlator(0, 0) + b.correlator(0, 1) + b.correlator(1, 0) - b.correlator(1, 1);
}

template <class T>
Vector<T> chsh_functional(const Scenario<T>& sc, const Vector<T>& unit_a, const Vector<T>& unit_b)
{
    const auto a0 = correlator_vector(sc.a[0], unit_a);
    const auto a1 = correlator_vector(sc.a[1], unit_a);
    const auto b0 = correlator_vector(sc.b[0], unit_b);
    const auto b1 = correlator_vector(sc.b[1], unit_b);
    return kron(a0, b0 + b1) + kron(a1, b0 - b1);
}

template <class T>
ChshResult<T> chsh_max(const JointSystem<T>& j, const std::vector<Vector<T>>& obs_a,
                       const std::vector<Vector<T>>& obs_b, const Settings& cfg)
{
    if (obs_a.empty() || obs_b.empty()) {
        throw InvalidInput("chsh_max: empty observable set");
    }
    for (const auto& e : obs_a) {
        check_dichotomic(j.a, e, "chsh_max", cfg);
    }
    for (const auto& f : obs_b) {
        check_dichotomic(j.b, f, "chsh_max", cfg);
    }
    const std::size_t da = j.a.dim();
    const std::size_t db = j.b.dim();
    std::vector<Vector<T>> ca;
    for (const auto& e : obs_a) {
        ca.push_back(correlator_vector(e, j.a.unit()));
    }
    std::vector<Vector<T>> cb;
    for (const auto& f : obs_b) {
        cb.push_back(correlator_vector(f, j.b.unit()));
    }
    const std::size_t na = ca.size();
    const std::size_t nb = cb.size();
    const double eps = cfg.eps;

    std::optional<T> best;
    std::array<std::size_t, 5> arg{};  // vertex, a0, a1, b0, b1

    if (j.enumerated()) {
        const auto& verts = j.vertices();
        if (verts.empty()) {
            throw InvalidInput("chsh_max: joint state space has no vertices");
        }
        std::vector<Vector<T>> mb(nb, Vector<T>(da));
        Vector<T> plus(da);
        Vector<T> minus(da);
        for (std::size_t v = 0; v < verts.size(); ++v) {
            const auto& w = verts[v];
            for (std::size_t q = 0; q < nb; ++q) {
                for (std::size_t i = 0; i < da; ++i) {
                    T s = T(0);
                    for (std::size_t k = 0; k < db; ++k) {
                        s += w[i * db + k] * cb[q][k];
                    }
                    mb[q][i] = std::move(s);
                }
            }
            for (std::size_t q0 = 0; q0 < nb; ++q0) {
                for (std::size_t q1 = 0; q1 < nb; ++q1) {
                    for (std::size_t i = 0; i < da; ++i) {
                        plus[i] = mb[q0][i] + mb[q1][i];
                        minus[i] = mb[q0][i] - mb[q1][i];
                    }
                    std::size_t p0 = 0;
                    T v0 = dot(ca[0], plus);
                    std::size_t p1 = 0;
                    T v1 = dot(ca[0], minus);
                    for (std::size_t i = 1; i < na; ++i) {
                        T t0 = dot(ca[i], plus);
                        if (improves(t0, v0, eps)) {
                            v0 = std::move(t0);
                            p0 = i;
                        }
                        T t1 = dot(ca[i], minus);
                        if (improves(t1, v1, eps)) {
                            v1 = std::move(t1);
                            p1 = i;
                        }
                    }
                    const T value = v0 + v1;
                    const std::array<std::size_t, 5> cand{v, p0, p1, q0, q1};
                    if (!best || improves(value, *best, eps)) {
                        best = value;
                        arg = cand;
                    } else if (ties(value, *best, eps) && cand < arg) {
                        arg = cand;
                    }
                }
            }
        }
        Scenario<T> sc{{obs_a[arg[1]], obs_a[arg[2]]}, {obs_b[arg[3]], obs_b[arg[4]]}};
        return {*best, verts[arg[0]], std::move(sc), arg[0], ChshMethod::Vertices};
    }

    LinearProgram<T> lp(j.constraints(cfg), cfg);
    if (!lp.feasible()) {
        throw InvalidInput("chsh_max: joint state space is empty");
    }
    Vector<T> state;
    for (std::size_t a0 = 0; a0 < na; ++a0) {
        for (std::size_t a1 = 0; a1 < na; ++a1) {
            for (std::size_t b0 = 0; b0 < nb; ++b0) {
                for (std::size_t b1 = 0; b1 < nb; ++b1) {
                    const auto obj = kron(ca[a0], cb[b0] + cb[b1]) + kron(ca[a1], cb[b0] - cb[b1]);
                    auto r = lp.maximize(obj);
                    if (!best || improves(r.value, *best, eps)) {
                        best = r.value;
                        arg = {0, a0, a1, b0, b1};
                        state = std::move(r.point);
                    }
                }
            }
        }
    }
    Scenario<T> sc{{obs_a[arg[1]], obs_a[arg[2]]}, {obs_b[arg[3]], obs_b[arg[4]]}};
    return {*best, std::move(state), std::move(sc), std::nullopt, ChshMethod::LinearProgram};
}

template <class T>
ChshResult<T> chsh_max(const JointSystem<T>& j, const Settings& cfg)
{
    return chsh_max(j, dichotomic_observables(j.a, cfg), dichotomic_observables(j.b, cfg), cfg);
}

template <class T>
BoundReport<T> correlation_bound_check(const GptSystem<T>& A, const GptSystem<T>& B, const Matrix<T>& LA,
                                       const Matrix<T>& LB, const Settings& cfg, Enumeration mode)
{
    const auto ua = unrestrict(A, cfg);
    const auto ub = unrestrict(B, cfg);
    const auto ra = restrict_effects_linear(ua, LA, cfg);
    const auto rb = restrict_effects_linear(ub, LB, cfg);
    BoundReport<T> r{};
    r.s_generalized = chsh_max(generalized_max_tensor(ra, rb, cfg, mode), cfg).value;
    r.s_unrestricted = chsh_max(max_tensor(ua, ub, cfg, mode), cfg).value;
    r.s_restricted_max = chsh_max(max_tensor(ra, rb, cfg, mode), cfg).value;
    r.bound_holds = !improves(r.s_generalized, r.s_unrestricted, cfg.eps);
    r.identity_holds = ties(r.s_restricted_max, r.s_unrestricted, cfg.eps);
    return r;
}

template <class T>
std::string behavior_csv(const Behavior<T>& b)
{
    std::ostringstream os;
    os << "x,y,a,b,p\n";
    const char* sign[2] = {"+", "-"};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    os << x << ',' << y << ',' << sign[i] << ',' << sign[j] << ',' << NumTraits<T>::format(b(x, y, i, j))
                       << '\n';
                }
            }
        }
    }
    return os.str();
}

#define GPT_INSTANTIATE_CORRELATIONS(T)                                                                           \
    template struct Behavior<T>;                                                                                  \
    template Scenario<T> make_scenario(const GptSystem<T>&, const GptSystem<T>&, std::array<Vector<T>, 2>,        \
                                       std::array<Vector<T>, 2>, const Settings&);                                \
    template Behavior<T> behavior(const Vector<T>&, const Scenario<T>&, const GptSystem<T>&, const GptSystem<T>&, \
                                  const Settings&);                                                               \
    template std::optional<std::string> behavior_violation(const Behavior<T>&, const Settings&);                  \
    template T chsh_value(const Behavior<T>&);                                                                    \
    template Vector<T> chsh_functional(const Scenario<T>&, const Vector<T>&, const Vector<T>&);                   \
    template ChshResult<T> chsh_max(const JointSystem<T>&, const std::vector<Vector<T>>&,                         \
                                    const std::vector<Vector<T>>&, const Settings&);                              \
    template ChshResult<T> chsh_max(const JointSystem<T>&, const Settings&);                                      \
    template BoundReport<T> correlation_bound_check(const GptSystem<T>&, const GptSystem<T>&, const Matrix<T>&,   \
                                                    const Matrix<T>&, const Settings&, Enumeration);              \
    template std::string behavior_csv(const Behavior<T>&);

GPT_INSTANTIATE_CORRELATIONS(Rational)
GPT_INSTANTIATE_CORRELATIONS(double)

#undef GPT_INSTANTIATE_CORRELATIONS

}  // namespace gpt
