#pragma once

#include <string>
#include <vector>

#include "gpt/cones.hpp"
#include "gpt/linalg.hpp"

namespace gpt {

/// A single system: normalized states, a (possibly restricted) set of
/// effects and the unit effect. Both sets are polytopes given by their
/// extreme points; the effect polytope always contains 0 and the unit.
template <class T>
class GptSystem {
public:
    /// Validates the system; throws InvalidInput on any violated invariant.
    GptSystem(std::string label, Vector<T> unit, Polytope<T> states, Polytope<T> effects, const Settings& cfg = {});

    /// Canonicalizes both point lists (interior points dropped) before validating.
    static GptSystem from_points(std::string label, Vector<T> unit, std::vector<Vector<T>> states,
                                 std::vector<Vector<T>> effects, const Settings& cfg = {});

    std::size_t dim() const { return unit_.size(); }
    const std::string& label() const { return label_; }
    const Vector<T>& unit() const { return unit_; }
    const Polytope<T>& states() const { return states_; }
    const Polytope<T>& effects() const { return effects_; }

    GptSystem relabeled(std::string label) const;

private:
    std::string label_;
    Vector<T> unit_;
    Polytope<T> states_;
    Polytope<T> effects_;
};

/// p(e|w) = e.w
template <class T>
T evaluate(const Vector<T>& effect, const Vector<T>& state);

/// Convex combination; weights must be nonnegative and sum to one.
template <class T>
Vector<T> mix(const std::vector<Vector<T>>& points, const std::vector<T>& weights, const Settings& cfg = {});

/// Full table e_i . w_j over effect vertices (rows) and state vertices (columns).
template <class T>
Matrix<T> probability_table(const GptSystem<T>& s);

/// Same states, effects replaced by every [0,1]-valued functional on them.
template <class T>
GptSystem<T> unrestrict(const GptSystem<T>& s, const Settings& cfg = {});

template <class T>
bool is_unrestricted(const GptSystem<T>& s, const Settings& cfg = {});

/// Effects = L applied to the unrestricted effect set. Throws SingularMap
/// for non-invertible L and InvalidRestriction if an image leaves [0,1] on
/// some state or the unit is no longer an effect.
template <class T>
GptSystem<T> restrict_effects_linear(const GptSystem<T>& s, const Matrix<T>& L, const Settings& cfg = {});

/// effects -> L e, states -> (L^-1)^T w, unit -> L u.
template <class T>
GptSystem<T> transform_representation(const GptSystem<T>& s, const Matrix<T>& L, const Settings& cfg = {});

/// Vertices of E intersected with u - E: effects usable as one outcome of a
/// two-outcome measurement.
template <class T>
std::vector<Vector<T>> dichotomic_observables(const GptSystem<T>& s, const Settings& cfg = {});

/// True iff e lies in E and u - e lies in E.
template <class T>
bool is_dichotomic(const GptSystem<T>& s, const Vector<T>& e, const Settings& cfg = {});

template <class To, class From>
GptSystem<To> convert_system(const GptSystem<From>& s, const Settings& cfg = {});

}  // namespace gpt
