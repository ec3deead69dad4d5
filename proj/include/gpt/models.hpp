#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "gpt/systems.hpp"

namespace gpt {

/// Classical k-level system. States are pairwise orthogonal vectors with
/// last coordinate 1, so the unit is (0,...,0,1) and the state cone is
/// self-dual under the Euclidean pairing.
GptSystem<Rational> classical(int k, const Settings& cfg = {});

/// Square state space (+-1, +-1, 1) with every [0,1]-valued effect.
GptSystem<Rational> boxworld(const Settings& cfg = {});

/// Boxworld with effects shrunk by diag(lambda, lambda, 1), 0 < lambda <= 1.
template <class T>
GptSystem<T> noisy_boxworld(const T& lambda, const Settings& cfg = {});

/// Regular n-gon of radius sqrt(sec(pi/n)) with every [0,1]-valued effect.
GptSystem<double> polygon(int n, const Settings& cfg = {});

/// Restricts the effect cone to cone(states) intersected with its dual,
/// identifying V and V* through the Euclidean pairing.
template <class T>
GptSystem<T> self_dualize(const GptSystem<T>& s, const Settings& cfg = {});

enum class SpekkensKind { Restricted, Unrestricted };

/// Octahedron state space; the restricted kind keeps only the six sharp
/// single-axis effects (plus 0 and u).
GptSystem<Rational> spekkens_bit(SpekkensKind kind, const Settings& cfg = {});

/// Parsed model name such as "noisy_boxworld:3/4" or "polygon:8".
struct ModelId {
    enum class Name { Classical, Boxworld, NoisyBoxworld, Polygon, SelfdualPolygon, SpekkensRestricted, SpekkensUnrestricted };

    Name name = Name::Boxworld;
    int count = 0;          // k for classical, n for polygons
    std::string parameter;  // lambda text for noisy boxworld

    static ModelId parse(std::string_view text);
    std::string str() const;
    /// Whether the model has rational coordinates.
    bool exact() const;
};

using AnySystem = std::variant<GptSystem<Rational>, GptSystem<double>>;

AnySystem build_model(const ModelId& id, const Settings& cfg = {});

}  // namespace gpt
