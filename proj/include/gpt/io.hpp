#pragma once

#include <string>
#include <variant>

#include "gpt/correlations.hpp"
#include "gpt/models.hpp"

namespace gpt {

/// JSON document {label, dim, mode, unit, states, effects}. Exact numbers
/// are fraction strings such as "-1/2"; approximate numbers are shortest
/// round-trip decimal strings.
template <class T>
std::string write_system(const GptSystem<T>& s);

/// Parses and validates a system document. Throws InvalidInput on
/// malformed text or an invalid system.
AnySystem read_system(const std::string& text, const Settings& cfg = {});

/// {kind, dim, mode, unit, a, b, vertices} with both parties embedded as
/// system documents. vertices is null when they were not enumerated; the
/// constraints of the maximal kinds are rebuilt from the parties on read.
template <class T>
std::string write_joint(const JointSystem<T>& j);

using AnyJoint = std::variant<JointSystem<Rational>, JointSystem<double>>;

AnyJoint read_joint(const std::string& text, const Settings& cfg = {});

/// Record {a, b, kind, mode, S, method, witness}.
template <class T>
std::string write_chsh_report(const JointSystem<T>& j, const ChshResult<T>& r);

/// Loads a model from a file path if it exists, otherwise parses a ModelId.
AnySystem load_model(const std::string& spec, const Settings& cfg = {});

}  // namespace gpt
