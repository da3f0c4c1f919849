#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qrf/framechange.hpp"
#include "qrf/group.hpp"
#include "qrf/measurement.hpp"
#include "qrf/opequiv.hpp"
#include "qrf/operator.hpp"
#include "qrf/quantum.hpp"

namespace qrf {

using Json = nlohmann::ordered_json;

/// Parse failures of user-supplied documents.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"order": n, "cayley": [[...]...], "labels": [...]}; "order" and "labels"
/// are optional on input.
Json group_to_json(const FiniteGroup& group);
FiniteGroup group_from_json(const Json& j);

/// "builtin:NAME", a bare built-in name, or the path of a group JSON file.
FiniteGroup load_group(const std::string& source);

/// {"dim": n, "re": [[...]...], "im": [[...]...]}; "dim" and "im" may be omitted.
Json operator_to_json(const Operator& a);
Operator operator_from_json(const Json& j);

/// Representation descriptor: "left_regular", "left_right", "trivial" (with
/// "dim"), "random" (with "dim", "seed"), or {"matrices": [operator...]}.
UnitaryRep rep_from_json(const FiniteGroup& group, const Json& j);

/// {"rep": <rep>, "povm": "canonical" | {"space": ..., "effects": [operator...]}}.
/// "space" is "group" (default) or {"coset_subgroup": [element...]}, the
/// subgroup generated by the listed elements; a coset space without
/// "effects" gets the coset PVM. Rep kind "coset" with "coset_subgroup" gives
/// the permutation representation on the cosets.
Frame frame_from_json(const FiniteGroup& group, const Json& j);

/// {"group": <group JSON or source string>, "frames": [frame...],
///  "system": {"rep": <rep>, "dim": n}, "seed": int}. A missing system
/// means a one-dimensional trivial one.
MultiFrameScenario scenario_from_json(const Json& j);

/// {"group": ..., "interaction": op, "pointer": "canonical" | {"effects": [...]},
///  "pointer_state": op, "outcome_map": [int...], "target": "canonical" | {"effects": [...]}}.
/// "canonical" means the canonical PVM of the left-regular representation.
MeasurementScheme scheme_from_json(const Json& j);

/// {"rank": r, "kernel_dim": k, "generators": m}.
Json context_report(const EffectContext& ctx);

Json read_json_file(const std::string& path);

}  // namespace qrf
