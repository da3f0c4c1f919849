#include "qrf/io.hpp"

#include <fstream>

#include "qrf/error.hpp"
#include "qrf/fixtures.hpp"

namespace qrf {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + ": expected an integer");
  return j.get<int>();
}

RealMatrix real_rows(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return RealMatrix(0, 0);
  if (!j[0].is_array()) throw InputError(std::string(what) + ": row 0 is not an array");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(std::string(what) + ": ragged matrix at row " + std::to_string(r));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!row[c].is_number()) {
        throw InputError(std::string(what) + ": non-numeric entry at (" + std::to_string(r) + ", " +
                         std::to_string(c) + ")");
      }
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

Json rows_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

FiniteGroup group_from_value(const Json& j) {
  if (j.is_string()) return load_group(j.get<std::string>());
  return group_from_json(j);
}

std::vector<Operator> operator_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of operators");
  std::vector<Operator> out;
  for (const auto& e : j) out.push_back(operator_from_json(e));
  return out;
}

POVM povm_from_json(const UnitaryRep& rep, const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "canonical") throw InputError("povm: unknown POVM \"" + j.get<std::string>() + "\"");
    return canonical_pvm(rep);
  }
  const Json space = j.is_object() && j.contains("space") ? j["space"] : Json("group");
  if (space.is_object()) {
    const Json& gens = field(space, "coset_subgroup", "povm space");
    if (!gens.is_array()) throw InputError("povm space: \"coset_subgroup\" must be an index array");
    std::vector<int> elements;
    for (const auto& v : gens) elements.push_back(as_int(v, "povm space coset_subgroup entry"));
    const CosetSpace cosets(rep.group(), Subgroup::generated_by(rep.group(), elements));
    if (!j.contains("effects")) return coset_pvm(cosets);
    auto effects = operator_list(j["effects"], "povm effects");
    if (static_cast<int>(effects.size()) != cosets.size()) {
      throw InputError("povm: expected one effect per coset");
    }
    return POVM(SampleSpace(cosets), std::move(effects));
  }
  if (space != "group") throw InputError("povm: space must be \"group\" or {\"coset_subgroup\": [...]}");
  auto effects = operator_list(field(j, "effects", "povm"), "povm effects");
  if (static_cast<int>(effects.size()) != rep.group().order()) {
    throw InputError("povm: expected one effect per group element");
  }
  return POVM(SampleSpace(rep.group()), std::move(effects));
}

}  // namespace

Json group_to_json(const FiniteGroup& group) {
  Json j;
  j["order"] = group.order();
  j["cayley"] = group.cayley();
  j["labels"] = group.labels();
  return j;
}

FiniteGroup group_from_json(const Json& j) {
  const Json& table = field(j, "cayley", "group");
  if (!table.is_array()) throw InputError("group: \"cayley\" must be an array of rows");
  std::vector<std::vector<int>> rows;
  for (size_t r = 0; r < table.size(); ++r) {
    if (!table[r].is_array()) throw InputError("group: cayley row " + std::to_string(r) + " is not an array");
    std::vector<int> row;
    for (const auto& v : table[r]) {
      if (!v.is_number_integer()) {
        throw InputError("group: cayley row " + std::to_string(r) + " has a non-integer entry");
      }
      row.push_back(v.get<int>());
    }
    rows.push_back(std::move(row));
  }
  if (j.contains("order") && as_int(j["order"], "group order") != static_cast<int>(rows.size())) {
    throw InputError("group: \"order\" does not match the cayley table");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw InputError("group: labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return FiniteGroup::from_cayley_table(std::move(rows), std::move(labels));
}

FiniteGroup load_group(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) return builtin_group(source);
  for (const auto& name : builtin_group_names()) {
    if (name == source) return builtin_group(source);
  }
  return group_from_json(read_json_file(source));
}

Json operator_to_json(const Operator& a) {
  Json j;
  j["dim"] = a.rows();
  j["re"] = rows_json(a.real());
  j["im"] = rows_json(a.imag());
  return j;
}

Operator operator_from_json(const Json& j) {
  const RealMatrix re = real_rows(field(j, "re", "operator"), "operator re");
  const int dim = j.contains("dim") ? as_int(j["dim"], "operator dim") : static_cast<int>(re.rows());
  const RealMatrix im = j.contains("im") ? real_rows(j["im"], "operator im") : RealMatrix::Zero(dim, dim);
  if (re.rows() != dim || re.cols() != dim || im.rows() != dim || im.cols() != dim) {
    throw InputError("operator: entries do not form a " + std::to_string(dim) + "x" +
                     std::to_string(dim) + " matrix");
  }
  Operator a(dim, dim);
  a.real() = re;
  a.imag() = im;
  return a;
}

UnitaryRep rep_from_json(const FiniteGroup& group, const Json& j) {
  if (j.is_object() && j.contains("matrices")) {
    return UnitaryRep::from_matrices(group, operator_list(j["matrices"], "representation"));
  }
  const Json& kind_json = j.is_string() ? j : field(j, "kind", "representation");
  if (!kind_json.is_string()) throw InputError("representation: \"kind\" must be a string");
  const std::string kind = kind_json.get<std::string>();
  if (kind == "left_regular") return left_regular_rep(group);
  if (kind == "left_right") return left_right_rep(group);
  if (kind == "coset") {
    const Json& gens = field(j, "coset_subgroup", "representation");
    std::vector<int> elements;
    for (const auto& v : gens) elements.push_back(as_int(v, "representation coset_subgroup entry"));
    return coset_permutation_rep(CosetSpace(group, Subgroup::generated_by(group, elements)));
  }
  const int dim = as_int(field(j, "dim", "representation"), "representation dim");
  if (kind == "trivial") return trivial_rep(group, dim);
  if (kind == "random") {
    const auto seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : std::uint64_t{0};
    return rep_of_dim(group, dim, seed);
  }
  throw InputError("representation: unknown kind \"" + kind + "\"");
}

Frame frame_from_json(const FiniteGroup& group, const Json& j) {
  const UnitaryRep rep = rep_from_json(group, field(j, "rep", "frame"));
  const Json povm = j.contains("povm") ? j["povm"] : Json("canonical");
  return classify_frame(rep, povm_from_json(rep, povm));
}

MultiFrameScenario scenario_from_json(const Json& j) {
  const FiniteGroup group = group_from_value(field(j, "group", "scenario"));
  const Json& frames_json = field(j, "frames", "scenario");
  if (!frames_json.is_array() || frames_json.empty()) {
    throw InputError("scenario: \"frames\" must be a non-empty array");
  }
  std::vector<Frame> frames;
  for (const auto& f : frames_json) frames.push_back(frame_from_json(group, f));
  UnitaryRep system = trivial_rep(group, 1);
  if (j.contains("system")) {
    const Json& s = j["system"];
    const Json& rep = field(s, "rep", "scenario system");
    if (rep.is_string() && s.contains("dim")) {
      Json desc = {{"kind", rep}, {"dim", s["dim"]}};
      if (j.contains("seed")) desc["seed"] = j["seed"];
      system = rep_from_json(group, desc);
    } else {
      system = rep_from_json(group, rep);
    }
    if (s.contains("dim") && as_int(s["dim"], "scenario system dim") != system.dim()) {
      throw InputError("scenario: system \"dim\" does not match its representation");
    }
  }
  return MultiFrameScenario(std::move(frames), std::move(system));
}

MeasurementScheme scheme_from_json(const Json& j) {
  const FiniteGroup group = group_from_value(field(j, "group", "scheme"));
  const UnitaryRep regular = left_regular_rep(group);
  const auto povm = [&](const char* key) {
    const Json& p = field(j, key, "scheme");
    if (p.is_string()) return povm_from_json(regular, p);
    auto effects = operator_list(field(p, "effects", key), key);
    const int n = static_cast<int>(effects.size());
    if (n == group.order()) return POVM(SampleSpace(group), std::move(effects));
    // Any other number of outcomes is indexed as Z_n.
    return POVM(SampleSpace(cyclic_group(n)), std::move(effects));
  };
  POVM pointer = povm("pointer");
  POVM target = povm("target");
  const Json& f = field(j, "outcome_map", "scheme");
  if (!f.is_array()) throw InputError("scheme: \"outcome_map\" must be an index array");
  std::vector<int> outcome;
  for (const auto& v : f) outcome.push_back(as_int(v, "scheme outcome_map entry"));
  const bool surjective = j.contains("require_surjective") && j["require_surjective"].get<bool>();
  return MeasurementScheme(operator_from_json(field(j, "interaction", "scheme")), std::move(pointer),
                           operator_from_json(field(j, "pointer_state", "scheme")),
                           std::move(outcome), std::move(target), surjective);
}

Json context_report(const EffectContext& ctx) {
  Json j;
  j["rank"] = ctx.rank();
  j["kernel_dim"] = ctx.kernel_dim();
  j["generators"] = ctx.generator_count();
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace qrf
