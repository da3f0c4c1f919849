#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrf/error.hpp"
#include "qrf/io.hpp"

using namespace qrf;

TEST(Io, GroupRoundTrip) {
  for (const char* name : {"z1", "z5", "s3", "q8"}) {
    const FiniteGroup g = builtin_group(name);
    const FiniteGroup back = group_from_json(Json::parse(group_to_json(g).dump()));
    EXPECT_EQ(back.cayley(), g.cayley());
    EXPECT_EQ(back.labels(), g.labels());
  }
}

TEST(Io, GroupWithoutOptionalFields) {
  const FiniteGroup g = group_from_json(Json::parse(R"({"cayley": [[0,1],[1,0]]})"));
  EXPECT_EQ(g.order(), 2);
  EXPECT_THROW(group_from_json(Json::parse(R"({"order": 3, "cayley": [[0,1],[1,0]]})")), InputError);
  EXPECT_THROW(group_from_json(Json::parse(R"({"cayley": [[0,1],[1,"a"]]})")), InputError);
  EXPECT_THROW(group_from_json(Json::parse(R"({"table": []})")), InputError);
  EXPECT_THROW(group_from_json(Json::parse(R"({"cayley": [[0,1],[1,1]]})")), ConstructionError);
}

TEST(Io, LoadGroupSources) {
  EXPECT_EQ(load_group("builtin:d4").order(), 8);
  EXPECT_EQ(load_group("s3").order(), 6);
  EXPECT_THROW(load_group("/nonexistent/group.json"), InputError);
}

TEST(IoProperty, OperatorRoundTrip) {
  Rng rng(81);
  for (int t = 0; t < 10; ++t) {
    const Operator a = ginibre(1 + t % 4, 1 + t % 4, rng);
    EXPECT_EQ(operator_from_json(Json::parse(operator_to_json(a).dump())), a);
  }
}

TEST(Io, OperatorErrors) {
  EXPECT_THROW(operator_from_json(Json::parse(R"({"re": [[1,0],[0]]})")), InputError);
  EXPECT_THROW(operator_from_json(Json::parse(R"({"re": [[1,0],[0,1]], "im": [[0]]})")), InputError);
  EXPECT_THROW(operator_from_json(Json::parse(R"({"re": [[1,2,3],[0,1,0]]})")), InputError);
  const Operator real_only = operator_from_json(Json::parse(R"({"re": [[1,0],[0,1]]})"));
  EXPECT_EQ(real_only, Operator::Identity(2, 2));
}

TEST(Io, RepKinds) {
  const FiniteGroup g = symmetric_group(3);
  EXPECT_EQ(rep_from_json(g, "left_regular").dim(), 6);
  EXPECT_EQ(rep_from_json(g, Json::parse(R"({"kind": "left_right"})")).dim(), 6);
  EXPECT_EQ(rep_from_json(g, Json::parse(R"({"kind": "trivial", "dim": 3})")).dim(), 3);
  const auto a = rep_from_json(g, Json::parse(R"({"kind": "random", "dim": 4, "seed": 2})"));
  EXPECT_EQ(a.matrix(1), rep_of_dim(g, 4, 2).matrix(1));
  Json m;
  m["matrices"] = Json::array();
  for (int x = 0; x < 6; ++x) m["matrices"].push_back(operator_to_json(left_regular_rep(g).matrix(x)));
  EXPECT_EQ(rep_from_json(g, m).matrix(3), left_regular_rep(g).matrix(3));
  EXPECT_THROW(rep_from_json(g, "spin"), InputError);
  EXPECT_THROW(rep_from_json(g, Json::parse(R"({"kind": "trivial"})")), InputError);
}

TEST(Io, ScenarioFromJson) {
  const auto sc = scenario_from_json(Json::parse(R"({
    "group": "z3",
    "frames": [{"rep": "left_right"}, {"rep": "left_regular", "povm": "canonical"}],
    "system": {"rep": "random", "dim": 2},
    "seed": 4
  })"));
  EXPECT_EQ(sc.frame_count(), 2);
  EXPECT_EQ(sc.shape(), (FactorShape{3, 3, 2}));
  EXPECT_EQ(sc.system_rep().matrix(1), rep_of_dim(cyclic_group(3), 2, 4).matrix(1));
  EXPECT_EQ(scenario_from_json(Json::parse(R"({"group": "z2", "frames": [{"rep": "left_regular"}]})"))
                .system_rep().dim(),
            1);
  EXPECT_THROW(scenario_from_json(Json::parse(R"({"group": "z2", "frames": []})")), InputError);
  EXPECT_THROW(scenario_from_json(Json::parse(
                   R"({"group": "z2", "frames": [{"rep": "left_regular"}], "system": {"rep": "left_regular", "dim": 3}})")),
               InputError);
}

TEST(Io, SchemeFromJson) {
  const FiniteGroup g = cyclic_group(3);
  Json j;
  j["group"] = "z3";
  j["interaction"] = operator_to_json(relative_shift(g));
  j["pointer"] = "canonical";
  j["target"] = "canonical";
  Operator e0 = Operator::Zero(3, 3);
  e0(0, 0) = 1.0;
  j["pointer_state"] = operator_to_json(e0);
  j["outcome_map"] = {0, 1, 2};
  const MeasurementScheme scheme = scheme_from_json(j);
  EXPECT_TRUE(check_prc(scheme).pass);
  j["outcome_map"] = {0, 0, 0};
  j["require_surjective"] = true;
  EXPECT_THROW(scheme_from_json(j), ArgumentError);
  j.erase("interaction");
  EXPECT_THROW(scheme_from_json(j), InputError);
}

TEST(Io, ContextReport) {
  const auto ctx = make_context(2, {Operator::Identity(2, 2)});
  const Json r = context_report(ctx);
  EXPECT_EQ(r["rank"], 1);
  EXPECT_EQ(r["kernel_dim"], 3);
  EXPECT_EQ(r["generators"], 1);
}

TEST(Io, CosetFrameFromJson) {
  const FiniteGroup g = symmetric_group(3);
  const int flip = g.find("(12)");
  Json j;
  j["rep"] = {{"kind", "coset"}, {"coset_subgroup", {flip}}};
  j["povm"] = {{"space", {{"coset_subgroup", {flip}}}}};
  const Frame f = frame_from_json(g, j);
  EXPECT_EQ(f.dim(), 3);
  EXPECT_FALSE(f.flags().principal);
  EXPECT_TRUE(f.flags().sharp);
  j["povm"]["effects"] = {operator_to_json(Operator::Identity(3, 3))};
  EXPECT_THROW(frame_from_json(g, j), InputError);
  j["povm"] = {{"space", "torus"}};
  EXPECT_THROW(frame_from_json(g, j), InputError);
}
