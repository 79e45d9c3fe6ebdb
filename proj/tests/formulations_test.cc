// Copyright 2026 The sopm Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sopm/formulations.h"

#include <gtest/gtest.h>

#include "fixtures.h"
#include "sopm/conflict.h"
#include "sopm/error.h"
#include "sopm/solver.h"

namespace sopm {
namespace {

std::vector<std::string> RowNames(const MilpModel& m, const std::string& prefix) {
  std::vector<std::string> out;
  for (const Constraint& c : m.constraints()) {
    if (c.name.rfind(prefix, 0) == 0) out.push_back(c.name);
  }
  return out;
}

// Row as "coef*name ... <= rhs" for readable comparisons.
std::string Render(const MilpModel& m, const std::string& row) {
  for (const Constraint& c : m.constraints()) {
    if (c.name != row) continue;
    std::string out;
    for (const Term& t : c.terms) {
      out += FormatReal(t.coef) + "*" + m.variables()[t.var].name + " ";
    }
    out += c.sense == Sense::kLe ? "<= " : c.sense == Sense::kEq ? "= " : ">= ";
    return out + FormatReal(c.rhs);
  }
  return "<missing " + row + ">";
}

std::vector<std::string> RenderAll(const MilpModel& m, const std::string& prefix) {
  std::vector<std::string> out;
  for (const std::string& name : RowNames(m, prefix)) out.push_back(Render(m, name));
  return out;
}

double Solve(const MilpModel& m) {
  const SolveResult res = BranchAndBound(m);
  EXPECT_EQ(res.status, SolveStatus::kOptimal);
  return res.objective;
}

// |I|=2 (nodes 4, 5), |J|=3 (nodes 1..3), p=1, no conflicts.
Instance TwoByThree() {
  return testing::TableInstance(
      5, {4, 5}, {1, 2, 3}, 1, 0.0, 0.0,
      {{4, 1, 1}, {4, 2, 2}, {4, 3, 3}, {5, 1, 3}, {5, 2, 2}, {5, 3, 1}}, {},
      4.0);
}

TEST(ClosestOrderingTest, T1) {
  const ClosestOrdering o = ComputeClosestOrdering(testing::T1());
  EXPECT_EQ(o.at(2), (std::vector<int>{1, 4}));
  EXPECT_EQ(o.at(3), (std::vector<int>{4, 1}));
}

TEST(ClosestOrderingTest, TiesByAscendingId) {
  const Instance inst = testing::TableInstance(4, {4}, {3, 1, 2}, 1, 0, 0, {}, {}, 2.0);
  EXPECT_EQ(ComputeClosestOrdering(inst).at(4), (std::vector<int>{1, 2, 3}));
}

TEST(LabelsTest, NamesRoundTrip) {
  EXPECT_EQ(FormulationLabel(BaseModel::kRs, DistanceEncoding::kD1), "RS1");
  EXPECT_EQ(FormulationLabel(BaseModel::kRrr, DistanceEncoding::kD3), "RRR3");
  EXPECT_EQ(FormulationLabel(BaseModel::kCobra, DistanceEncoding::kD4), "CHU4");
  for (BaseModel b : kAllBases) EXPECT_EQ(ParseBase(BaseName(b)), b);
  for (DistanceEncoding d : kAllDistances) EXPECT_EQ(ParseDistance(DistanceName(d)), d);
  EXPECT_THROW(ParseBase("gurobi"), ParameterError);
  EXPECT_THROW(ParseDistance("d5"), ParameterError);
}

TEST(RsTest, T1Sizes) {
  const MilpModel m = BuildRs(testing::T1());
  const ModelStats s = ComputeModelStats(m);
  EXPECT_EQ(s.variables, 6);
  EXPECT_EQ(s.constraints, 7);
  EXPECT_GE(m.FindVariable("y_2_4"), 0);
  EXPECT_EQ(m.variables()[m.FindVariable("y_3_1")].objective, 2.0);
  EXPECT_EQ(Render(m, "bal_2_1"), "-1*x_1 1*y_2_1 <= 0");
  EXPECT_DOUBLE_EQ(Solve(m), 3.0);
}

TEST(RsTest, TwoByThreeSizes) {
  const ModelStats s = ComputeModelStats(BuildRs(TwoByThree()));
  EXPECT_EQ(s.variables, 3 + 6);
  EXPECT_EQ(s.constraints, 2 + 6 + 1);
}

TEST(RsTest, PEqualsSitesOpensAll) {
  Instance t = testing::T1();
  t.p = 2;
  const SolveResult res = BranchAndBound(BuildRs(t));
  ASSERT_EQ(res.status, SolveStatus::kOptimal);
  EXPECT_EQ(res.open_sites, (std::vector<int>{1, 4}));
  EXPECT_DOUBLE_EQ(res.objective, 2.0);
}

TEST(RrrTest, T1Sizes) {
  const MilpModel m = BuildRrr(testing::T1(), 1);
  const ModelStats s = ComputeModelStats(m);
  EXPECT_EQ(s.variables, 6);
  EXPECT_EQ(s.constraints, 7);
  EXPECT_DOUBLE_EQ(Solve(m), 3.0);
}

TEST(RrrTest, TwoByThreeSizes) {
  const MilpModel m = BuildRrr(TwoByThree(), 2);
  const ModelStats s = ComputeModelStats(m);
  EXPECT_EQ(s.variables, 3 + 2 * 3);
  // card + assign per client + r Balinski rows per client + one aggregated
  // linking row per site.
  EXPECT_EQ(s.constraints, 1 + 2 + 2 * 2 + 3);
  EXPECT_EQ(RowNames(m, "er_").size(), 3u);
}

TEST(RrrTest, DropsFurthestWithLargerIdFirst) {
  // Client 4 ranks 1 < {2, 3} tied; p=2 drops one of the tied pair.
  const Instance inst = testing::TableInstance(
      4, {4}, {1, 2, 3}, 2, 0, 0, {{4, 1, 1}, {4, 2, 5}, {4, 3, 5}}, {}, 9.0);
  const MilpModel m = BuildRrr(inst, 1);
  EXPECT_GE(m.FindVariable("y_4_1"), 0);
  EXPECT_GE(m.FindVariable("y_4_2"), 0);
  EXPECT_EQ(m.FindVariable("y_4_3"), -1);
  EXPECT_EQ(ComputeModelStats(m).variables, 3 + 2);
}

TEST(RrrTest, RankCutoffOutOfRange) {
  EXPECT_THROW(BuildRrr(testing::T1(), 3), ParameterError);
  EXPECT_THROW(BuildRrr(testing::T1(), 0), ParameterError);
  EXPECT_THROW(BuildCobra(testing::T1(), 3), ParameterError);
}

TEST(RrrTest, FullCutoffContainsEveryBalinskiRow) {
  const Instance inst = TwoByThree();
  EXPECT_EQ(RowNames(BuildRrr(inst, 3), "bal_").size(), 6u);
  EXPECT_EQ(RowNames(BuildRs(inst), "bal_").size(), 6u);
}

TEST(CobraTest, T1) {
  const MilpModel m = BuildCobra(testing::T1(), 1);
  EXPECT_EQ(ComputeModelStats(m).variables, ComputeModelStats(BuildRrr(testing::T1(), 1)).variables);
  EXPECT_DOUBLE_EQ(Solve(m), 3.0);
}

TEST(CobraTest, CoLocatedClientsMerge) {
  // Clients 4 and 5 have identical distance rows.
  const Instance inst = testing::TableInstance(
      5, {4, 5}, {1, 2, 3}, 1, 0.0, 0.0,
      {{4, 1, 2}, {4, 2, 3}, {4, 3, 4}, {5, 1, 2}, {5, 2, 3}, {5, 3, 4}}, {},
      6.0);
  const MilpModel chu = BuildCobra(inst, 2);
  const MilpModel rrr = BuildRrr(inst, 2);
  EXPECT_LT(chu.num_variables(), rrr.num_variables());
  EXPECT_EQ(chu.num_variables(), 3 + 3);
  EXPECT_EQ(chu.variables()[chu.FindVariable("y_4_1")].objective, 4.0);
  EXPECT_DOUBLE_EQ(Solve(chu), EnumerateOracle(inst).objective);
  EXPECT_DOUBLE_EQ(Solve(rrr), 4.0);
}

TEST(CobraTest, MergeMapInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = testing::RandomInstance(seed, 8, 16, 4, 1);
    const ClosestOrdering order = ComputeClosestOrdering(inst);
    const int ranks = static_cast<int>(inst.sites.size()) - inst.p + 1;
    const MergedVariableMap map = BuildMergedVariables(inst, order, ranks);
    for (int i : inst.clients) {
      ASSERT_EQ(static_cast<int>(map.slot.at(i).size()), ranks);
      for (int k = 1; k <= ranks; ++k) {
        const auto& e = map.entries[map.slot.at(i)[k - 1]];
        EXPECT_EQ(e.site, order.at(i)[k - 1]);
        EXPECT_EQ(e.rank, k);
        EXPECT_TRUE(std::count(e.members.begin(), e.members.end(), i) == 1);
      }
    }
  }
}

TEST(CobraTest, LinkCoefficientMustCountMergedVariables) {
  const Instance inst = testing::CobraTrap();
  ASSERT_DOUBLE_EQ(EnumerateOracle(inst).objective, 8.0);
  const ConflictSets cs = BuildConflictSets(inst);
  MilpModel ok = BuildCobra(inst, inst.sites, 3);
  AddDistanceD1(ok, cs);
  EXPECT_DOUBLE_EQ(Solve(ok), 8.0);
  // Site 3 carries four merged variables; the rank bound 3 cuts off the
  // optimum.
  MilpModel weak = BuildCobra(inst, inst.sites, 3, CobraLinkCoefficient::kRankBound);
  AddDistanceD1(weak, cs);
  EXPECT_DOUBLE_EQ(Solve(weak), 15.0);
}

TEST(DistanceRowsTest, T2) {
  const Instance t2 = testing::T2();
  const ConflictSets cs = BuildConflictSets(t2);
  const CliqueCoefficients co = ComputeCoefficients(cs, 2);
  MilpModel d1 = BuildRs(t2), d2 = BuildRs(t2), d3 = BuildRs(t2), d4 = BuildRs(t2);
  const int base_rows = d1.num_constraints();
  AddDistanceD1(d1, cs);
  AddDistanceD2(d2, cs, 2);
  AddDistanceD3(d3, cs, co);
  AddDistanceD4(d4, co);
  EXPECT_EQ(d1.num_constraints(), base_rows + 1);
  EXPECT_EQ(RenderAll(d1, "d1_"), (std::vector<std::string>{"1*x_1 1*x_2 <= 1"}));
  EXPECT_EQ(RenderAll(d2, "d2_"),
            (std::vector<std::string>{"2*x_1 1*x_2 <= 2", "1*x_1 2*x_2 <= 2"}));
  EXPECT_EQ(RenderAll(d3, "d3_"),
            (std::vector<std::string>{"1*x_1 1*x_2 <= 1", "1*x_1 1*x_2 <= 1"}));
  EXPECT_EQ(RenderAll(d4, "d4"), (std::vector<std::string>{"1*x_1 1*x_2 <= 1"}));
}

TEST(DistanceRowsTest, Star) {
  const Instance star = testing::StarInstance();
  const ConflictSets cs = BuildConflictSets(star);
  MilpModel m = BuildRs(star);
  AddDistanceD4(m, ComputeCoefficients(cs, 5));
  EXPECT_EQ(Render(m, "d4c_1"), "1*x_1 1*x_2 <= 1");
  EXPECT_EQ(Render(m, "d4r_1"), "2*x_1 1*x_3 1*x_4 <= 2");
  EXPECT_EQ(RowNames(m, "d4").size(), 4u);
}

TEST(DistanceRowsTest, NoConflictsNoRows) {
  const Instance t1 = testing::T1();
  const ConflictSets cs = BuildConflictSets(t1);
  MilpModel m = BuildRs(t1);
  const int rows = m.num_constraints();
  AddDistanceD1(m, cs);
  AddDistanceD2(m, cs, 1);
  AddDistanceD3(m, cs, ComputeCoefficients(cs, 1));
  AddDistanceD4(m, ComputeCoefficients(cs, 1));
  EXPECT_EQ(m.num_constraints(), rows);
}

TEST(DistanceRowsTest, D3EqualsD2WhenCoefficientsReachP) {
  // Star with p=1: n_j = min(1, q_j) = 1 = p everywhere.
  const Instance star = testing::StarInstance();
  const ConflictSets cs = BuildConflictSets(star);
  MilpModel a = BuildRs(star), b = BuildRs(star);
  AddDistanceD2(a, cs, 1);
  AddDistanceD3(b, cs, ComputeCoefficients(cs, 1));
  auto rows_a = RenderAll(a, "d2_"), rows_b = RenderAll(b, "d3_");
  EXPECT_EQ(rows_a, rows_b);
}

TEST(DistanceRowsTest, SameAcrossBases) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = testing::RandomInstance(seed, 10, 16, 3, 1);
    for (DistanceEncoding d : kAllDistances) {
      const std::string prefix = DistanceName(d);
      const auto rs = RenderAll(BuildFormulation(inst, BaseModel::kRs, d, 2), prefix);
      EXPECT_EQ(rs, RenderAll(BuildFormulation(inst, BaseModel::kRrr, d, 2), prefix));
      EXPECT_EQ(rs, RenderAll(BuildFormulation(inst, BaseModel::kCobra, d, 2), prefix));
    }
  }
}

// T1 with site 4 too close to client 3 only.
Instance T1WithForbiddenFour() {
  Instance t = testing::T1();
  t.euclidean.SetSymmetric(0, 1, 5.0);
  t.euclidean.SetSymmetric(0, 2, 5.0);
  t.euclidean.SetSymmetric(3, 1, 5.0);
  t.d2 = 1.5;
  return t;
}

TEST(EliminateTest, EmptyNIsIdentity) {
  const Instance t1 = testing::T1();
  const MilpModel m = BuildRs(t1);
  std::string diff;
  EXPECT_TRUE(StructurallyEqual(EliminateForbidden(m, BuildConflictSets(t1), 1), m, &diff))
      << diff;
}

TEST(EliminateTest, ForbiddenSiteRemoved) {
  const Instance t = T1WithForbiddenFour();
  const ConflictSets cs = BuildConflictSets(t);
  ASSERT_EQ(cs.forbidden, (std::vector<int>{4}));
  const MilpModel m = EliminateForbidden(BuildRs(t), cs, t.p);
  EXPECT_EQ(m.SiteVariable(4), -1);
  EXPECT_EQ(m.FindVariable("y_2_4"), -1);
  const SolveResult res = BranchAndBound(m);
  EXPECT_EQ(res.open_sites, (std::vector<int>{1}));
  EXPECT_DOUBLE_EQ(res.objective, 3.0);
  // The pipeline builds over J \ N directly and agrees.
  for (BaseModel b : kAllBases) {
    const MilpModel built = BuildFormulation(t, b, DistanceEncoding::kD1, 1);
    EXPECT_EQ(built.SiteVariable(4), -1);
    EXPECT_DOUBLE_EQ(Solve(built), 3.0);
  }
  std::string diff;
  EXPECT_TRUE(StructurallyEqual(
      m, BuildFormulation(t, BaseModel::kRs, DistanceEncoding::kD1, 1), &diff))
      << diff;
}

TEST(EliminateTest, AllForbiddenIsInfeasibleAtBuild) {
  Instance t = testing::T1();
  t.d2 = 10.0;
  EXPECT_THROW(EliminateForbidden(BuildRs(t), BuildConflictSets(t), 1),
               InfeasibleModelError);
  for (BaseModel b : kAllBases) {
    EXPECT_THROW(BuildFormulation(t, b, DistanceEncoding::kD3, 1), InfeasibleModelError);
  }
}

TEST(PropertiesTest, CobraNeverLarger) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = testing::RandomInstance(seed, 8, 20, 4, 1 + seed % 2);
    const int n = static_cast<int>(inst.sites.size());
    for (int r : {1, 2, n}) {
      const ModelStats rrr = ComputeModelStats(BuildRrr(inst, r));
      const ModelStats chu = ComputeModelStats(BuildCobra(inst, r));
      EXPECT_LE(chu.variables, rrr.variables);
      EXPECT_LE(chu.constraints, rrr.constraints);
    }
  }
}

TEST(PropertiesTest, MonotoneRankCutoff) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance inst = testing::RandomInstance(seed, 8, 12, 3, 1);
    const int n = static_cast<int>(AdmissibleSites(inst, BuildConflictSets(inst)).size());
    for (BaseModel b : {BaseModel::kRrr, BaseModel::kCobra}) {
      int last_rows = -1;
      double objective = -1;
      for (int r = 1; r <= n; ++r) {
        const MilpModel m = BuildFormulation(inst, b, DistanceEncoding::kD1, r);
        const int rows = static_cast<int>(RowNames(m, "bal_").size());
        EXPECT_GE(rows, last_rows);
        last_rows = rows;
        const double obj = Solve(m);
        if (objective >= 0) EXPECT_NEAR(obj, objective, 1e-9);
        objective = obj;
      }
    }
  }
}

TEST(PropertiesTest, MetadataRecorded) {
  const MilpModel m = BuildFormulation(testing::T2(), BaseModel::kCobra,
                                       DistanceEncoding::kD4, 2);
  EXPECT_EQ(m.metadata().base, "cobra");
  EXPECT_EQ(m.metadata().distance, "d4");
  EXPECT_EQ(m.metadata().r, 2);
  EXPECT_EQ(m.metadata().p, 2);
  EXPECT_EQ(m.metadata().fingerprint, InstanceFingerprint(testing::T2()));
}

}  // namespace
}  // namespace sopm
