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


#include "sopm/bench.h"

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "fixtures.h"
#include "sopm/error.h"

namespace sopm {
namespace {

std::string Golden(const std::string& name) {
  std::ifstream in(std::string(SOPM_TEST_DATA_DIR) + "/golden/" + name,
                   std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<BaseModel> kBases(std::begin(kAllBases), std::end(kAllBases));
const std::vector<DistanceEncoding> kDistances(std::begin(kAllDistances),
                                               std::end(kAllDistances));

TEST(RunMatrixTest, TwelveRecordsSingleObjective) {
  const std::vector<BenchInstance> instances = {
      {"t2", testing::T2()}, {"g", testing::RandomInstance(5, 12, 12, 3, 1)}};
  const auto records = RunMatrix(instances, kBases, kDistances, {50}, 1, {});
  ASSERT_EQ(records.size(), 24u);
  std::map<std::string, std::set<double>> objectives;
  for (const BenchRecord& r : records) {
    EXPECT_EQ(r.status, "optimal") << r.message;
    ASSERT_TRUE(r.has_objective);
    objectives[r.instance].insert(r.objective);
    EXPECT_GT(r.vars, 0);
    EXPECT_GE(r.build_ms, 0.0);
    EXPECT_NEAR(r.time_ms, r.build_ms + r.solve_ms, 1e-9);
  }
  EXPECT_EQ(objectives["t2"], (std::set<double>{1.0}));
  EXPECT_EQ(objectives["g"].size(), 1u);
  // Sorted by instance, base, distance.
  EXPECT_EQ(records[0].instance, "t2");
  EXPECT_EQ(records[5].base, BaseModel::kRrr);
  EXPECT_EQ(records[5].distance, DistanceEncoding::kD2);
  // r is clamped for RRR and COBRA only.
  EXPECT_EQ(records[0].r, 50);
}

TEST(RunMatrixTest, ParallelMatchesSerial) {
  const std::vector<BenchInstance> instances = {
      {"a", testing::RandomInstance(1, 10, 12, 3, 1)},
      {"b", testing::RandomInstance(2, 10, 12, 3, 2)}};
  BenchConfig par;
  par.jobs = 4;
  const auto serial = RunMatrix(instances, kBases, kDistances, {1, 2}, 2, {});
  const auto parallel = RunMatrix(instances, kBases, kDistances, {1, 2}, 2, par);
  ASSERT_EQ(serial.size(), 2u * 12 * 2 * 2);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(serial[k].instance, parallel[k].instance);
    EXPECT_EQ(serial[k].base, parallel[k].base);
    EXPECT_EQ(serial[k].r, parallel[k].r);
    EXPECT_EQ(serial[k].rep, parallel[k].rep);
    EXPECT_EQ(serial[k].objective, parallel[k].objective);
    EXPECT_EQ(serial[k].bb_nodes, parallel[k].bb_nodes);
  }
}

TEST(RunMatrixTest, BudgetAndFailuresBecomeRecords) {
  Instance bad = testing::T1();
  bad.d2 = 10.0;  // every site forbidden
  BenchConfig cfg;
  cfg.budget.max_nodes = 0;
  const auto records = RunMatrix({{"ok", testing::T2()}, {"bad", bad}}, kBases,
                                 {DistanceEncoding::kD1}, {1}, 1, cfg);
  ASSERT_EQ(records.size(), 6u);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(records[k].status, "budget-exceeded");
  for (int k = 3; k < 6; ++k) {
    EXPECT_EQ(records[k].status, "infeasible");
    EXPECT_FALSE(records[k].has_objective);
  }
}

TEST(RunMatrixTest, EmptySelectionRejected) {
  EXPECT_THROW(RunMatrix({}, kBases, kDistances, {1}, 1, {}), Error);
  EXPECT_THROW(RunMatrix({{"t", testing::T1()}}, kBases, kDistances, {1}, 0, {}),
               Error);
}

BenchRecord Rec(const std::string& inst, BaseModel b, DistanceEncoding d,
                int rep, double ms) {
  BenchRecord r;
  r.instance = inst;
  r.base = b;
  r.distance = d;
  r.r = 50;
  r.rep = rep;
  r.status = "optimal";
  r.has_objective = true;
  r.objective = 12.5;
  r.time_ms = ms;
  r.bb_nodes = 3;
  r.lp_iters = 40;
  r.vars = 10;
  r.cons = 9;
  return r;
}

TEST(CsvTest, RoundTripAndHeader) {
  std::vector<BenchRecord> records = {
      Rec("pmed1", BaseModel::kRs, DistanceEncoding::kD1, 0, 1.25),
      Rec("a,b", BaseModel::kCobra, DistanceEncoding::kD4, 1, 2.0)};
  records[1].status = "infeasible";
  records[1].has_objective = false;
  records[1].generator_case = 2;
  std::ostringstream out;
  WriteRecordsCsv(records, out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "instance,case,base,distance,r,rep,status,objective,time_ms,"
            "bb_nodes,lp_iters,vars,cons");
  EXPECT_NE(text.find("pmed1,1,rs,d1,50,0,optimal,12.5,1.250,3,40,10,9\n"),
            std::string::npos);
  EXPECT_NE(text.find("\"a,b\",2,cobra,d4,50,1,infeasible,,2.000,"),
            std::string::npos);
  std::istringstream in(text);
  const auto back = ReadRecordsCsv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].instance, "a,b");
  EXPECT_FALSE(back[1].has_objective);
  EXPECT_EQ(back[0].objective, 12.5);
  EXPECT_EQ(back[1].generator_case, 2);
  std::istringstream bad("instance,case\n");
  EXPECT_THROW(ReadRecordsCsv(bad), ParseError);
}

TEST(ReportTest, MeanOfRepetitions) {
  const auto cells = Summarize({Rec("x", BaseModel::kRs, DistanceEncoding::kD1, 0, 10),
                                Rec("x", BaseModel::kRs, DistanceEncoding::kD1, 1, 20)});
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_DOUBLE_EQ(cells[0].mean_time_ms, 15.0);
  EXPECT_EQ(cells[0].count, 2);
  EXPECT_TRUE(cells[0].best);
}

TEST(ReportTest, SingleRecordOneRow) {
  const auto cells = Summarize({Rec("x", BaseModel::kRrr, DistanceEncoding::kD2, 0, 4)});
  const std::string table = ReportTable(cells);
  EXPECT_NE(table.find("RRR2"), std::string::npos);
  EXPECT_NE(table.find("4.00*"), std::string::npos);
  // header, one row, rule, average
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 4);
}

TEST(ReportTest, CountsAddUpAndAveragesAreColumnMeans) {
  std::vector<BenchRecord> records;
  double t = 1.0;
  for (const std::string inst : {"p1", "p2", "p3"}) {
    for (BaseModel b : kBases) {
      for (DistanceEncoding d : kDistances) {
        for (int rep = 0; rep < 2; ++rep) records.push_back(Rec(inst, b, d, rep, t += 0.5));
      }
    }
  }
  const auto cells = Summarize(records);
  int total = 0;
  for (const auto& c : cells) total += c.count;
  EXPECT_EQ(total, static_cast<int>(records.size()));
  ASSERT_EQ(cells.size(), 36u);
  // Column RS1 average over the three rows.
  double sum = 0;
  for (const auto& c : cells) {
    if (c.base == BaseModel::kRs && c.distance == DistanceEncoding::kD1) sum += c.mean_time_ms;
  }
  const std::string table = ReportTable(cells);
  const std::string avg_line = table.substr(table.find("Average"));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", sum / 3);
  EXPECT_NE(avg_line.find(buf), std::string::npos);
  // Exactly one best cell per instance row.
  EXPECT_EQ(std::count(table.begin(), table.end(), '*'), 3);
}

TEST(ReportTest, Golden) {
  std::vector<BenchRecord> records = {
      Rec("pmed1", BaseModel::kRs, DistanceEncoding::kD1, 0, 10.0),
      Rec("pmed1", BaseModel::kRs, DistanceEncoding::kD1, 1, 14.0),
      Rec("pmed1", BaseModel::kRrr, DistanceEncoding::kD3, 0, 9.5),
      Rec("pmed1", BaseModel::kCobra, DistanceEncoding::kD4, 0, 30.25),
      Rec("pmed2", BaseModel::kRs, DistanceEncoding::kD1, 0, 100.0),
      Rec("pmed2", BaseModel::kRrr, DistanceEncoding::kD3, 0, 120.0),
      Rec("pmed2", BaseModel::kCobra, DistanceEncoding::kD4, 0, 80.0)};
  for (BenchRecord& r : records) {
    r.build_ms = r.time_ms / 4;
    r.solve_ms = r.time_ms - r.build_ms;
  }
  const auto cells = Summarize(records);
  EXPECT_EQ(ReportTable(cells), Golden("report.txt"));
  EXPECT_EQ(ReportCsv(cells), Golden("report.csv"));
  ReportOptions split;
  split.split_timing = true;
  EXPECT_EQ(ReportTable(cells, split), Golden("report_split.txt"));
  // Records from a CSV carry no split.
  std::ostringstream out;
  WriteRecordsCsv(records, out);
  std::istringstream in(out.str());
  EXPECT_NE(ReportTable(Summarize(ReadRecordsCsv(in)), split).find("unavailable"),
            std::string::npos);
}

}  // namespace
}  // namespace sopm
