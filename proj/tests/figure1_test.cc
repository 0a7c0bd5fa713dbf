// Copyright 2026 The treeconc Authors
//
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

#include "treeconc/figure1.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "oracles.h"
#include "treeconc/numeric_format.h"

namespace treeconc {
namespace {

TEST(BValueTest, ParsesTokens) {
  EXPECT_EQ(ParseBValue("isqrt3").token, "isqrt3");
  EXPECT_EQ(ParseBValue("isqrt3").value, 1.0 / std::sqrt(3.0));
  EXPECT_EQ(ParseBValue("isqrt2").value, 1.0 / std::sqrt(2.0));
  EXPECT_EQ(ParseBValue("0.50").token, "0.5");
  EXPECT_EQ(ParseBValue("0").token, "0");
  const auto list = ParseBList("0.5,isqrt3,0.6");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[1].token, "isqrt3");
  EXPECT_EQ(list[2].value, 0.6);
  for (const char* bad : {"1", "-0.1", "abc", "0.5x", "", "nan"}) {
    EXPECT_THROW(ParseBValue(bad), std::invalid_argument) << bad;
  }
  EXPECT_THROW(ParseBList("0.5,,0.6"), std::invalid_argument);
}

TEST(Figure1Test, FamiliesAndLimits) {
  EXPECT_EQ(ParseFigure1Family("threeone"), Figure1Family::kThreeOne);
  EXPECT_EQ(ParseFigure1Family("dary2"), Figure1Family::kBinary);
  EXPECT_THROW(ParseFigure1Family("dary3"), std::invalid_argument);
  EXPECT_EQ(Figure1MaxDepth(Figure1Family::kThreeOne), 25);
  EXPECT_EQ(Figure1MaxDepth(Figure1Family::kBinary), 30);
  const std::vector<BValue> half{ParseBValue("0.5")};
  try {
    ComputeFigure1(Figure1Family::kThreeOne, half, 26);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("vertices"), std::string::npos);
  }
  EXPECT_THROW(ComputeFigure1(Figure1Family::kBinary, half, 31), std::invalid_argument);
  EXPECT_THROW(ComputeFigure1(Figure1Family::kBinary, {}, 3), std::invalid_argument);
}

TEST(Figure1Test, BinaryClosedFormAtOneHalf) {
  const std::vector<BValue> bs{ParseBValue("0.5"), ParseBValue("0")};
  const Figure1Table table = ComputeFigure1(Figure1Family::kBinary, bs, 20);
  for (int k = 0; k <= 20; ++k) {
    double closed = 0.0;
    for (int j = 0; j <= k; ++j) closed += std::ldexp(1.0, j) * (k - j + 1) * (k - j + 1);
    const double delta = table.series[0].deltas[k];
    EXPECT_DOUBLE_EQ(delta * delta, closed) << k;
    EXPECT_EQ(table.series[0].vertex_counts[k], (std::int64_t{2} << k) - 1);
    EXPECT_NEAR(table.series[1].ratios[k], 1.0, 1e-15);
  }
  EXPECT_DOUBLE_EQ(table.series[0].ratios[2], 3.0);
}

TEST(Figure1Test, MatchesExplicitTrees) {
  const std::vector<BValue> bs = ParseBList("0.5,isqrt3,0.75");
  const Figure1Table three = ComputeFigure1(Figure1Family::kThreeOne, bs, 10);
  const Figure1Table two = ComputeFigure1(Figure1Family::kBinary, bs, 10);
  const RootedTree t3 = testing::Gen("threeone:10");
  const RootedTree t2 = testing::Gen("dary:2:10");
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (int k = 0; k <= 10; ++k) {
      const double b = bs[i].value;
      const RootedTree tk3 = TruncateToDepth(t3, k);
      const RootedTree tk2 = TruncateToDepth(t2, k);
      const std::vector<double> d3 = testing::SeriesDelta(tk3, b);
      const std::vector<double> d2 = testing::SeriesDelta(tk2, b);
      double s3 = 0.0, s2 = 0.0;
      for (double x : d3) s3 += x * x;
      for (double x : d2) s2 += x * x;
      EXPECT_NEAR(three.series[i].ratios[k], s3 / tk3.size(), 1e-11 * s3 / tk3.size());
      EXPECT_NEAR(two.series[i].ratios[k], s2 / tk2.size(), 1e-11 * s2 / tk2.size());
      EXPECT_EQ(three.series[i].vertex_counts[k], tk3.size());
    }
  }
}

TEST(Figure1Test, CsvLayout) {
  const Figure1Table table = ComputeFigure1(Figure1Family::kBinary, ParseBList("0,0.5,isqrt2"), 2);
  std::ostringstream out;
  WriteFigure1Csv(out, table);
  EXPECT_EQ(out.str(),
            "k,n_vertices,b=0,b=0.5,b=isqrt2\n"
            "0,1,1,1,1\n"
            "1,3,1,2,"
                + FormatNumber(table.series[2].ratios[1]) +
                "\n"
                "2,7,1,3," +
                FormatNumber(table.series[2].ratios[2]) + "\n");
}

}  // namespace
}  // namespace treeconc
