// Copyright 2026 The weakcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "weakcz/io.hpp"

namespace {

using namespace weakcz;

TEST(SweepCsv, HeaderAndRoundTrip) {
  const auto rows = model::sweep_phi_x(model::SetupParams::fixture(), model::linear_grid(0, 45, 17));
  std::ostringstream first;
  io::write_sweep_csv(first, rows);
  const std::string text = first.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "phi_X_deg,phi_Y_deg,phi_A_deg,F_H,F_chi,P_S,feasible");
  EXPECT_NE(text.find("\n0,,,,,,false\n"), std::string::npos);

  std::istringstream in(text);
  const auto back = io::read_sweep_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].feasible(), rows[i].feasible());
    EXPECT_NEAR(back[i].phi_x_deg, rows[i].phi_x_deg, 1e-11 * std::max(1.0, rows[i].phi_x_deg));
    if (!rows[i].feasible()) continue;
    EXPECT_NEAR(back[i].point->f_h, rows[i].point->f_h, 1e-11);
    EXPECT_NEAR(back[i].point->p_s, rows[i].point->p_s, 1e-11 * rows[i].point->p_s);
  }
  std::ostringstream second;
  io::write_sweep_csv(second, back);
  EXPECT_EQ(second.str(), text);
}

TEST(SweepCsv, Errors) {
  std::istringstream bad_header("phi,foo\n");
  EXPECT_THROW(io::read_sweep_csv(bad_header), DomainError);
  std::istringstream bad_row(std::string(io::kSweepHeader) + "\n1,2,3\n");
  EXPECT_THROW(io::read_sweep_csv(bad_row), DomainError);
}

TEST(CountsCsv, RoundTrip) {
  const std::vector<tomography::CountRecord> counts{{0, 0, 0, 5}, {35, 8, 3, 123456789}};
  std::ostringstream os;
  io::write_counts_csv(os, counts);
  EXPECT_EQ(os.str(), "input_idx,basis_idx,outcome_idx,count\n0,0,0,5\n35,8,3,123456789\n");
  std::istringstream in(os.str());
  const auto back = io::read_counts_csv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].count, 123456789u);
  std::istringstream out_of_range("input_idx,basis_idx,outcome_idx,count\n36,0,0,1\n");
  EXPECT_THROW(io::read_counts_csv(out_of_range), DomainError);
}

TEST(MatrixJson, RoundTrip) {
  std::mt19937_64 rng(61);
  const auto m = oracles::random_matrix(16, 16, rng);
  const auto j = io::matrix_to_json(m);
  EXPECT_EQ(j.at("re").size(), 16u);
  EXPECT_EQ(j.at("im").at(0).size(), 16u);
  EXPECT_EQ(io::matrix_from_json(j), m);
  EXPECT_EQ(io::matrix_from_json(nlohmann::json::parse(j.dump())), m);
}

TEST(Document, Layout) {
  const auto d = io::document({{"a", 1}}, {{"b", 2}});
  EXPECT_TRUE(d.contains("config"));
  EXPECT_TRUE(d.contains("results"));
  EXPECT_EQ(d.at("version"), io::kVersion);
}

TEST(Numbers, TwelveSignificantDigits) {
  EXPECT_EQ(io::format_number(0.1234567890123456), "0.123456789012");
  EXPECT_EQ(io::format_number(19.6875), "19.6875");
  EXPECT_THROW(io::parse_number("1.0x"), DomainError);
}

}  // namespace
