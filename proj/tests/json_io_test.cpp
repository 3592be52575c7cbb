// Copyright 2026 The qflip Authors
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

#include "qflip/json_io.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

using namespace qflip;
using qflip::io::json;

namespace {

std::string error_of(const json& j) {
  try {
    io::channel_from_json(j);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(json_io, channel_roundtrip) {
  Rng rng(1);
  const KrausChannel ch = random_bistochastic(3, 2, rng);
  const json j = io::channel_to_json(ch);
  EXPECT_EQ(j["dim"], 3);
  EXPECT_FALSE(j.contains("dim_out"));
  const KrausChannel back = io::channel_from_json(json::parse(j.dump()));
  ASSERT_EQ(back.kraus().size(), ch.kraus().size());
  for (std::size_t k = 0; k < ch.kraus().size(); ++k) EXPECT_EQ(back.kraus()[k], ch.kraus()[k]);
}

TEST(json_io, rectangular_channel_roundtrip) {
  const DensityMatrix omega = DensityMatrix::pure(plus_ket());
  const KrausChannel ch = append_state_channel(2, omega);
  const json j = io::channel_to_json(ch);
  EXPECT_EQ(j["dim_out"], 4);
  EXPECT_TRUE(channels_equal(io::channel_from_json(j), ch));
}

TEST(json_io, flat_pair_list_accepted) {
  const json j = json::parse(R"({"dim": 2, "kraus": [[[0,0],[1,0],[1,0],[0,0]]]})");
  const KrausChannel ch = io::channel_from_json(j);
  EXPECT_TRUE(channels_equal(ch, unitary_channel(pauli_x())));
  const json nested = json::parse(R"({"dim": 2, "kraus": [[[[0,0],[0,-1]],[[0,1],[0,0]]]]})");
  EXPECT_TRUE(channels_equal(io::channel_from_json(nested), unitary_channel(pauli_y())));
}

TEST(json_io, error_messages_name_the_invariant) {
  EXPECT_EQ(error_of(json::parse(R"({"kraus": []})")).rfind("schema:", 0), 0u);
  EXPECT_EQ(error_of(json::parse(R"({"dim": 2})")).rfind("schema:", 0), 0u);
  EXPECT_EQ(error_of(json::parse(R"({"dim": 2, "kraus": [[[1, "a"]]]})")).rfind("schema:", 0), 0u);
  EXPECT_EQ(error_of(json::parse(R"({"dim": 2, "kraus": [[[[1,0],[0,0]],[[0,0]]]]})")).rfind("shape:", 0), 0u);
  EXPECT_EQ(error_of(json::parse(R"({"dim": 3, "kraus": [[[[1,0],[0,0]],[[0,0],[1,0]]]]})")).rfind("shape:", 0),
            0u);
  EXPECT_NE(error_of(json::parse(R"({"dim": 2, "kraus": [[[[1,0],[0,0]],[[0,0],[0,0]]]]})"))
                .find("trace preservation"),
            std::string::npos);
  EXPECT_EQ(error_of(json::parse("[1, 2]")).rfind("schema:", 0), 0u);
}

TEST(json_io, load_channel_from_file) {
  const auto path = std::filesystem::temp_directory_path() / "qflip_json_io_test.json";
  {
    std::ofstream out(path);
    out << io::channel_to_json(dephasing_y(0.2)).dump();
  }
  EXPECT_TRUE(channels_equal(io::load_channel(path), dephasing_y(0.2)));
  {
    std::ofstream out(path);
    out << "{not json";
  }
  EXPECT_THROW(io::load_channel(path), ValidationError);
  std::filesystem::remove(path);
  EXPECT_THROW(io::load_channel(path), IoError);
}

TEST(json_io, complex_encoding) {
  EXPECT_EQ(io::to_json(Complex(1.5, -2.0)), json::parse("[1.5, -2.0]"));
  Operator m(1, 2);
  m << Complex(0, 1), 2.0;
  EXPECT_EQ(io::to_json(m), json::parse("[[[0.0, 1.0], [2.0, 0.0]]]"));
}
