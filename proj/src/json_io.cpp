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

#include <cmath>
#include <fstream>

namespace qflip::io {

namespace {

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError("schema: complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

bool is_complex_pair(const json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const Operator& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Operator operator_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("schema: matrix must be a nonempty array");
  if (is_complex_pair(j[0])) {
    const auto n = static_cast<Eigen::Index>(j.size());
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (d * d != n) throw ValidationError("shape: flat matrix length is not a perfect square");
    Operator m(d, d);
    for (Eigen::Index k = 0; k < n; ++k) m(k / d, k % d) = complex_from_json(j[static_cast<std::size_t>(k)]);
    return m;
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ValidationError("schema: matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Operator m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("shape: matrix rows have unequal lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json channel_to_json(const KrausChannel& ch) {
  json kraus = json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(to_json(k));
  json out{{"dim", ch.dim_in()}};
  if (!ch.is_square()) out["dim_out"] = ch.dim_out();
  out["kraus"] = std::move(kraus);
  return out;
}

KrausChannel channel_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("schema: channel document must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw ValidationError("schema: \"dim\" must be a positive integer");
  }
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    throw ValidationError("schema: \"kraus\" must be a nonempty array of matrices");
  }
  const auto d = static_cast<Eigen::Index>(j["dim"].get<long long>());
  Eigen::Index dout = d;
  if (j.contains("dim_out")) {
    if (!j["dim_out"].is_number_integer() || j["dim_out"].get<long long>() < 1) {
      throw ValidationError("schema: \"dim_out\" must be a positive integer");
    }
    dout = static_cast<Eigen::Index>(j["dim_out"].get<long long>());
  }
  std::vector<Operator> kraus;
  for (const auto& entry : j["kraus"]) {
    Operator k = operator_from_json(entry);
    if (k.rows() != dout || k.cols() != d) {
      throw ValidationError("shape: Kraus operator is not dim_out x dim");
    }
    kraus.push_back(std::move(k));
  }
  return KrausChannel(std::move(kraus));
}

KrausChannel load_channel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open channel file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("schema: invalid JSON: ") + e.what());
  }
  return channel_from_json(j);
}

}  // namespace qflip::io
