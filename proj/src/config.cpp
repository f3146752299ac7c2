// Copyright 2026 The noiseless-privacy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "noiseless/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace noiseless {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& msg) {
  throw ConfigError(ConfigErrorKind::kSchema, "config schema: " + msg);
}

[[noreturn]] void invariant_error(const std::string& msg) {
  throw ConfigError(ConfigErrorKind::kInvariant, "config invariant: " + msg);
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (allowed.count(key) == 0) {
      schema_error(where + ": unknown key \"" + key + "\"");
    }
  }
}

double number_at(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number()) schema_error(where + ": \"" + key + "\" must be a number");
  return obj.at(key).get<double>();
}

std::int64_t integer_at(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.at(key).is_number_integer()) {
    schema_error(where + ": \"" + key + "\" must be an integer");
  }
  return obj.at(key).get<std::int64_t>();
}

DistributionSpec parse_record(const json& rec, const std::string& where,
                              std::vector<std::string>& notes) {
  if (!rec.is_object()) schema_error(where + ": record group must be an object");

  std::int64_t count = 1;
  if (rec.contains("count")) count = integer_at(rec, "count", where);

  if (rec.contains("data")) {
    check_keys(rec, {"data", "count"}, where);
    if (!rec.at("data").is_array() || rec.at("data").empty()) {
      schema_error(where + ": \"data\" must be a non-empty array of numbers");
    }
    std::vector<double> values;
    values.reserve(rec.at("data").size());
    for (const auto& v : rec.at("data")) {
      if (!v.is_number()) schema_error(where + ": \"data\" must contain only numbers");
      values.push_back(v.get<double>());
    }
    notes.push_back(where +
                    ": support fitted from a raw data column; downstream guarantees "
                    "are only as good as that empirical fit");
    try {
      return DistributionSpec::from_data(values, count);
    } catch (const std::invalid_argument& e) {
      invariant_error(where + ": " + e.what());
    }
  }

  if (!rec.contains("family") || !rec.at("family").is_string()) {
    schema_error(where + ": missing string key \"family\"");
  }
  const std::string family = rec.at("family").get<std::string>();

  if (family == "bernoulli") {
    check_keys(rec, {"family", "p", "count"}, where);
    if (!rec.contains("p")) schema_error(where + ": bernoulli needs \"p\"");
    return DistributionSpec::bernoulli(number_at(rec, "p", where), count);
  }
  if (family == "discrete") {
    check_keys(rec, {"family", "support", "count"}, where);
    if (!rec.contains("support") || !rec.at("support").is_array() ||
        rec.at("support").empty()) {
      schema_error(where + ": discrete needs a non-empty \"support\" array");
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& entry : rec.at("support")) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        schema_error(where + ": each support entry must be a [value, probability] pair");
      }
      pts.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    return DistributionSpec::discrete(std::move(pts), count);
  }
  if (family == "moments") {
    check_keys(rec,
               {"family", "mean", "variance", "abs_third", "fourth", "support_min",
                "support_max", "count"},
               where);
    if (!rec.contains("mean") || !rec.contains("variance")) {
      schema_error(where + ": moments needs \"mean\" and \"variance\"");
    }
    DistributionSpec s = DistributionSpec::from_moments(
        number_at(rec, "mean", where), number_at(rec, "variance", where), std::nullopt,
        std::nullopt, count);
    if (rec.contains("abs_third")) s.abs_third = number_at(rec, "abs_third", where);
    if (rec.contains("fourth")) s.fourth = number_at(rec, "fourth", where);
    if (rec.contains("support_min")) s.support_min = number_at(rec, "support_min", where);
    if (rec.contains("support_max")) s.support_max = number_at(rec, "support_max", where);
    return s;
  }
  schema_error(where + ": unknown family \"" + family + "\"");
}

DependencyBlock parse_block(const json& blk, const std::string& where) {
  if (!blk.is_object()) schema_error(where + ": block must be an object");
  check_keys(blk, {"indices", "joint"}, where);
  if (!blk.contains("indices") || !blk.at("indices").is_array()) {
    schema_error(where + ": block needs an \"indices\" array");
  }
  if (!blk.contains("joint") || !blk.at("joint").is_array()) {
    schema_error(where + ": block needs a \"joint\" array");
  }
  DependencyBlock out;
  for (const auto& idx : blk.at("indices")) {
    if (!idx.is_number_integer()) schema_error(where + ": indices must be integers");
    out.indices.push_back(idx.get<std::int64_t>());
  }
  for (const auto& entry : blk.at("joint")) {
    if (!entry.is_object()) schema_error(where + ": joint entries must be objects");
    check_keys(entry, {"values", "prob"}, where);
    if (!entry.contains("values") || !entry.at("values").is_array() ||
        !entry.contains("prob") || !entry.at("prob").is_number()) {
      schema_error(where + ": joint entries need \"values\" (array) and \"prob\" (number)");
    }
    std::vector<double> tuple;
    for (const auto& v : entry.at("values")) {
      if (!v.is_number()) schema_error(where + ": joint values must be numbers");
      tuple.push_back(v.get<double>());
    }
    out.joint.emplace_back(std::move(tuple), entry.at("prob").get<double>());
  }
  return out;
}

IngestResult ingest_json(const json& doc) {
  if (!doc.is_object()) schema_error("top level must be an object");
  check_keys(doc,
             {"records", "sensitivity", "dependency_bound", "gamma", "total_variance",
              "remaining_total_variance", "compromised", "dependency_blocks"},
             "top level");
  if (!doc.contains("records") || !doc.at("records").is_array() ||
      doc.at("records").empty()) {
    schema_error("top level: \"records\" must be a non-empty array");
  }
  if (!doc.contains("sensitivity")) schema_error("top level: missing \"sensitivity\"");

  IngestResult out;
  for (std::size_t i = 0; i < doc.at("records").size(); ++i) {
    out.data.records.push_back(parse_record(doc.at("records")[i],
                                            "records[" + std::to_string(i) + "]",
                                            out.notes));
  }
  out.data.sensitivity = number_at(doc, "sensitivity", "top level");
  if (doc.contains("dependency_bound")) {
    out.data.dependency_bound = integer_at(doc, "dependency_bound", "top level");
  }
  if (doc.contains("total_variance")) {
    out.data.total_variance = number_at(doc, "total_variance", "top level");
  }
  if (doc.contains("dependency_blocks")) {
    if (!doc.at("dependency_blocks").is_array()) {
      schema_error("top level: \"dependency_blocks\" must be an array");
    }
    for (std::size_t b = 0; b < doc.at("dependency_blocks").size(); ++b) {
      out.data.blocks.push_back(parse_block(doc.at("dependency_blocks")[b],
                                            "dependency_blocks[" + std::to_string(b) + "]"));
    }
  }

  out.adversary.dependency_bound = out.data.dependency_bound;
  if (doc.contains("gamma")) out.adversary.gamma = number_at(doc, "gamma", "top level");
  if (doc.contains("compromised")) {
    if (!doc.at("compromised").is_array()) {
      schema_error("top level: \"compromised\" must be an array of record indices");
    }
    std::vector<std::int64_t> idx;
    for (const auto& v : doc.at("compromised")) {
      if (!v.is_number_integer()) {
        schema_error("top level: compromised indices must be integers");
      }
      idx.push_back(v.get<std::int64_t>());
    }
    out.adversary.compromised = std::move(idx);
  }
  if (doc.contains("remaining_total_variance")) {
    out.remaining_total_variance = number_at(doc, "remaining_total_variance", "top level");
    if (!(*out.remaining_total_variance > 0.0)) {
      invariant_error("remaining_total_variance must be > 0");
    }
  }

  try {
    out.data.validate();
    out.adversary.validate(out.data.n());
  } catch (const std::invalid_argument& e) {
    invariant_error(e.what());
  }
  return out;
}

}  // namespace

IngestResult ingest_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(ConfigErrorKind::kParse, "config: cannot open \"" + path + "\"");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_config_text(buf.str());
}

IngestResult ingest_config_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigErrorKind::kParse, std::string("config: ") + e.what());
  }
  return ingest_json(doc);
}

}  // namespace noiseless
