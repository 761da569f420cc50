// Copyright 2026, the fpstream developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fpstream/model.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace fpstream {

namespace {

bool valid_sensor_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u > 0x20 && u < 0x7f && c != ',';
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

MissingUtilityError::MissingUtilityError(const std::string& sensor)
    : Error("no utility entry for sensor '" + sensor + "'"), sensor_(sensor) {}

SensorId::SensorId(std::string token) : token_(std::move(token)) {
  if (token_.empty()) {
    throw Error("sensor id must be non-empty");
  }
  for (char c : token_) {
    if (!valid_sensor_char(c)) {
      throw Error("sensor id '" + token_ + "' contains whitespace, comma or non-printable byte");
    }
  }
}

Watts Watts::parse(std::string_view text) {
  if (text.empty()) {
    throw Error("empty watt value");
  }
  if (text[0] == '-' || text[0] == '+') {
    throw Error("watt value '" + std::string(text) + "' must be an unsigned decimal");
  }
  std::size_t dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? "" : text.substr(dot + 1);
  if (int_part.empty() || (dot != std::string_view::npos && frac_part.empty())) {
    throw Error("malformed watt value '" + std::string(text) + "'");
  }
  if (int_part.size() > 12) {
    throw Error("watt value '" + std::string(text) + "' out of range");
  }
  if (frac_part.size() > 6) {
    throw Error("watt value '" + std::string(text) + "' has more than six decimal places");
  }
  std::int64_t micros = 0;
  for (char c : int_part) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error("malformed watt value '" + std::string(text) + "'");
    }
    micros = micros * 10 + (c - '0');
  }
  micros *= kScale;
  std::int64_t frac = 0;
  std::int64_t scale = kScale;
  for (char c : frac_part) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error("malformed watt value '" + std::string(text) + "'");
    }
    scale /= 10;
    frac += (c - '0') * scale;
  }
  return Watts(micros + frac);
}

std::string Watts::str() const {
  std::int64_t units = micros_ / kScale;
  std::int64_t frac = micros_ % kScale;
  if (frac == 0) {
    return std::to_string(units);
  }
  std::string digits = std::to_string(frac);
  digits.insert(0, 6 - digits.size(), '0');
  while (digits.back() == '0') {
    digits.pop_back();
  }
  return std::to_string(units) + "." + digits;
}

Watts Watts::times(std::int64_t count) const {
  if (count < 0) {
    throw Error("negative count in utility product");
  }
  __int128 p = static_cast<__int128>(micros_) * count;
  if (p > std::numeric_limits<std::int64_t>::max()) {
    throw Error("utility product overflow");
  }
  return Watts(static_cast<std::int64_t>(p));
}

Watts Watts::fraction_ceil(Watts fraction) const {
  __int128 p = static_cast<__int128>(micros_) * fraction.micros_;
  __int128 q = (p + kScale - 1) / kScale;
  return Watts(static_cast<std::int64_t>(q));
}

EventTransaction::EventTransaction(Tid tid, std::vector<SensorId> sensors)
    : tid_(tid), sensors_(std::move(sensors)) {
  if (tid_ < 1) {
    throw Error("transaction id must be >= 1, got " + std::to_string(tid_));
  }
  std::sort(sensors_.begin(), sensors_.end());
  sensors_.erase(std::unique(sensors_.begin(), sensors_.end()), sensors_.end());
}

bool EventTransaction::contains(const SensorId& s) const {
  return std::binary_search(sensors_.begin(), sensors_.end(), s);
}

Batch::Batch(BatchNo batch_no, std::vector<EventTransaction> transactions)
    : batch_no_(batch_no), transactions_(std::move(transactions)) {
  if (batch_no_ < 1) {
    throw Error("batch number must be >= 1");
  }
  for (std::size_t i = 1; i < transactions_.size(); ++i) {
    if (transactions_[i].tid() <= transactions_[i - 1].tid()) {
      throw Error("transaction ids must strictly increase within a batch");
    }
  }
}

WindowConfig::WindowConfig(std::size_t batches_per_window, std::size_t transactions_per_batch)
    : batches_per_window(batches_per_window), transactions_per_batch(transactions_per_batch) {
  if (batches_per_window < 1 || transactions_per_batch < 1) {
    throw Error("window must hold at least one batch of at least one transaction");
  }
}

UtilityTable UtilityTable::unit() {
  UtilityTable t;
  t.unit_ = true;
  return t;
}

UtilityTable UtilityTable::load_csv(std::istream& in) {
  UtilityTable t;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (!saw_header) {
      if (line != "sensor,watts") {
        throw ParseError(line_no, "expected header 'sensor,watts'");
      }
      saw_header = true;
      continue;
    }
    std::size_t comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError(line_no, "expected exactly two comma-separated fields");
    }
    try {
      SensorId sensor(line.substr(0, comma));
      Watts eu = Watts::parse(std::string_view(line).substr(comma + 1));
      if (t.entries_.contains(sensor)) {
        throw Error("duplicate sensor '" + sensor.str() + "'");
      }
      t.entries_.emplace(std::move(sensor), eu);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!saw_header) {
    throw ParseError(line_no == 0 ? 1 : line_no, "utility table is empty");
  }
  return t;
}

void UtilityTable::set(const SensorId& sensor, Watts eu) {
  entries_.insert_or_assign(sensor, eu);
}

Watts UtilityTable::external_utility(const SensorId& sensor) const {
  if (unit_) {
    return Watts::whole(1);
  }
  auto it = entries_.find(sensor);
  if (it == entries_.end()) {
    throw MissingUtilityError(sensor.str());
  }
  return it->second;
}

bool pattern_result_less(const PatternResult& a, const PatternResult& b) {
  if (a.pattern.size() != b.pattern.size()) {
    return a.pattern.size() < b.pattern.size();
  }
  return a.pattern < b.pattern;
}

Watts transaction_utility(const EventTransaction& t, const UtilityTable& u) {
  Watts total;
  for (const SensorId& s : t.sensors()) {
    total += u.external_utility(s);
  }
  return total;
}

Watts pattern_unit_utility(std::span<const SensorId> pattern, std::int64_t support,
                           const UtilityTable& u) {
  if (support < 0) {
    throw Error("pattern support must be non-negative");
  }
  Watts per_occurrence;
  for (const SensorId& s : pattern) {
    per_occurrence += u.external_utility(s);
  }
  return per_occurrence.times(support);
}

EventTransaction parse_transaction_line(std::string_view line, std::size_t line_no) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError(line_no, "record is not a JSON object");
  }
  if (!j.contains("t") || !j["t"].is_number_integer()) {
    throw ParseError(line_no, "missing or non-integer 't' field");
  }
  Tid tid = j["t"].get<Tid>();
  if (!j.contains("sensors") || !j["sensors"].is_array()) {
    throw ParseError(line_no, "missing or non-array 'sensors' field");
  }
  std::vector<SensorId> sensors;
  sensors.reserve(j["sensors"].size());
  try {
    for (const auto& item : j["sensors"]) {
      if (!item.is_string()) {
        throw Error("sensor entries must be strings");
      }
      sensors.emplace_back(item.get<std::string>());
    }
    return EventTransaction(tid, std::move(sensors));
  } catch (const Error& e) {
    throw ParseError(line_no, e.what());
  }
}

std::string serialize_transaction(const EventTransaction& t) {
  nlohmann::json sensors = nlohmann::json::array();
  for (const SensorId& s : t.sensors()) {
    sensors.push_back(s.str());
  }
  std::ostringstream os;
  os << "{\"t\":" << t.tid() << ",\"sensors\":" << sensors.dump() << "}";
  return os.str();
}

}  // namespace fpstream
