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

#ifndef FPSTREAM_MODEL_HPP
#define FPSTREAM_MODEL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fpstream {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input record or table row; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A sensor seen in the stream has no entry in the utility table.
class MissingUtilityError : public Error {
 public:
  explicit MissingUtilityError(const std::string& sensor);
  const std::string& sensor() const { return sensor_; }

 private:
  std::string sensor_;
};

// Sensor identifier token: non-empty printable ASCII with no commas or
// whitespace. Ordering is lexicographic byte order, which is the canonical
// item order used everywhere a deterministic order is needed.
class SensorId {
 public:
  explicit SensorId(std::string token);
  const std::string& str() const { return token_; }
  friend auto operator<=>(const SensorId&, const SensorId&) = default;

 private:
  std::string token_;
};

using Tid = std::int64_t;
using BatchNo = std::int64_t;

// Non-negative watt amount with up to six decimal places, held as an exact
// count of micro-watts so sums, thresholds and report output never pick up
// floating point noise.
class Watts {
 public:
  static constexpr std::int64_t kScale = 1000000;

  constexpr Watts() = default;

  // Parses a non-negative decimal like "3", "0.25" or "12.5". Rejects
  // signs, exponents and more than six fractional digits.
  static Watts parse(std::string_view text);

  static constexpr Watts from_micros(std::int64_t micros) { return Watts(micros); }
  static constexpr Watts whole(std::int64_t units) { return Watts(units * kScale); }

  constexpr std::int64_t micros() const { return micros_; }
  constexpr bool is_zero() const { return micros_ == 0; }

  // Canonical decimal rendering: no exponent, no trailing zeros, always a
  // leading integer part ("6", "6.5", "0.25").
  std::string str() const;

  friend constexpr auto operator<=>(Watts, Watts) = default;

  Watts& operator+=(Watts o) {
    micros_ += o.micros_;
    return *this;
  }
  friend Watts operator+(Watts a, Watts b) { return a += b; }

  // count * this, for pattern utilities (count >= 0).
  Watts times(std::int64_t count) const;

  // Smallest representable amount >= this * fraction, where fraction is a
  // dimensionless decimal (e.g. 0.1). Used for fraction-of-total thresholds;
  // ceiling keeps ">= threshold" comparisons exact.
  Watts fraction_ceil(Watts fraction) const;

 private:
  constexpr explicit Watts(std::int64_t micros) : micros_(micros) {}
  std::int64_t micros_ = 0;
};

// One time slot of the stream: the set of sensors that were ON. Sensors are
// deduplicated and kept in canonical order.
class EventTransaction {
 public:
  EventTransaction(Tid tid, std::vector<SensorId> sensors);

  Tid tid() const { return tid_; }
  const std::vector<SensorId>& sensors() const { return sensors_; }
  bool empty() const { return sensors_.empty(); }
  bool contains(const SensorId& s) const;

 private:
  Tid tid_;
  std::vector<SensorId> sensors_;
};

// A fixed-size consecutive group of transactions; the unit of window sliding.
class Batch {
 public:
  Batch(BatchNo batch_no, std::vector<EventTransaction> transactions);

  BatchNo batch_no() const { return batch_no_; }
  const std::vector<EventTransaction>& transactions() const { return transactions_; }

 private:
  BatchNo batch_no_;
  std::vector<EventTransaction> transactions_;
};

struct WindowConfig {
  WindowConfig(std::size_t batches_per_window, std::size_t transactions_per_batch);

  std::size_t batches_per_window;    // M
  std::size_t transactions_per_batch;

  std::size_t window_transactions() const {
    return batches_per_window * transactions_per_batch;
  }
};

// Per-sensor external utility (power rating). Either an explicit table or
// the unit table, which rates every sensor at one watt.
class UtilityTable {
 public:
  UtilityTable() = default;

  static UtilityTable unit();

  // CSV with header "sensor,watts", one row per sensor. Negative watt
  // values and duplicate sensors are rejected.
  static UtilityTable load_csv(std::istream& in);

  void set(const SensorId& sensor, Watts eu);
  Watts external_utility(const SensorId& sensor) const;
  bool is_unit() const { return unit_; }
  std::size_t size() const { return entries_.size(); }

 private:
  bool unit_ = false;
  std::map<SensorId, Watts> entries_;
};

// One mined pattern: sensors in canonical order plus its exact measures.
struct PatternResult {
  std::vector<SensorId> pattern;
  std::int64_t support = 0;
  Watts utility;
  std::int64_t window_id = 0;

  friend bool operator==(const PatternResult&, const PatternResult&) = default;
};

// Result ordering: pattern size ascending, then lexicographic.
bool pattern_result_less(const PatternResult& a, const PatternResult& b);

// tu(t): sum of the external utilities of t's sensors; 0 for an empty set.
Watts transaction_utility(const EventTransaction& t, const UtilityTable& u);

// support * sum of external utilities over the pattern. Under the binary
// ON/OFF event model this is the exact pattern utility.
Watts pattern_unit_utility(std::span<const SensorId> pattern, std::int64_t support,
                           const UtilityTable& u);

// One JSONL event record: {"t": <int>, "sensors": ["<id>", ...]}.
// Duplicate sensors are deduplicated silently; anything else malformed
// raises ParseError tagged with line_no.
EventTransaction parse_transaction_line(std::string_view line, std::size_t line_no = 0);

// Canonical serialization of a transaction; parse(serialize(t)) == t.
std::string serialize_transaction(const EventTransaction& t);

}  // namespace fpstream

#endif  // FPSTREAM_MODEL_HPP
