#pragma once

#include <nlohmann/json.hpp>

#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace metrobound {

inline constexpr const char* kVersion = "1.0.0";

using FieldValue = std::variant<std::int64_t, double, bool, std::string>;

/// One row of figure/table output: ordered named fields.
class SweepRecord {
 public:
  SweepRecord() = default;
  /// Starts a record with the run seed and library version.
  static SweepRecord with_provenance(std::uint64_t seed);

  SweepRecord& set(const std::string& name, FieldValue value);
  SweepRecord& set(const std::string& name, double value) { return set(name, FieldValue(value)); }
  SweepRecord& set(const std::string& name, bool value) { return set(name, FieldValue(value)); }
  SweepRecord& set(const std::string& name, const char* value) { return set(name, FieldValue(std::string(value))); }
  template <std::integral I>
    requires(!std::same_as<I, bool>)
  SweepRecord& set(const std::string& name, I value) {
    return set(name, FieldValue(static_cast<std::int64_t>(value)));
  }
  bool has(const std::string& name) const;
  const FieldValue& get(const std::string& name) const;
  double number(const std::string& name) const;
  bool flag(const std::string& name) const;

  const std::vector<std::pair<std::string, FieldValue>>& fields() const { return fields_; }
  bool operator==(const SweepRecord&) const = default;

 private:
  std::vector<std::pair<std::string, FieldValue>> fields_;
};

/// Shortest round-trip decimal; fixed notation unless 0 < |x| < 1e-4.
std::string format_number(double x);
std::string format_field(const FieldValue& v);

/// Header row from the union of field names (first-seen order); missing cells empty.
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::vector<std::string> csv_header(const std::vector<SweepRecord>& records);
void write_csv_header(std::ostream& os, const std::vector<std::string>& header);
/// Rows only, in the given column order.
void write_csv_rows(std::ostream& os, const std::vector<SweepRecord>& records, const std::vector<std::string>& header);
std::string to_csv(const std::vector<SweepRecord>& records);

nlohmann::json to_json(const SweepRecord& record);
nlohmann::json to_json(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> records_from_json(const nlohmann::json& j);

}  // namespace metrobound
