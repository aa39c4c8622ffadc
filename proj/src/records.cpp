#include "metrobound/records.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace metrobound {

SweepRecord SweepRecord::with_provenance(std::uint64_t seed) {
  SweepRecord r;
  r.set("seed", FieldValue(static_cast<std::int64_t>(seed)));
  r.set("version", FieldValue(std::string(kVersion)));
  return r;
}

SweepRecord& SweepRecord::set(const std::string& name, FieldValue value) {
  for (auto& [key, v] : fields_) {
    if (key == name) {
      v = std::move(value);
      return *this;
    }
  }
  fields_.emplace_back(name, std::move(value));
  return *this;
}

bool SweepRecord::has(const std::string& name) const {
  for (const auto& f : fields_) if (f.first == name) return true;
  return false;
}

const FieldValue& SweepRecord::get(const std::string& name) const {
  for (const auto& f : fields_) if (f.first == name) return f.second;
  throw std::out_of_range("record has no field '" + name + "'");
}

double SweepRecord::number(const std::string& name) const {
  const FieldValue& v = get(name);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  throw std::invalid_argument("field '" + name + "' is not numeric");
}

bool SweepRecord::flag(const std::string& name) const {
  const FieldValue& v = get(name);
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  throw std::invalid_argument("field '" + name + "' is not boolean");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[512];
  const auto fmt = std::abs(x) < 1e-4 ? std::chars_format::scientific : std::chars_format::fixed;
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, fmt);
  return std::string(buf, res.ptr);
}

std::string format_field(const FieldValue& v) {
  struct Visitor {
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string out = "\"";
      for (char c : s) {
        if (c == '"') out += '"';
        out += c;
      }
      return out + "\"";
    }
  };
  return std::visit(Visitor{}, v);
}

std::vector<std::string> csv_header(const std::vector<SweepRecord>& records) {
  std::vector<std::string> header;
  for (const auto& r : records) {
    for (const auto& f : r.fields()) {
      if (std::find(header.begin(), header.end(), f.first) == header.end()) header.push_back(f.first);
    }
  }
  return header;
}

void write_csv_header(std::ostream& os, const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
}

void write_csv_rows(std::ostream& os, const std::vector<SweepRecord>& records, const std::vector<std::string>& header) {
  for (const auto& r : records) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) os << ',';
      if (r.has(header[i])) os << format_field(r.get(header[i]));
    }
    os << '\n';
  }
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  const auto header = csv_header(records);
  write_csv_header(os, header);
  write_csv_rows(os, records, header);
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

nlohmann::json to_json(const SweepRecord& r) {
  // The name list preserves field order.
  nlohmann::json obj = nlohmann::json::object();
  nlohmann::json order = nlohmann::json::array();
  for (const auto& [name, value] : r.fields()) {
    order.push_back(name);
    std::visit([&](const auto& x) { obj[name] = x; }, value);
  }
  return {{"fields", order}, {"values", obj}};
}

nlohmann::json to_json(const std::vector<SweepRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  return arr;
}

std::vector<SweepRecord> records_from_json(const nlohmann::json& j) {
  std::vector<SweepRecord> out;
  for (const auto& item : j) {
    SweepRecord r;
    const auto& values = item.at("values");
    for (const auto& name_json : item.at("fields")) {
      const std::string name = name_json.get<std::string>();
      const auto& v = values.at(name);
      if (v.is_boolean()) r.set(name, FieldValue(v.get<bool>()));
      else if (v.is_number_integer()) r.set(name, FieldValue(v.get<std::int64_t>()));
      else if (v.is_number_float()) r.set(name, FieldValue(v.get<double>()));
      else if (v.is_string()) r.set(name, FieldValue(v.get<std::string>()));
      else throw std::invalid_argument("unsupported JSON value for field '" + name + "'");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace metrobound
