#include "qsearch/report.hpp"

#include <cstdio>

#include "qsearch/errors.hpp"

namespace qsearch::report {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string json_quote(const std::string& value) {
  std::string out;
  out.reserve(value.size() + 2);
  out.push_back('"');
  for (const char ch : value) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
  return out;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::Object;
  return j;
}

Json Json::array() {
  Json j;
  j.kind_ = Kind::Array;
  return j;
}

Json Json::str(std::string value) {
  Json j;
  j.kind_ = Kind::String;
  j.scalar_ = json_quote(value);
  return j;
}

Json Json::number(double value) {
  Json j;
  j.kind_ = Kind::Double;
  j.scalar_ = format_double(value);
  return j;
}

Json Json::integer(std::int64_t value) {
  Json j;
  j.kind_ = Kind::Int;
  j.scalar_ = std::to_string(value);
  return j;
}

Json Json::boolean(bool value) {
  Json j;
  j.kind_ = Kind::Bool;
  j.scalar_ = value ? "true" : "false";
  return j;
}

Json& Json::set(const std::string& key, Json value) {
  if (kind_ != Kind::Object) throw config_error("set() on a non-object JSON value");
  for (auto& [existing, held] : members_) {
    if (existing == key) {
      held = std::move(value);
      return *this;
    }
  }
  members_.emplace_back(key, std::move(value));
  return *this;
}

Json& Json::push(Json value) {
  if (kind_ != Kind::Array) throw config_error("push() on a non-array JSON value");
  elements_.push_back(std::move(value));
  return *this;
}

void Json::dump_to(std::string& out, int depth) const {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (kind_) {
    case Kind::Object: {
      if (members_.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      for (std::size_t i = 0; i < members_.size(); ++i) {
        out += pad_in;
        out += json_quote(members_[i].first);
        out += ": ";
        members_[i].second.dump_to(out, depth + 1);
        if (i + 1 < members_.size()) out += ",";
        out += "\n";
      }
      out += pad;
      out += "}";
      return;
    }
    case Kind::Array: {
      if (elements_.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < elements_.size(); ++i) {
        out += pad_in;
        elements_[i].dump_to(out, depth + 1);
        if (i + 1 < elements_.size()) out += ",";
        out += "\n";
      }
      out += pad;
      out += "]";
      return;
    }
    default:
      out += scalar_;
  }
}

std::string Json::dump() const {
  std::string out;
  dump_to(out, 0);
  out += "\n";
  return out;
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

void Csv::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw config_error("CSV row width does not match header");
  }
  rows_.push_back(std::move(cells));
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out;
  out.reserve(cell.size() + 2);
  out.push_back('"');
  for (const char ch : cell) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string Csv::dump() const {
  std::string out;
  const auto emit_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += csv_escape(row[i]);
    }
    out.push_back('\n');
  };
  emit_row(header_);
  for (const auto& row : rows_) emit_row(row);
  return out;
}

}  // namespace qsearch::report
