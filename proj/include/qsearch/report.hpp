#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

// Deterministic result emitters. Both formats preserve insertion order and
// print doubles with 17 significant digits, so identical runs produce
// byte-identical documents and every double round-trips exactly.

namespace qsearch::report {

// Shortest-round-trip decimal rendering of a double (printf %.17g).
std::string format_double(double value);

// Ordered JSON value: objects keep their keys in insertion order.
class Json {
 public:
  static Json object();
  static Json array();
  static Json str(std::string value);
  static Json number(double value);
  static Json integer(std::int64_t value);
  static Json boolean(bool value);

  // Object: insert or overwrite a key (insertion order kept on first insert).
  Json& set(const std::string& key, Json value);
  // Array: append an element.
  Json& push(Json value);

  bool is_object() const { return kind_ == Kind::Object; }

  // Render with two-space indentation and a trailing newline.
  std::string dump() const;

 private:
  enum class Kind { Object, Array, String, Double, Int, Bool };

  Json() = default;
  void dump_to(std::string& out, int depth) const;

  Kind kind_ = Kind::Object;
  std::string scalar_;  // rendered payload for leaf kinds
  std::vector<std::pair<std::string, Json>> members_;
  std::vector<Json> elements_;
};

// Escaped, quoted JSON string literal.
std::string json_quote(const std::string& value);

// Minimal CSV table: header plus rows, comma-separated, newline-terminated.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::string dump() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Quotes a CSV cell when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& cell);

}  // namespace qsearch::report
