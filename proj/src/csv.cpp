#include "vmirror/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "vmirror/error.hpp"

namespace vmirror::csv {

std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw InputError(line_no, "unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

Reader::Reader(std::istream& in) : in_(in) {}

bool Reader::has_column(std::string_view name) const { return index_.find(name) != index_.end(); }

void Reader::require(std::initializer_list<std::string_view> names) const {
  std::string missing;
  for (auto n : names)
    if (!has_column(n)) missing += (missing.empty() ? "" : ", ") + std::string(n);
  if (!missing.empty()) throw InputError(line_ == 0 ? 1 : line_, "missing columns: " + missing);
}

bool Reader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split_line(line, line_);
    if (!has_header_) {
      header_ = std::move(fields);
      for (std::size_t i = 0; i < header_.size(); ++i) index_.emplace(header_[i], i);
      has_header_ = true;
      continue;
    }
    if (fields.size() != header_.size())
      throw InputError(line_, "expected " + std::to_string(header_.size()) + " fields, got " +
                                  std::to_string(fields.size()));
    row_ = std::move(fields);
    return true;
  }
  return false;
}

const std::string& Reader::get(std::string_view column) const {
  auto it = index_.find(column);
  if (it == index_.end()) throw InputError(line_, "missing column " + std::string(column));
  return row_[it->second];
}

std::optional<std::string> Reader::get_opt(std::string_view column) const {
  auto it = index_.find(column);
  if (it == index_.end()) return std::nullopt;
  return row_[it->second];
}

std::string escape(std::string_view field) {
  bool needs = field.find_first_of(",\"") != std::string_view::npos ||
               (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.rfind("-0.", 0) == 0 && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::optional<double> parse_number(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.back() == ' ') s.pop_back();
  while (!s.empty() && s.front() == ' ') s.erase(0, 1);
  if (s.empty()) return std::nullopt;
  if (s.find('.') == std::string::npos) {
    auto comma = s.find(',');
    if (comma != std::string::npos && s.find(',', comma + 1) == std::string::npos) s[comma] = '.';
  }
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace vmirror::csv
