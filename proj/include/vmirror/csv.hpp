#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace vmirror::csv {

/// RFC-4180-ish reader with a mandatory header row. Quoted fields may contain
/// commas and doubled quotes; embedded newlines are not supported.
class Reader {
 public:
  explicit Reader(std::istream& in);

  const std::vector<std::string>& header() const { return header_; }
  bool has_column(std::string_view name) const;
  /// Throws InputError naming the missing columns.
  void require(std::initializer_list<std::string_view> names) const;

  /// Advances to the next non-blank record; false at end of stream.
  bool next();
  std::size_t line() const { return line_; }
  const std::string& get(std::string_view column) const;
  std::optional<std::string> get_opt(std::string_view column) const;

 private:
  std::istream& in_;
  std::vector<std::string> header_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::string> row_;
  std::size_t line_ = 0;
  bool has_header_ = false;
};

std::vector<std::string> split_line(std::string_view line, std::size_t line_no);

/// Quotes a field if it contains a comma, quote or leading/trailing space.
std::string escape(std::string_view field);

std::string fixed(double v, int decimals = 6);

/// Parses a decimal number; accepts a comma decimal separator ("0,2381").
std::optional<double> parse_number(std::string_view text);

}  // namespace vmirror::csv
