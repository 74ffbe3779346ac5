#include "vmirror/timeutil.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "vmirror/error.hpp"

namespace vmirror {

namespace {

using namespace std::chrono;

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  auto r = std::from_chars(s.data() + pos, s.data() + pos + len, out);
  return r.ec == std::errc{};
}

[[noreturn]] void bad(std::string_view text) {
  throw InputError("invalid timestamp '" + std::string(text) + "'");
}

}  // namespace

bool is_date_only(std::string_view text) { return text.size() == 10; }

Instant parse_instant(std::string_view text) {
  int y = 0, mo = 0, d = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-' || !read_int(text, 0, 4, y) ||
      !read_int(text, 5, 2, mo) || !read_int(text, 8, 2, d))
    bad(text);
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) bad(text);
  Instant t = time_point_cast<seconds>(sys_days{ymd});
  if (text.size() == 10) return t;

  if (text[10] != 'T' && text[10] != ' ') bad(text);
  int hh = 0, mm = 0, ss = 0;
  if (!read_int(text, 11, 2, hh) || text.size() < 16 || text[13] != ':' || !read_int(text, 14, 2, mm))
    bad(text);
  std::size_t pos = 16;
  if (pos < text.size() && text[pos] == ':') {
    if (!read_int(text, pos + 1, 2, ss)) bad(text);
    pos += 3;
    // fractional seconds are truncated
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) bad(text);
  t += hours{hh} + minutes{mm} + seconds{ss};

  if (pos == text.size()) return t;
  if (text[pos] == 'Z' && pos + 1 == text.size()) return t;
  if ((text[pos] == '+' || text[pos] == '-') && text.size() == pos + 6 && text[pos + 3] == ':') {
    int oh = 0, om = 0;
    if (!read_int(text, pos + 1, 2, oh) || !read_int(text, pos + 4, 2, om)) bad(text);
    seconds off = hours{oh} + minutes{om};
    return text[pos] == '+' ? t - off : t + off;
  }
  bad(text);
}

std::string format_instant(Instant t) {
  auto day_point = floor<days>(t);
  year_month_day ymd{day_point};
  auto rest = t - day_point;
  auto h = duration_cast<hours>(rest);
  auto m = duration_cast<minutes>(rest - h);
  auto s = rest - h - m;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(h.count()), static_cast<int>(m.count()),
                static_cast<int>(s.count()));
  return buf;
}

std::string format_date(Instant t) { return format_instant(t).substr(0, 10); }

TimeWindow parse_window_cells(std::string_view start, std::string_view end) {
  TimeWindow w{parse_instant(start), parse_instant(end)};
  if (is_date_only(end)) w.end += days{1};
  if (!(w.start < w.end))
    throw InputError("window start " + std::string(start) + " is not before end " + std::string(end));
  return w;
}

std::pair<std::string, std::string> format_window_cells(const TimeWindow& w) {
  bool midnight = floor<days>(w.start) == w.start && floor<days>(w.end) == w.end;
  if (midnight) return {format_date(w.start), format_date(w.end - days{1})};
  return {format_instant(w.start), format_instant(w.end)};
}

}  // namespace vmirror
