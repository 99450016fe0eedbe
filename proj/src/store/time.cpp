#include "reef/time.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace reef {

namespace {

int readInt(std::string_view text, std::size_t pos, std::size_t len) {
  if (pos + len > text.size()) {
    throw std::invalid_argument("truncated timestamp: " + std::string(text));
  }
  int value = 0;
  auto first = text.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, value);
  if (ec != std::errc{} || ptr != first + len) {
    throw std::invalid_argument("malformed timestamp: " + std::string(text));
  }
  return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    throw std::invalid_argument("malformed timestamp: " + std::string(text));
  }
}

}  // namespace

Timestamp parseTimestamp(std::string_view text) {
  using namespace std::chrono;
  while (!text.empty() && (text.front() == ' ' || text.front() == '\n' ||
                           text.front() == '\t' || text.front() == '\r')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\n' ||
                           text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  int y = readInt(text, 0, 4);
  expect(text, 4, '-');
  int mo = readInt(text, 5, 2);
  expect(text, 7, '-');
  int d = readInt(text, 8, 2);
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    throw std::invalid_argument("invalid date: " + std::string(text));
  }
  Timestamp t = time_point_cast<milliseconds>(sys_days{ymd});
  std::size_t pos = 10;
  if (pos == text.size()) return t;

  if (text[pos] == 'T') {
    int h = readInt(text, pos + 1, 2);
    expect(text, pos + 3, ':');
    int mi = readInt(text, pos + 4, 2);
    expect(text, pos + 6, ':');
    int s = readInt(text, pos + 7, 2);
    if (h > 23 || mi > 59 || s > 59) {
      throw std::invalid_argument("invalid time: " + std::string(text));
    }
    t += hours{h} + minutes{mi} + seconds{s};
    pos += 9;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      int ms = 0;
      int digits = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        if (digits < 3) ms = ms * 10 + (text[pos] - '0');
        ++digits;
        ++pos;
      }
      if (digits == 0) {
        throw std::invalid_argument("malformed fraction: " + std::string(text));
      }
      for (int i = digits; i < 3; ++i) ms *= 10;
      t += milliseconds{ms};
    }
  }
  if (pos == text.size()) return t;
  if (text[pos] == 'Z' && pos + 1 == text.size()) return t;
  if ((text[pos] == '+' || text[pos] == '-') && pos + 6 == text.size()) {
    int oh = readInt(text, pos + 1, 2);
    expect(text, pos + 3, ':');
    int om = readInt(text, pos + 4, 2);
    auto offset = hours{oh} + minutes{om};
    return text[pos] == '+' ? t - offset : t + offset;
  }
  throw std::invalid_argument("malformed timestamp: " + std::string(text));
}

std::string formatTimestamp(Timestamp t) {
  using namespace std::chrono;
  auto dayPoint = floor<days>(t);
  year_month_day ymd{dayPoint};
  auto ms = (t - dayPoint).count();
  long long secs = ms / 1000;
  char buf[40];
  int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lld",
                        static_cast<int>(ymd.year()),
                        static_cast<unsigned>(ymd.month()),
                        static_cast<unsigned>(ymd.day()), secs / 3600,
                        (secs / 60) % 60, secs % 60);
  std::string out(buf, static_cast<std::size_t>(n));
  if (ms % 1000 != 0) {
    std::snprintf(buf, sizeof buf, ".%03lld", static_cast<long long>(ms % 1000));
    out += buf;
  }
  out += 'Z';
  return out;
}

Timestamp now() {
  return std::chrono::time_point_cast<std::chrono::milliseconds>(
      std::chrono::system_clock::now());
}

int yearOf(Timestamp t) {
  std::chrono::year_month_day ymd{std::chrono::floor<std::chrono::days>(t)};
  return static_cast<int>(ymd.year());
}

}  // namespace reef
