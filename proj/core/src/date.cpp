#include "driftcast/date.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace driftcast {
namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view whole) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("invalid date '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                  std::chrono::day{day}};
  if (!ymd.ok()) {
    throw std::invalid_argument("invalid calendar date " + std::to_string(year) + "-" +
                                std::to_string(month) + "-" + std::to_string(day));
  }
  return Date(std::chrono::sys_days{ymd});
}

Date Date::parse_iso(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw std::invalid_argument("invalid ISO date '" + std::string(text) + "'");
  }
  return from_ymd(parse_number<int>(text.substr(0, 4), text),
                  parse_number<unsigned>(text.substr(5, 2), text),
                  parse_number<unsigned>(text.substr(8, 2), text));
}

Date Date::parse_dmy(std::string_view text) {
  auto first = text.find('/');
  auto second = first == std::string_view::npos ? first : text.find('/', first + 1);
  if (second == std::string_view::npos) {
    throw std::invalid_argument("invalid dd/mm/yyyy date '" + std::string(text) + "'");
  }
  return from_ymd(parse_number<int>(text.substr(second + 1), text),
                  parse_number<unsigned>(text.substr(first + 1, second - first - 1), text),
                  parse_number<unsigned>(text.substr(0, first), text));
}

int Date::year() const { return int(std::chrono::year_month_day{days_}.year()); }
unsigned Date::month() const { return unsigned(std::chrono::year_month_day{days_}.month()); }
unsigned Date::day() const { return unsigned(std::chrono::year_month_day{days_}.day()); }

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

std::string Date::dmy() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02u/%02u/%04d", day(), month(), year());
  return buf;
}

}  // namespace driftcast
