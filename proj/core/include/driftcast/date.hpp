#pragma once

#include <chrono>
#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace driftcast {

/// A calendar day in the proleptic Gregorian calendar.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}

  /// Throws std::invalid_argument for impossible dates (e.g. 31/02).
  static Date from_ymd(int year, unsigned month, unsigned day);
  /// "YYYY-MM-DD".
  static Date parse_iso(std::string_view text);
  /// "dd/mm/yyyy", as used by the ECDC export.
  static Date parse_dmy(std::string_view text);

  std::string iso() const;
  std::string dmy() const;

  int year() const;
  unsigned month() const;
  unsigned day() const;

  constexpr std::chrono::sys_days sys_days() const { return days_; }
  constexpr long long serial() const { return days_.time_since_epoch().count(); }

  constexpr Date operator+(int n) const { return Date(days_ + std::chrono::days{n}); }
  constexpr Date operator-(int n) const { return Date(days_ - std::chrono::days{n}); }
  constexpr Date& operator+=(int n) {
    days_ += std::chrono::days{n};
    return *this;
  }
  /// Signed distance in days.
  friend constexpr int operator-(Date a, Date b) {
    return static_cast<int>((a.days_ - b.days_).count());
  }

  friend constexpr bool operator==(Date a, Date b) { return a.days_ == b.days_; }
  friend constexpr auto operator<=>(Date a, Date b) { return a.serial() <=> b.serial(); }

 private:
  std::chrono::sys_days days_{};
};

inline std::ostream& operator<<(std::ostream& os, Date d) { return os << d.iso(); }

}  // namespace driftcast

template <>
struct std::hash<driftcast::Date> {
  std::size_t operator()(driftcast::Date d) const noexcept {
    return std::hash<long long>{}(d.serial());
  }
};
