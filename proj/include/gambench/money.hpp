#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gambench {

// Currency amount held as a signed count of cents. Balance arithmetic is
// exact; fractional dollar inputs are rounded to the nearest cent (half away
// from zero) on entry.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) {
    Money m;
    m.cents_ = cents;
    return m;
  }

  static Money from_dollars(double dollars) {
    if (!std::isfinite(dollars)) {
      throw std::invalid_argument("money: non-finite dollar amount");
    }
    double cents = dollars * 100.0;
    if (std::abs(cents) > 9.0e15) {
      throw std::invalid_argument("money: dollar amount out of range");
    }
    return from_cents(static_cast<std::int64_t>(std::llround(cents)));
  }

  constexpr std::int64_t cents() const { return cents_; }
  constexpr double dollars() const { return static_cast<double>(cents_) / 100.0; }

  constexpr bool is_zero() const { return cents_ == 0; }
  constexpr bool is_positive() const { return cents_ > 0; }

  constexpr Money operator-() const { return from_cents(-cents_); }
  constexpr Money operator+(Money other) const { return from_cents(cents_ + other.cents_); }
  constexpr Money operator-(Money other) const { return from_cents(cents_ - other.cents_); }
  constexpr Money& operator+=(Money other) {
    cents_ += other.cents_;
    return *this;
  }
  constexpr Money& operator-=(Money other) {
    cents_ -= other.cents_;
    return *this;
  }

  friend constexpr auto operator<=>(Money, Money) = default;

  // "$1,234.56" / "-$0.25"; used by prompts and reports.
  std::string to_display_string() const {
    std::int64_t c = cents_;
    std::string sign = c < 0 ? "-" : "";
    if (c < 0) c = -c;
    std::string whole = std::to_string(c / 100);
    std::string grouped;
    int digits = 0;
    for (auto it = whole.rbegin(); it != whole.rend(); ++it) {
      if (digits != 0 && digits % 3 == 0) grouped.push_back(',');
      grouped.push_back(*it);
      ++digits;
    }
    std::string out(grouped.rbegin(), grouped.rend());
    std::int64_t frac = c % 100;
    out += '.';
    out += static_cast<char>('0' + frac / 10);
    out += static_cast<char>('0' + frac % 10);
    return sign + "$" + out;
  }

 private:
  std::int64_t cents_ = 0;
};

}  // namespace gambench
