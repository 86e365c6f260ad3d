#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace permzhu {

// Elements of (1/2)Z, stored in half-units.  Weights of states are
// nonnegative; intermediate quantities (wt u - n - 1, cutoff margins) may go
// negative, so the representation is signed.
class Weight {
 public:
  constexpr Weight() : twice_(0) {}
  static constexpr Weight from_halves(int twice) {
    Weight w;
    w.twice_ = twice;
    return w;
  }
  static constexpr Weight from_int(int n) { return from_halves(2 * n); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  friend constexpr Weight operator+(Weight a, Weight b) { return from_halves(a.twice_ + b.twice_); }
  friend constexpr Weight operator-(Weight a, Weight b) { return from_halves(a.twice_ - b.twice_); }
  constexpr auto operator<=>(const Weight&) const = default;

  std::string to_string() const {
    if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  // Accepts "n" or "p/2" (also "p/1"); anything else is an error.
  static Weight parse(const std::string& s);

 private:
  int twice_;
};

inline Weight Weight::parse(const std::string& s) {
  auto bad = [&]() { throw std::invalid_argument("bad weight '" + s + "' (want n or p/2)"); };
  if (s.empty()) bad();
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      size_t used = 0;
      int n = std::stoi(s, &used);
      if (used != s.size()) bad();
      return Weight::from_int(n);
    }
    size_t used = 0;
    int num = std::stoi(s.substr(0, slash), &used);
    if (used != slash) bad();
    std::string den = s.substr(slash + 1);
    if (den == "2") return Weight::from_halves(num);
    if (den == "1") return Weight::from_int(num);
    bad();
  } catch (const std::invalid_argument&) {
    bad();
  } catch (const std::out_of_range&) {
    bad();
  }
  return Weight();  // unreachable
}

enum class Parity : std::uint8_t { even = 0, odd = 1 };

constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b)) & 1u);
}
constexpr bool is_odd(Parity p) { return p == Parity::odd; }
constexpr int sign_of(Parity p) { return is_odd(p) ? -1 : 1; }

}  // namespace permzhu
