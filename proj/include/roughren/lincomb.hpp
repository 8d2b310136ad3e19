#pragma once

#include <map>
#include <utility>

#include "roughren/rational.hpp"

namespace roughren {

/// Finite linear combination with exact rational coefficients. Zero
/// coefficients are never stored, so equality is keywise equality.
template <class Key>
class LinComb {
 public:
  using Terms = std::map<Key, Rational>;
  using const_iterator = typename Terms::const_iterator;

  LinComb() = default;
  explicit LinComb(Key k, Rational c = 1) { add(k, c); }

  void add(const Key& k, const Rational& c) {
    if (::roughren::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (::roughren::is_zero(it->second)) terms_.erase(it);
    }
  }

  Rational coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Terms& terms() const noexcept { return terms_; }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  LinComb& operator*=(const Rational& s) {
    if (::roughren::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(LinComb a, const Rational& s) { return a *= s; }
  friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

  /// Applies `f: Key -> LinComb<Out>` linearly.
  template <class Out, class F>
  LinComb<Out> map_linear(F&& f) const {
    LinComb<Out> out;
    for (const auto& [k, c] : terms_) {
      for (const auto& [k2, c2] : f(k)) out.add(k2, c * c2);
    }
    return out;
  }

 private:
  Terms terms_;
};

}  // namespace roughren
