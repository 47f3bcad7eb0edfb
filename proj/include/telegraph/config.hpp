#pragma once

// Text syntax for profiles and rates:
//   constant:c=1.0    power:gamma=0.5,scale=1.0    custom:name=one_plus_x2,scale=1
//   rate:constant:lambda=1   rate:tanh:lambda=1   rate:coth:lambda=1,eps=1e-9   rate:epd:alpha=1.5

#include <charconv>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "telegraph/errors.hpp"
#include "telegraph/rates.hpp"
#include "telegraph/velocity.hpp"

namespace telegraph::config {

struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline double to_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw parse_error("value of '" + std::string(key) + "' is not a number: '" + std::string(text) + "'");
  }
  return v;
}

// "k1=v1,k2=v2" -> map
inline std::map<std::string, std::string, std::less<>> key_values(std::string_view text) {
  std::map<std::string, std::string, std::less<>> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw parse_error("expected key=value, got '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    if (!out.emplace(key, std::string(item.substr(eq + 1))).second) throw parse_error("duplicate key '" + key + "'");
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

class Fields {
 public:
  Fields(std::string_view what, std::string_view text) : what_(what), kv_(key_values(text)) {}

  double number(std::string_view key) {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw parse_error(what_ + " is missing '" + std::string(key) + "'");
    const double v = to_double(key, it->second);
    kv_.erase(it);
    return v;
  }

  double number_or(std::string_view key, double fallback) {
    return kv_.contains(key) ? number(key) : fallback;
  }

  std::string text(std::string_view key) {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw parse_error(what_ + " is missing '" + std::string(key) + "'");
    std::string v = it->second;
    kv_.erase(it);
    return v;
  }

  void finish() const {
    if (!kv_.empty()) throw parse_error(what_ + ": unknown key '" + kv_.begin()->first + "'");
  }

 private:
  std::string what_;
  std::map<std::string, std::string, std::less<>> kv_;
};

inline std::pair<std::string_view, std::string_view> split_kind(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return {text, {}};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

}  // namespace detail

inline VelocityProfile parse_profile(std::string_view text) {
  const auto [kind, rest] = detail::split_kind(text);
  detail::Fields f("profile '" + std::string(text) + "'", rest);
  try {
    if (kind == "constant") {
      const double c = f.number("c");
      f.finish();
      return VelocityProfile::constant(c);
    }
    if (kind == "power") {
      const double g = f.number("gamma");
      const double s = f.number_or("scale", 1.0);
      f.finish();
      return VelocityProfile::power(g, s);
    }
    if (kind == "custom") {
      const std::string name = f.text("name");
      const double s = f.number_or("scale", 1.0);
      f.finish();
      if (name == "one_plus_x2") return profiles::one_plus_x2(s);
      if (name == "sqrt1px2") return profiles::sqrt1px2(s);
      throw parse_error("unknown custom profile '" + name + "' (known: one_plus_x2, sqrt1px2)");
    }
  } catch (const domain_error& e) {
    throw parse_error(e.what());
  }
  throw parse_error("unknown profile kind '" + std::string(kind) + "' (constant, power, custom)");
}

inline RateFunction parse_rate(std::string_view text) {
  std::string_view body = text;
  if (body.starts_with("rate:")) body.remove_prefix(5);
  const auto [kind, rest] = detail::split_kind(body);
  detail::Fields f("rate '" + std::string(text) + "'", rest);
  try {
    RateFunction r = RateFunction::constant(1.0);
    if (kind == "constant") {
      r = RateFunction::constant(f.number("lambda"));
    } else if (kind == "tanh") {
      r = RateFunction::tanh(f.number("lambda"));
    } else if (kind == "coth") {
      r = RateFunction::coth(f.number("lambda"));
    } else if (kind == "epd") {
      r = RateFunction::epd(f.number("alpha"));
    } else {
      throw parse_error("unknown rate kind '" + std::string(kind) + "' (constant, tanh, coth, epd)");
    }
    r = r.with_eps(f.number_or("eps", RateFunction::default_eps));
    f.finish();
    return r;
  } catch (const domain_error& e) {
    throw parse_error(e.what());
  }
}

}  // namespace telegraph::config
