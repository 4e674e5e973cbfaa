#include "prqi/schedule.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "prqi/errors.hpp"

namespace prqi {

GammaSchedule GammaSchedule::residual_norm() { return {Kind::residual_norm, 0.0, {}, {}}; }

GammaSchedule GammaSchedule::residual_norm_squared() {
  return {Kind::residual_norm_squared, 0.0, {}, {}};
}

GammaSchedule GammaSchedule::constant(double gamma0) {
  if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
    throw DomainError("constant gamma must be finite and nonnegative");
  }
  return {Kind::constant, gamma0, {}, {}};
}

GammaSchedule GammaSchedule::custom(Rule rule, std::string name) {
  if (!rule) throw DomainError("custom gamma schedule needs a callable");
  return {Kind::custom, 0.0, std::move(rule), std::move(name)};
}

GammaSchedule GammaSchedule::parse(std::string_view text) {
  if (text == "residual") return residual_norm();
  if (text == "residual2") return residual_norm_squared();
  constexpr std::string_view prefix = "constant:";
  if (text.starts_with(prefix)) {
    const std::string_view number = text.substr(prefix.size());
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc{} || ptr != number.data() + number.size() || number.empty()) {
      throw ParseError("bad constant gamma value: '" + std::string(number) + "'");
    }
    return constant(value);
  }
  throw ParseError("unknown gamma schedule '" + std::string(text) +
                   "' (expected residual, residual2 or constant:<value>)");
}

double GammaSchedule::operator()(const IterationState& state) const {
  switch (kind_) {
    case Kind::residual_norm:
      return state.residual_norm;
    case Kind::residual_norm_squared:
      return state.residual_norm * state.residual_norm;
    case Kind::constant:
      return gamma0_;
    case Kind::custom: {
      const double g = rule_(state);
      if (!(g >= 0.0) || !std::isfinite(g)) {
        throw DomainError("custom gamma schedule produced a negative or non-finite value");
      }
      return g;
    }
  }
  return 0.0;
}

std::string GammaSchedule::name() const {
  switch (kind_) {
    case Kind::residual_norm:
      return "residual";
    case Kind::residual_norm_squared:
      return "residual2";
    case Kind::constant: {
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, gamma0_);
      return "constant:" + std::string(buf, res.ptr);
    }
    case Kind::custom:
      return name_;
  }
  return {};
}

}  // namespace prqi
