#pragma once

#include <stdexcept>
#include <string>

namespace squidacc {

enum class errc {
  domain,
  numerical,
  regime,
  configuration,
  instability,
  exceeds_critical,
  impossible_reading,
  ambiguous_reading,
  singular_inversion,
  unsupported,
};

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::domain: return "domain";
    case errc::numerical: return "numerical";
    case errc::regime: return "regime";
    case errc::configuration: return "configuration";
    case errc::instability: return "instability";
    case errc::exceeds_critical: return "exceeds-critical-operating-point";
    case errc::impossible_reading: return "impossible-reading";
    case errc::ambiguous_reading: return "ambiguous-reading";
    case errc::singular_inversion: return "singular-inversion";
    case errc::unsupported: return "unsupported";
  }
  return "unknown";
}

/// Base exception for every failure raised by the library.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Raised when f·a exceeds the maximum of 2Ic·δφ·cos(δφ/2); carries the
/// largest acceleration the principal branch can represent.
class exceeds_critical_error : public error {
 public:
  exceeds_critical_error(const std::string& what, double max_acceleration)
      : error(errc::exceeds_critical, what), max_acceleration_(max_acceleration) {}

  double max_acceleration() const noexcept { return max_acceleration_; }

 private:
  double max_acceleration_;
};

namespace detail {

inline void require(bool condition, errc code, const char* message) {
  if (!condition) throw error(code, message);
}

}  // namespace detail
}  // namespace squidacc
