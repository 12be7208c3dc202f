#ifndef ESOS_ERRORS_HPP
#define ESOS_ERRORS_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace esos {

/// Malformed or out-of-range arguments (bad vertex ids, overlapping sets, bad graph6).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size cap or search budget was hit; the answer is unknown, not negative.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An exhaustive analysis finished without any of the promised cases.
/// Raising this means a proven statement failed on a concrete instance.
class SoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Node budget for the exponential searches. Overridable with ESOS_BUDGET.
inline std::uint64_t default_budget() {
  static const std::uint64_t value = [] {
    if (const char* env = std::getenv("ESOS_BUDGET")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && parsed > 0) return static_cast<std::uint64_t>(parsed);
    }
    return std::uint64_t{50'000'000};
  }();
  return value;
}

class Budget {
 public:
  explicit Budget(std::uint64_t limit = default_budget(), const char* what = "search")
      : limit_(limit), what_(what) {}

  void tick() {
    if (++used_ > limit_) {
      throw CapabilityError(std::string(what_) + ": node budget of " + std::to_string(limit_) +
                            " exceeded");
    }
  }

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  const char* what_;
};

}  // namespace esos

#endif  // ESOS_ERRORS_HPP
