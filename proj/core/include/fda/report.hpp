#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fda/errors.hpp"
#include "fda/graded.hpp"

namespace fda {

enum class Verdict { pass, fail, capped };

std::string_view to_string(Verdict v);

/// Outcome of a verification. Failing reports carry the nonzero residual in
/// `witness`; passing ones may carry a witness (e.g. a coboundary primitive).
struct Report {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string message;
  std::optional<std::string> error; ///< Errc name when the failure has one
  std::optional<Element> witness;
  std::map<std::string, std::string> pinned;  ///< exact scalars compared by golden reports
  std::map<std::string, std::int64_t> counts; ///< term counts and sizes
  double seconds = 0;
  std::vector<Report> checks;

  [[nodiscard]] bool passed() const noexcept { return verdict == Verdict::pass; }

  static Report make_pass(std::string name, std::string message = {});
  static Report make_fail(std::string name, std::string message, std::optional<Element> residual = std::nullopt,
                          std::optional<Errc> code = std::nullopt);
  static Report make_capped(std::string name, std::string message);

  /// Appends a sub-check; the parent verdict becomes the worst of the two
  /// (fail > capped > pass).
  Report& add(Report child);
};

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

} // namespace fda
