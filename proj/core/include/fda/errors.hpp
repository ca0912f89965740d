#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fda {

enum class Errc {
  parse,
  duplicate_name,
  unknown_generator,
  signature_mismatch,
  inhomogeneous_image,
  bidegree_mismatch,
  chain_map_violation,
  not_closed,
  capped,
  unsupported,
  bad_indices,
  zero_cocycle,
  rep_mismatch,
  not_proportional,
  unknown_task,
  ledger_mismatch,
  io,
};

/// Stable CamelCase name, e.g. "DuplicateName". Used in reports and JSON.
std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace fda
