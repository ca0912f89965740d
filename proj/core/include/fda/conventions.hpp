#pragma once

#include <string>
#include <string_view>

namespace fda {

/// Built-in text of the conventions every pinned number depends on.
std::string_view convention_ledger();

/// 16 hex digits of the FNV-1a 64-bit hash of convention_ledger().
std::string ledger_hash();

std::string_view engine_version();

} // namespace fda
