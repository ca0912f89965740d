#pragma once

#include <string_view>

#include "fda/graded.hpp"

namespace fda {

/// Parses a polynomial expression over a signature.
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := power ('*' power)*
///   power  := atom ['^' integer]
///   atom   := integer ['/' integer] | generator-name | '(' expr ')' | '-' atom
///
/// Products are graded-commutative, so "dx1*dx2" and "-dx2*dx1" parse to the
/// same element. Throws Error(Errc::parse) or Error(Errc::unknown_generator).
Element parse_element(const SignaturePtr& sig, std::string_view text);

} // namespace fda
