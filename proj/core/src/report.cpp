#include "fda/report.hpp"

namespace fda {

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::pass: return "pass";
  case Verdict::fail: return "fail";
  case Verdict::capped: return "capped";
  }
  return "unknown";
}

Report Report::make_pass(std::string name, std::string message) {
  Report r;
  r.name = std::move(name);
  r.message = std::move(message);
  return r;
}

Report Report::make_fail(std::string name, std::string message, std::optional<Element> residual,
                         std::optional<Errc> code) {
  Report r;
  r.name = std::move(name);
  r.verdict = Verdict::fail;
  r.message = std::move(message);
  r.witness = std::move(residual);
  if (code)
    r.error = std::string(to_string(*code));
  return r;
}

Report Report::make_capped(std::string name, std::string message) {
  Report r;
  r.name = std::move(name);
  r.verdict = Verdict::capped;
  r.message = std::move(message);
  r.error = std::string(to_string(Errc::capped));
  return r;
}

Report& Report::add(Report child) {
  if (child.verdict == Verdict::fail)
    verdict = Verdict::fail;
  else if (child.verdict == Verdict::capped && verdict == Verdict::pass)
    verdict = Verdict::capped;
  checks.push_back(std::move(child));
  return *this;
}

} // namespace fda
