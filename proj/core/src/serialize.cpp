#include "fda/serialize.hpp"

#include <fstream>
#include <sstream>

namespace fda {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::parse, "malformed JSON: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Parity parity_from(const json& j) {
  if (j == "even")
    return Parity::even;
  if (j == "odd")
    return Parity::odd;
  bad("parity must be \"even\" or \"odd\"");
}

template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

} // namespace

json to_json(const Element& x) {
  json out = json::array();
  const auto& sig = *x.signature();
  for (const Term& t : x.terms()) {
    json mono = json::array();
    for (const auto& [g, k] : t.monomial.exponents())
      mono.push_back(json::array({sig.name(g), k}));
    out.push_back({{"monomial", std::move(mono)}, {"coeff", t.coeff.to_string()}});
  }
  return out;
}

Element element_from_json(const SignaturePtr& sig, const json& j) {
  return guarded([&] {
    if (!j.is_array())
      bad("element must be an array of terms");
    ElementAccumulator acc(sig);
    for (const json& term : j) {
      const json& mono = field(term, "monomial");
      const json& coeff = field(term, "coeff");
      if (!mono.is_array() || !coeff.is_string())
        bad("term needs a monomial array and a string coefficient");
      std::vector<std::pair<std::string, int>> raw;
      for (const json& f : mono) {
        if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_number_integer() || f[1].get<int>() < 0)
          bad("monomial factor must be [name, exponent]");
        raw.emplace_back(f[0].get<std::string>(), f[1].get<int>());
      }
      acc.add(normalize(sig, raw, Rational::parse(coeff.get<std::string>())));
    }
    return std::move(acc).finish();
  });
}

json to_json(const AlgebraSignature& sig) {
  json out = json::array();
  for (const GeneratorDecl& d : sig.generators())
    out.push_back({{"name", d.name},
                   {"family", d.family},
                   {"indices", d.indices},
                   {"degree", d.bidegree.degree},
                   {"parity", to_string(d.bidegree.parity)}});
  return out;
}

SignaturePtr signature_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_array())
      bad("generators must be an array");
    std::vector<GeneratorDecl> decls;
    for (const json& g : j) {
      GeneratorDecl d;
      d.name = field(g, "name").get<std::string>();
      d.family = g.contains("family") ? g.at("family").get<std::string>() : d.name;
      if (g.contains("indices"))
        d.indices = g.at("indices").get<std::vector<int>>();
      d.bidegree = Bidegree{field(g, "degree").get<int>(), parity_from(field(g, "parity"))};
      decls.push_back(std::move(d));
    }
    return make_signature(std::move(decls));
  });
}

json to_json(const SemifreeDGCA& a) {
  json diff = json::object();
  const auto& sig = *a.signature();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto g = static_cast<GenId>(i);
    diff[sig.name(g)] = to_json(a.differential(g));
  }
  return {{"schema", "fda.dgca/1"}, {"label", a.label()}, {"generators", to_json(sig)}, {"differential", diff}};
}

DGCAPtr dgca_from_json(const json& j) {
  return guarded([&] {
    if (j.contains("schema") && j.at("schema") != "fda.dgca/1")
      bad("unsupported schema " + j.at("schema").dump());
    SignaturePtr sig = signature_from_json(field(j, "generators"));
    std::map<std::string, Element> images;
    if (j.contains("differential")) {
      const json& diff = j.at("differential");
      if (!diff.is_object())
        bad("differential must be an object");
      for (const auto& [name, img] : diff.items()) {
        (void)sig->id(name);
        images.emplace(name, element_from_json(sig, img));
      }
    }
    return make_dgca(sig, images, j.value("label", std::string{}));
  });
}

json to_json(const DGCAMorphism& f) {
  json images = json::object();
  const auto& sig = *f.source()->signature();
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const auto g = static_cast<GenId>(i);
    images[sig.name(g)] = to_json(f.image(g));
  }
  return {{"schema", "fda.morphism/1"}, {"source", to_json(*f.source())}, {"target", to_json(*f.target())},
          {"images", images}};
}

DGCAMorphism morphism_from_json(const json& j, Validation validation) {
  return guarded([&] {
    if (j.contains("schema") && j.at("schema") != "fda.morphism/1")
      bad("unsupported schema " + j.at("schema").dump());
    DGCAPtr source = dgca_from_json(field(j, "source"));
    DGCAPtr target = dgca_from_json(field(j, "target"));
    std::map<std::string, Element> images;
    if (j.contains("images")) {
      const json& imgs = j.at("images");
      if (!imgs.is_object())
        bad("images must be an object");
      for (const auto& [name, img] : imgs.items())
        images.emplace(name, element_from_json(target->signature(), img));
    }
    return make_morphism(source, target, images, validation);
  });
}

json to_json(const Report& r) {
  json out = {{"name", r.name}, {"verdict", to_string(r.verdict)}, {"message", r.message}};
  if (r.error)
    out["error"] = *r.error;
  if (r.witness)
    out["witness"] = {{"generators", to_json(*r.witness->signature())},
                      {"element", to_json(*r.witness)},
                      {"text", r.witness->to_string()}};
  if (!r.pinned.empty())
    out["pinned"] = r.pinned;
  if (!r.counts.empty())
    out["counts"] = r.counts;
  out["seconds"] = r.seconds;
  if (!r.checks.empty()) {
    json checks = json::array();
    for (const Report& c : r.checks)
      checks.push_back(to_json(c));
    out["checks"] = std::move(checks);
  }
  return out;
}

Report report_from_json(const json& j) {
  return guarded([&] {
    Report r;
    r.name = field(j, "name").get<std::string>();
    const std::string verdict = field(j, "verdict").get<std::string>();
    if (verdict == "pass")
      r.verdict = Verdict::pass;
    else if (verdict == "fail")
      r.verdict = Verdict::fail;
    else if (verdict == "capped")
      r.verdict = Verdict::capped;
    else
      bad("unknown verdict '" + verdict + "'");
    r.message = j.value("message", std::string{});
    if (j.contains("error"))
      r.error = j.at("error").get<std::string>();
    if (j.contains("witness")) {
      const json& w = j.at("witness");
      r.witness = element_from_json(signature_from_json(field(w, "generators")), field(w, "element"));
    }
    if (j.contains("pinned"))
      r.pinned = j.at("pinned").get<std::map<std::string, std::string>>();
    if (j.contains("counts"))
      r.counts = j.at("counts").get<std::map<std::string, std::int64_t>>();
    r.seconds = j.value("seconds", 0.0);
    if (j.contains("checks"))
      for (const json& c : j.at("checks"))
        r.checks.push_back(report_from_json(c));
    return r;
  });
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(Errc::io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw Error(Errc::io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out)
    throw Error(Errc::io, "write failed for " + path.string());
}

} // namespace fda
