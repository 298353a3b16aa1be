#include "newtok/document.hpp"

#include <charconv>
#include <climits>
#include <regex>
#include <set>

#include <json.hpp>

#include "newtok/error.hpp"

namespace newtok {

using json = nlohmann::json;

namespace {

constexpr std::size_t kMaxVariables = 8;

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + escape_token(key); }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

[[noreturn]] void schema(const std::string& ptr, const std::string& msg) {
  throw DocumentError(ErrorCode::SchemaError, ptr, msg);
}

void require_keys(const json& obj, const std::string& ptr, const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  for (const auto& [k, v] : obj.items())
    if (!required.count(k) && !optional.count(k)) schema(child(ptr, k), "unknown key \"" + k + "\"");
  for (const auto& k : required)
    if (!obj.contains(k)) schema(ptr, "missing key \"" + k + "\"");
}

const json& object_at(const json& j, const std::string& ptr) {
  if (!j.is_object()) schema(ptr, "expected an object");
  return j;
}

const json& array_at(const json& j, const std::string& ptr) {
  if (!j.is_array()) schema(ptr, "expected an array");
  return j;
}

long integer_at(const json& j, const std::string& ptr, long min_value) {
  if (!j.is_number_integer()) schema(ptr, "expected an integer");
  long v = j.get<long>();
  if (v < min_value) schema(ptr, "expected an integer >= " + std::to_string(min_value));
  return v;
}

long parse_long_key(const std::string& s, const std::string& ptr, ErrorCode code, const std::string& what) {
  long v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end || v < 0 || (s.size() > 1 && s[0] == '0'))
    throw DocumentError(code, ptr, what + " \"" + s + "\"");
  return v;
}

Monomial parse_exponent(const std::string& key, std::size_t d, const std::string& ptr) {
  Monomial m;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = key.find(',', start);
    std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    m.push_back(parse_long_key(part, ptr, ErrorCode::BadExponent, "exponent entries must be nonnegative integers, got"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (m.size() != d)
    throw DocumentError(ErrorCode::BadExponent, ptr,
                        "exponent \"" + key + "\" has " + std::to_string(m.size()) + " entries, expected " +
                            std::to_string(d));
  return m;
}

std::string exponent_key(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m[i]);
  }
  return out;
}

Rational rational_at(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw DocumentError(ErrorCode::BadRational, ptr, "coefficients must be strings \"p\" or \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw DocumentError(ErrorCode::BadRational, ptr, e.what());
  }
}

Poly poly_at(const json& j, std::size_t d, const std::string& ptr) {
  object_at(j, ptr);
  Poly p(d);
  std::set<Monomial> seen;
  for (const auto& [key, value] : j.items()) {
    const std::string at = child(ptr, key);
    Monomial m = parse_exponent(key, d, at);
    if (!seen.insert(m).second) throw DocumentError(ErrorCode::BadExponent, at, "duplicate exponent");
    p.add_term(m, rational_at(value, at));
  }
  return p;
}

IntVec int_vector_at(const json& j, std::size_t len, long min_value, const std::string& ptr) {
  array_at(j, ptr);
  if (j.size() != len) schema(ptr, "expected " + std::to_string(len) + " entries");
  IntVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.emplace_back(integer_at(j[i], child(ptr, i), min_value));
  return v;
}

std::size_t dimension_at(const json& j, const std::string& ptr) {
  long d = integer_at(j, ptr, 1);
  if (static_cast<std::size_t>(d) > kMaxVariables) schema(ptr, "at most " + std::to_string(kMaxVariables) + " variables");
  return static_cast<std::size_t>(d);
}

long degree_key(const std::string& key, long max_degree, const std::string& ptr) {
  long n = parse_long_key(key, ptr, ErrorCode::SchemaError, "degree keys must be positive integers, got");
  if (n < 1 || n > max_degree) schema(ptr, "degree " + key + " outside 1.." + std::to_string(max_degree));
  return n;
}

DocumentType type_at(const json& j, const std::string& ptr) {
  if (!j.is_string()) schema(ptr, "expected a string");
  const auto s = j.get<std::string>();
  if (s == "toric") return DocumentType::Toric;
  if (s == "generated") return DocumentType::Generated;
  if (s == "explicit") return DocumentType::Explicit;
  if (s == "multicomponent") return DocumentType::Multicomponent;
  if (s == "semigroup") return DocumentType::Semigroup;
  schema(ptr, "unknown type \"" + s + "\"");
}

SeriesDocument parse_node(const json& j, const std::string& ptr, bool nested) {
  object_at(j, ptr);
  if (!j.contains("type")) schema(ptr, "missing key \"type\"");
  SeriesDocument doc;
  doc.type = type_at(j["type"], child(ptr, "type"));
  std::set<std::string> common{"type"};
  if (!nested) common.insert({"schema_version", "options"});
  auto with = [&](std::initializer_list<std::string> extra) {
    std::set<std::string> s = common;
    s.insert(extra);
    return s;
  };

  switch (doc.type) {
    case DocumentType::Toric: {
      require_keys(j, ptr, {"d", "polytope"}, with({}));
      doc.d = dimension_at(j["d"], child(ptr, "d"));
      const std::string pp = child(ptr, "polytope");
      array_at(j["polytope"], pp);
      if (j["polytope"].empty()) schema(pp, "a polytope needs at least one vertex");
      for (std::size_t i = 0; i < j["polytope"].size(); ++i)
        doc.polytope.push_back(int_vector_at(j["polytope"][i], doc.d, 0, child(pp, i)));
      break;
    }
    case DocumentType::Generated: {
      require_keys(j, ptr, {"d", "generators"}, with({}));
      doc.d = dimension_at(j["d"], child(ptr, "d"));
      const std::string gp = child(ptr, "generators");
      array_at(j["generators"], gp);
      for (std::size_t i = 0; i < j["generators"].size(); ++i) {
        const auto& g = j["generators"][i];
        const std::string at = child(gp, i);
        object_at(g, at);
        require_keys(g, at, {"degree", "poly"}, {});
        long deg = integer_at(g["degree"], child(at, "degree"), 1);
        doc.generators.push_back({deg, poly_at(g["poly"], doc.d, child(at, "poly"))});
      }
      break;
    }
    case DocumentType::Explicit: {
      require_keys(j, ptr, {"d", "max_degree", "bases"}, with({}));
      doc.d = dimension_at(j["d"], child(ptr, "d"));
      doc.max_degree = integer_at(j["max_degree"], child(ptr, "max_degree"), 1);
      const std::string bp = child(ptr, "bases");
      object_at(j["bases"], bp);
      for (const auto& [key, list] : j["bases"].items()) {
        const std::string at = child(bp, key);
        long n = degree_key(key, doc.max_degree, at);
        array_at(list, at);
        auto& piece = doc.bases[n];
        for (std::size_t i = 0; i < list.size(); ++i) piece.push_back(poly_at(list[i], doc.d, child(at, i)));
      }
      break;
    }
    case DocumentType::Multicomponent: {
      if (nested) schema(child(ptr, "type"), "components must be single series");
      doc.max_degree = 0;
      if (j.contains("glue")) {
        require_keys(j, ptr, {"glue", "max_degree", "components"}, with({}));
        if (j["glue"] != "origin") schema(child(ptr, "glue"), "the only supported gluing is \"origin\"");
        doc.glued = true;
        doc.max_degree = integer_at(j["max_degree"], child(ptr, "max_degree"), 1);
        const std::string cp = child(ptr, "components");
        array_at(j["components"], cp);
        if (j["components"].empty()) schema(cp, "at least one component");
        for (std::size_t i = 0; i < j["components"].size(); ++i) {
          auto c = parse_node(j["components"][i], child(cp, i), true);
          if (c.type == DocumentType::Semigroup) schema(child(child(cp, i), "type"), "components must be single series");
          doc.component_dims.push_back(c.d);
          doc.components.push_back(std::move(c));
        }
      } else {
        require_keys(j, ptr, {"component_dims", "max_degree", "bases"}, with({}));
        const std::string dp = child(ptr, "component_dims");
        array_at(j["component_dims"], dp);
        if (j["component_dims"].empty()) schema(dp, "at least one component");
        for (std::size_t i = 0; i < j["component_dims"].size(); ++i)
          doc.component_dims.push_back(dimension_at(j["component_dims"][i], child(dp, i)));
        doc.max_degree = integer_at(j["max_degree"], child(ptr, "max_degree"), 1);
        const std::string bp = child(ptr, "bases");
        object_at(j["bases"], bp);
        for (const auto& [key, list] : j["bases"].items()) {
          const std::string at = child(bp, key);
          long n = degree_key(key, doc.max_degree, at);
          array_at(list, at);
          auto& piece = doc.tuples[n];
          for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string tp = child(at, i);
            array_at(list[i], tp);
            if (list[i].size() != doc.component_dims.size())
              schema(tp, "tuple has " + std::to_string(list[i].size()) + " entries for " +
                             std::to_string(doc.component_dims.size()) + " components");
            Tuple t;
            for (std::size_t c = 0; c < list[i].size(); ++c)
              t.push_back(poly_at(list[i][c], doc.component_dims[c], child(tp, c)));
            piece.push_back(std::move(t));
          }
        }
      }
      break;
    }
    case DocumentType::Semigroup: {
      if (nested) schema(child(ptr, "type"), "components must be single series");
      require_keys(j, ptr, {"d", "generators"}, with({}));
      doc.d = dimension_at(j["d"], child(ptr, "d"));
      const std::string gp = child(ptr, "generators");
      array_at(j["generators"], gp);
      if (j["generators"].empty()) schema(gp, "at least one generator");
      for (std::size_t i = 0; i < j["generators"].size(); ++i) {
        const std::string at = child(gp, i);
        array_at(j["generators"][i], at);
        if (j["generators"][i].size() != doc.d + 1) schema(at, "expected d+1 entries (horizontal part, then level)");
        IntVec g;
        for (std::size_t c = 0; c <= doc.d; ++c)
          g.emplace_back(integer_at(j["generators"][i][c], child(at, c), c == doc.d ? 1 : LONG_MIN));
        doc.semigroup_generators.push_back(std::move(g));
      }
      break;
    }
  }

  if (!nested) {
    if (j.contains("schema_version")) {
      const auto& v = j["schema_version"];
      if (!v.is_string() || v.get<std::string>() != "1") schema(child(ptr, "schema_version"), "expected \"1\"");
    }
    if (j.contains("options")) {
      const std::string op = child(ptr, "options");
      object_at(j["options"], op);
      require_keys(j["options"], op, {}, {"max_degree", "p"});
      if (j["options"].contains("max_degree"))
        doc.options.max_degree = integer_at(j["options"]["max_degree"], child(op, "max_degree"), 1);
      if (j["options"].contains("p")) {
        const std::string pp = child(op, "p");
        array_at(j["options"]["p"], pp);
        for (std::size_t i = 0; i < j["options"]["p"].size(); ++i)
          doc.options.p.push_back(integer_at(j["options"]["p"][i], child(pp, i), 1));
      }
    }
  }
  return doc;
}

json emit_poly(const Poly& p) {
  json out = json::object();
  for (const auto& [m, c] : p.terms()) out[exponent_key(m)] = to_string(c);
  return out;
}

json emit_int_vector(const IntVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

json emit_node(const SeriesDocument& doc, bool nested) {
  json j;
  j["type"] = document_type_name(doc.type);
  switch (doc.type) {
    case DocumentType::Toric:
      j["d"] = doc.d;
      j["polytope"] = json::array();
      for (const auto& v : doc.polytope) j["polytope"].push_back(emit_int_vector(v));
      break;
    case DocumentType::Generated:
      j["d"] = doc.d;
      j["generators"] = json::array();
      for (const auto& g : doc.generators) j["generators"].push_back({{"degree", g.degree}, {"poly", emit_poly(g.poly)}});
      break;
    case DocumentType::Explicit:
      j["d"] = doc.d;
      j["max_degree"] = doc.max_degree;
      j["bases"] = json::object();
      for (const auto& [n, polys] : doc.bases) {
        json list = json::array();
        for (const auto& p : polys) list.push_back(emit_poly(p));
        j["bases"][std::to_string(n)] = list;
      }
      break;
    case DocumentType::Multicomponent:
      j["max_degree"] = doc.max_degree;
      if (doc.glued) {
        j["glue"] = "origin";
        j["components"] = json::array();
        for (const auto& c : doc.components) j["components"].push_back(emit_node(c, true));
      } else {
        j["component_dims"] = doc.component_dims;
        j["bases"] = json::object();
        for (const auto& [n, tuples] : doc.tuples) {
          json list = json::array();
          for (const auto& t : tuples) {
            json row = json::array();
            for (const auto& p : t) row.push_back(emit_poly(p));
            list.push_back(row);
          }
          j["bases"][std::to_string(n)] = list;
        }
      }
      break;
    case DocumentType::Semigroup:
      j["d"] = doc.d;
      j["generators"] = json::array();
      for (const auto& g : doc.semigroup_generators) j["generators"].push_back(emit_int_vector(g));
      break;
  }
  if (!nested) {
    j["schema_version"] = doc.schema_version;
    if (doc.options.max_degree || !doc.options.p.empty()) {
      json o = json::object();
      if (doc.options.max_degree) o["max_degree"] = *doc.options.max_degree;
      if (!doc.options.p.empty()) o["p"] = doc.options.p;
      j["options"] = o;
    }
  }
  return j;
}

}  // namespace

std::string document_type_name(DocumentType t) {
  switch (t) {
    case DocumentType::Toric: return "toric";
    case DocumentType::Generated: return "generated";
    case DocumentType::Explicit: return "explicit";
    case DocumentType::Multicomponent: return "multicomponent";
    case DocumentType::Semigroup: return "semigroup";
  }
  return "unknown";
}

Rational parse_rational(const std::string& s) {
  static const std::regex pattern(R"([+-]?[0-9]+(/[0-9]+)?)");
  if (!std::regex_match(s, pattern)) throw Error(ErrorCode::BadRational, "not an exact rational: \"" + s + "\"");
  const auto slash = s.find('/');
  const std::string num = s.substr(s[0] == '+' ? 1 : 0, slash == std::string::npos ? std::string::npos
                                                                                    : slash - (s[0] == '+' ? 1 : 0));
  Integer p(num, 10);
  Integer q = 1;
  if (slash != std::string::npos) {
    q = Integer(s.substr(slash + 1), 10);
    if (q == 0) throw Error(ErrorCode::BadRational, "zero denominator: \"" + s + "\"");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

SeriesDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DocumentError(ErrorCode::SchemaError, "", std::string("invalid JSON: ") + e.what());
  }
  return parse_node(j, "", false);
}

std::string emit_document(const SeriesDocument& doc) { return emit_node(doc, false).dump(2) + "\n"; }

GradedLinearSeries to_series(const SeriesDocument& doc) {
  switch (doc.type) {
    case DocumentType::Toric: return GradedLinearSeries::toric(doc.d, doc.polytope);
    case DocumentType::Generated: return GradedLinearSeries::generated(doc.d, doc.generators);
    case DocumentType::Explicit: return GradedLinearSeries::explicit_series(doc.d, doc.max_degree, doc.bases);
    default: throw DocumentError(ErrorCode::SchemaError, "/type", "document is not a single graded series");
  }
}

MultiComponentSeries to_multicomponent(const SeriesDocument& doc) {
  if (doc.type != DocumentType::Multicomponent)
    throw DocumentError(ErrorCode::SchemaError, "/type", "document is not a multicomponent series");
  if (doc.glued) {
    std::vector<GradedLinearSeries> parts;
    for (const auto& c : doc.components) parts.push_back(to_series(c));
    return MultiComponentSeries::glued_at_origin(parts, doc.max_degree);
  }
  return MultiComponentSeries::from_tuples(doc.component_dims, doc.max_degree, doc.tuples);
}

GradedSemigroup to_semigroup(const SeriesDocument& doc) {
  if (doc.type != DocumentType::Semigroup)
    throw DocumentError(ErrorCode::SchemaError, "/type", "document is not a semigroup");
  return GradedSemigroup::from_generators(doc.d, doc.semigroup_generators);
}

}  // namespace newtok
