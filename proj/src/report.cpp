// Command dispatch and report rendering (JSON canonical, CSV projection).

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "newtok/document.hpp"
#include "newtok/error.hpp"
#include "newtok/hull.hpp"

namespace newtok {

using json = nlohmann::json;

namespace {

constexpr long kDefaultMaxDegree = 12;
constexpr long kDefaultSumsetN = 10;

// Arbitrary-precision values travel as strings; machine-sized ones as numbers.
json big(const Integer& z) { return to_string(z); }

void put_rational(json& obj, const std::string& key, const Rational& r) {
  obj[key] = to_string(r);
  obj[key + "_approx"] = approx_string(r);
}

void put_optional_rational(json& obj, const std::string& key, const std::optional<Rational>& r) {
  if (r) {
    put_rational(obj, key, *r);
  } else {
    obj[key] = nullptr;
  }
}

json kappa_json(const std::optional<long>& k) { return k ? json(*k) : json("-inf"); }

json rat_vector(const RatVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json int_vectors(const std::vector<IntVec>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json row = json::array();
    for (const auto& x : v) row.push_back(big(x));
    out.push_back(row);
  }
  return out;
}

json convergence_json(const Convergence& c) {
  json out;
  put_optional_rational(out, "last_delta", c.last_delta);
  out["nonincreasing"] = c.nonincreasing;
  out["nondecreasing"] = c.nondecreasing;
  put_optional_rational(out, "gap", c.gap);
  out["within_tolerance"] = c.within_tolerance ? json(*c.within_tolerance) : json(nullptr);
  return out;
}

json limit_rows(const std::vector<LimitRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row{{"n", r.n}, {"degree", r.degree}, {"dim", big(r.dim)}};
    put_rational(row, "ratio", r.ratio);
    out.push_back(row);
  }
  return out;
}

bool is_series(const SeriesDocument& doc) {
  return doc.type == DocumentType::Toric || doc.type == DocumentType::Generated || doc.type == DocumentType::Explicit;
}

[[noreturn]] void unsupported(const std::string& command, const SeriesDocument& doc) {
  throw DocumentError(ErrorCode::SchemaError, "/type",
                      "command \"" + command + "\" does not apply to " + document_type_name(doc.type) + " documents");
}

struct Context {
  const SeriesDocument& doc;
  const RunOptions& opts;

  long bound() const {
    if (opts.max_degree) return *opts.max_degree;
    if (doc.options.max_degree) return *doc.options.max_degree;
    if (doc.type == DocumentType::Explicit || doc.type == DocumentType::Multicomponent) return doc.max_degree;
    return kDefaultMaxDegree;
  }

  std::vector<long> p_list(std::vector<long> fallback) const {
    if (!opts.p.empty()) return opts.p;
    if (!doc.options.p.empty()) return doc.options.p;
    return fallback;
  }
};

json header(const std::string& command, const SeriesDocument& doc) {
  return json{{"command", command}, {"type", document_type_name(doc.type)}};
}

json semigroup_invariants(const GradedSemigroup& s) {
  json out;
  out["m"] = big(level_index(s));
  out["q"] = q(s);
  out["ind"] = big(ind(s));
  out["group_basis"] = int_vectors(group(s).basis());
  out["boundary_basis"] = int_vectors(boundary_lattice(s).basis());
  return out;
}

json analyze(const Context& c) {
  json out = header("analyze", c.doc);
  const long n_max = c.bound();
  out["max_degree"] = n_max;
  if (c.doc.type == DocumentType::Semigroup) {
    auto s = to_semigroup(c.doc);
    out.update(semigroup_invariants(s));
    out["rows"] = json::array();
    for (long k = 1; k <= n_max; ++k)
      out["rows"].push_back({{"level", k}, {"slice_size", s.slice(k).size()}});
    return out;
  }
  if (c.doc.type == DocumentType::Multicomponent) {
    auto m = to_multicomponent(c.doc);
    const long b = std::min(n_max, m.max_degree());
    out["max_degree"] = b;
    out["component_dims"] = m.component_dims();
    std::optional<long> kap;
    out["components"] = json::array();
    for (std::size_t i = 0; i < m.s(); ++i) {
      auto restricted = restrict(m, i).restricted;
      auto k = kappa(restricted, b);
      if (k.value && (!kap || *k.value > *kap)) kap = k.value;
      json comp{{"component", i + 1}, {"kappa", kappa_json(k.value)}, {"kappa_stable", k.stabilized()}};
      comp["m"] = k.value ? big(index(restricted, b).m) : json(nullptr);
      out["components"].push_back(comp);
    }
    out["kappa"] = kappa_json(kap);
    out["rows"] = json::array();
    for (long n = 1; n <= b; ++n) out["rows"].push_back({{"n", n}, {"dim", m.piece(n).size()}});
    return out;
  }

  auto l = to_series(c.doc);
  auto k = kappa(l, n_max);
  out["d"] = l.d();
  out["kappa"] = kappa_json(k.value);
  out["kappa_exact"] = k.exact;
  out["kappa_stable_since"] = k.stable_since;
  out["kappa_stabilized"] = k.stabilized();
  if (k.value) {
    auto idx = index(l, n_max);
    out["m"] = big(idx.m);
    out["m_exact"] = idx.exact;
  } else {
    out["m"] = nullptr;
    out["m_exact"] = false;
  }
  out["semigroup_exact"] = value_semigroup_is_exact(l);
  if (l.mode() == SeriesMode::Explicit) {
    auto check = subalgebra_check(l, n_max);
    out["subalgebra"] = check.ok;
    out["violation"] = check.violation ? json{check.violation->first, check.violation->second} : json(nullptr);
  }
  auto s = value_semigroup(l, n_max);
  out["rows"] = json::array();
  for (long n = 1; n <= n_max; ++n) {
    auto it = s.samples().find(n);
    std::size_t size = it == s.samples().end() ? 0 : it->second.size();
    out["rows"].push_back({{"n", n}, {"dim", degree_piece(l, n).size()}, {"slice_size", size}});
  }
  return out;
}

GradedSemigroup semigroup_of(const Context& c, long bound) {
  if (c.doc.type == DocumentType::Semigroup) return to_semigroup(c.doc);
  if (is_series(c.doc)) return value_semigroup(to_series(c.doc), bound);
  unsupported("body", c.doc);
}

json body(const Context& c) {
  json out = header("body", c.doc);
  auto s = semigroup_of(c, c.bound());
  auto p = nok_body(s);
  out.update(semigroup_invariants(s));
  out["vertices"] = json::array();
  for (const auto& v : p.vertices()) out["vertices"].push_back(rat_vector(v));
  out["dimension"] = p.dimension();
  const bool exact = c.doc.type == DocumentType::Semigroup || value_semigroup_is_exact(to_series(c.doc));
  out["exact"] = exact;
  out["inner_approximation"] = !s.has_generators() || !exact;
  put_rational(out, "volume", normalized_volume(p, *p.carrier()).value);
  put_rational(out, "body_limit", body_limit(s));
  return out;
}

json limit(const Context& c) {
  json out = header("limit", c.doc);
  const long n_max = c.bound();
  out["max_degree"] = n_max;
  if (c.opts.tolerance) put_rational(out, "tolerance", *c.opts.tolerance);
  if (c.doc.type == DocumentType::Semigroup) {
    auto s = to_semigroup(c.doc);
    const Integer m = level_index(s);
    const std::size_t qs = q(s);
    std::vector<LimitRow> rows;
    for (long k = 1; k * m.get_si() <= n_max; ++k) {
      Integer dim = static_cast<unsigned long>(s.slice(k * m.get_si()).size());
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(k), qs);
      Rational r(dim, den);
      r.canonicalize();
      rows.push_back({k, k * m.get_si(), dim, r});
    }
    Rational predicted = body_limit(s);
    Convergence conv;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].ratio > rows[i - 1].ratio) conv.nonincreasing = false;
      if (rows[i].ratio < rows[i - 1].ratio) conv.nondecreasing = false;
    }
    if (rows.size() >= 2) conv.last_delta = rows.back().ratio - rows[rows.size() - 2].ratio;
    if (!rows.empty()) {
      conv.gap = abs(rows.back().ratio - predicted);
      if (c.opts.tolerance) conv.within_tolerance = *conv.gap <= *c.opts.tolerance;
    }
    out["kappa"] = qs;
    out["kappa_exact"] = true;
    out["m"] = big(m);
    out["rows"] = limit_rows(rows);
    put_rational(out, "predicted", predicted);
    out["predicted_exact"] = true;
    out["convergence"] = convergence_json(conv);
    return out;
  }
  if (!is_series(c.doc)) unsupported("limit", c.doc);
  auto r = volume_limit_report(to_series(c.doc), n_max, c.opts.tolerance);
  out["kappa"] = r.kappa;
  out["kappa_exact"] = r.kappa_exact;
  out["kappa_stable_since"] = r.kappa_stable_since;
  out["m"] = big(r.m);
  out["rows"] = limit_rows(r.rows);
  put_optional_rational(out, "predicted", r.predicted);
  out["predicted_exact"] = r.predicted_exact;
  out["convergence"] = convergence_json(r.convergence);
  return out;
}

json degree(const Context& c) {
  if (!is_series(c.doc)) unsupported("degree", c.doc);
  json out = header("degree", c.doc);
  const long n_max = c.bound();
  auto ps = c.p_list({1, 2, 3});
  auto r = degree_limit_report(to_series(c.doc), ps, n_max);
  out["max_degree"] = n_max;
  out["kappa"] = r.kappa;
  out["m"] = big(r.m);
  put_optional_rational(out, "volume_limit", r.volume_limit);
  out["bounded_by_volume_limit"] = r.bounded_by_volume_limit;
  out["nondecreasing"] = r.nondecreasing;
  out["rows"] = json::array();
  for (const auto& row : r.rows) {
    json j{{"p", row.p},
           {"degree", row.degree},
           {"image_dimension", row.multiplicity.kappa},
           {"multiplicity", big(row.multiplicity.degree)}};
    j["finite_difference"] =
        row.multiplicity.finite_difference ? big(*row.multiplicity.finite_difference) : json("UNSTABLE");
    put_rational(j, "ratio", row.ratio);
    out["rows"].push_back(j);
  }
  return out;
}

json sumset(const Context& c) {
  json out = header("sumset", c.doc);
  const long n_max = c.opts.n_max.value_or(kDefaultSumsetN);
  auto ps = c.p_list({1});
  out["n_max"] = n_max;
  out["reports"] = json::array();

  std::optional<GradedLinearSeries> series;
  if (is_series(c.doc)) series = to_series(c.doc);
  else if (c.doc.type != DocumentType::Semigroup) unsupported("sumset", c.doc);

  for (long p : ps) {
    GradedSemigroup s = [&] {
      if (!series) return to_semigroup(c.doc);
      const long m = index(*series, c.bound()).m.get_si();
      // Exact generators extend past the sampled range; sampled-only series need it all.
      const long need = value_semigroup_is_exact(*series) ? p * m : n_max * p * m;
      return value_semigroup(*series, std::max(need, 1L));
    }();
    auto r = sumset_report(s, p, n_max, series ? &*series : nullptr);
    json rep{{"p", r.p}, {"m", big(r.m)}, {"q", r.q}, {"sandwich_holds", r.sandwich_holds}};
    put_optional_rational(rep, "body_limit", r.body_limit);
    put_optional_rational(rep, "gap", r.gap);
    rep["rows"] = json::array();
    for (const auto& row : r.rows) {
      json j{{"n", row.n}, {"sumset", row.sumset_count}, {"slice", row.slice_count}};
      j["veronese_dim"] = row.veronese_dim ? big(*row.veronese_dim) : json(nullptr);
      put_rational(j, "ratio", row.ratio);
      put_rational(j, "slice_ratio", row.slice_ratio);
      rep["rows"].push_back(j);
    }
    out["reports"].push_back(rep);
  }
  return out;
}

json decompose(const Context& c) {
  json out = header("decompose", c.doc);
  MultiComponentSeries m = [&] {
    if (c.doc.type == DocumentType::Multicomponent) return to_multicomponent(c.doc);
    if (is_series(c.doc)) return MultiComponentSeries::glued_at_origin({to_series(c.doc)}, c.bound());
    unsupported("decompose", c.doc);
  }();
  if (!c.opts.ordering.empty() && c.opts.ordering.size() != m.s())
    throw DocumentError(ErrorCode::SchemaError, "", "ordering lists " + std::to_string(c.opts.ordering.size()) +
                                                        " components but the series has " + std::to_string(m.s()));
  const long n_max = std::min(c.bound(), m.max_degree());
  auto r = decompose_reduced(m, n_max, c.opts.ordering);
  out["max_degree"] = n_max;
  json ordering = json::array();
  for (auto i : r.ordering) ordering.push_back(i + 1);
  out["ordering"] = ordering;
  out["kappa"] = r.kappa;
  out["r"] = big(r.r);
  out["additivity_holds"] = r.additivity_holds;
  out["steps"] = json::array();
  for (const auto& st : r.steps) {
    json j{{"component", st.component + 1}, {"kappa", kappa_json(st.kappa)}, {"kappa_stable", st.kappa_stable}};
    j["m"] = st.m ? big(*st.m) : json(nullptr);
    json dims = json::array();
    for (const auto& d : st.dims) dims.push_back(big(d));
    j["dims"] = dims;
    out["steps"].push_back(j);
  }
  out["rows"] = json::array();
  for (std::size_t n = 1; n <= r.dims.size(); ++n) {
    json row{{"n", n}, {"dim", big(r.dims[n - 1])}};
    json parts = json::array();
    for (const auto& st : r.steps) parts.push_back(big(st.dims[n - 1]));
    row["parts"] = parts;
    out["rows"].push_back(row);
  }
  out["tables"] = json::array();
  for (const auto& t : r.tables)
    out["tables"].push_back(
        {{"residue", t.residue}, {"rows", limit_rows(t.rows)}, {"convergence", convergence_json(t.convergence)}});
  return out;
}

// --- CSV ---------------------------------------------------------------------

std::string csv_cell(const json& v) {
  std::string s;
  if (v.is_null()) return "";
  if (v.is_string())
    s = v.get<std::string>();
  else
    s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

bool is_scalar(const json& v) { return !v.is_array() && !v.is_object(); }

// Flat table from rows, each prefixed by the given context columns.
std::string csv_table(const std::vector<std::pair<json, json>>& rows) {
  std::set<std::string> columns_set;
  std::vector<std::string> prefix;
  for (const auto& [ctx, row] : rows) {
    for (const auto& [k, v] : ctx.items())
      if (std::find(prefix.begin(), prefix.end(), k) == prefix.end()) prefix.push_back(k);
    for (const auto& [k, v] : row.items())
      if (is_scalar(v)) columns_set.insert(k);
  }
  std::vector<std::string> columns = prefix;
  for (const auto& k : columns_set)
    if (std::find(prefix.begin(), prefix.end(), k) == prefix.end()) columns.push_back(k);
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& [ctx, row] : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const auto& key = columns[i];
      json v = ctx.contains(key) ? ctx[key] : row.contains(key) ? row[key] : json(nullptr);
      out << (i ? "," : "") << csv_cell(v);
    }
    out << "\n";
  }
  return out.str();
}

std::string to_csv(const json& report) {
  std::vector<std::pair<json, json>> rows;
  if (report.contains("reports")) {
    for (const auto& rep : report["reports"])
      for (const auto& row : rep["rows"]) rows.emplace_back(json{{"p", rep["p"]}}, row);
    return csv_table(rows);
  }
  if (report.contains("tables")) {
    for (const auto& t : report["tables"])
      for (const auto& row : t["rows"]) rows.emplace_back(json{{"residue", t["residue"]}}, row);
    return csv_table(rows);
  }
  if (report.contains("rows")) {
    for (const auto& row : report["rows"]) rows.emplace_back(json::object(), row);
    return csv_table(rows);
  }
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [k, v] : report.items())
    if (is_scalar(v)) out << csv_cell(k) << "," << csv_cell(v) << "\n";
  return out.str();
}

json error_json(const Error& e) {
  json err{{"code", std::string(error_name(e.code()))}, {"message", e.what()}};
  if (auto* d = dynamic_cast<const DocumentError*>(&e)) err["pointer"] = d->pointer();
  return json{{"error", err}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"analyze", "body", "limit", "degree", "sumset", "decompose"};
  return names;
}

RunResult run(const std::string& command, const std::string& text, const RunOptions& options) {
  RunResult result;
  try {
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end())
      throw DocumentError(ErrorCode::SchemaError, "", "unknown command \"" + command + "\"");
    SeriesDocument doc = parse_document(text);
    Context ctx{doc, options};
    json report;
    if (command == "analyze") report = analyze(ctx);
    else if (command == "body") report = body(ctx);
    else if (command == "limit") report = limit(ctx);
    else if (command == "degree") report = degree(ctx);
    else if (command == "sumset") report = sumset(ctx);
    else report = decompose(ctx);
    result.output = options.format == OutputFormat::Csv ? to_csv(report) : report.dump(2) + "\n";
  } catch (const Error& e) {
    result.exit_code = is_validation_error(e.code()) ? kExitValidation : kExitRefusal;
    result.output = error_json(e).dump(2) + "\n";
  }
  return result;
}

}  // namespace newtok
