// newtok: analyze graded linear series documents from the command line.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "newtok/document.hpp"
#include "newtok/error.hpp"

namespace {

std::vector<long> parse_list(const std::string& text, long min_value, const char* what) {
  std::vector<long> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || v < min_value)
      throw CLI::ValidationError(what, "expected a comma-separated list of integers >= " + std::to_string(min_value));
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError(what, "empty list");
  return out;
}

const std::map<std::string, std::string> kDescriptions = {
    {"analyze", "index m, Kodaira-Iitaka dimension kappa and dim L_n per degree"},
    {"body", "Newton-Okounkov body of the value semigroup: vertices, volume, ind, body limit"},
    {"limit", "dim L_{nm} / n^kappa for n*m up to the degree bound, with the predicted limit"},
    {"degree", "degree of the image of the p-th Veronese by two routes, for each p"},
    {"sumset", "sumset counts #(n * S_{pm}) against slice counts and Veronese dimensions"},
    {"decompose", "kernel chain over the components of a reduced series, with residue tables"},
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("FILE", "cannot read " + path);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton-Okounkov volume and degree limits for graded linear series"};
  app.require_subcommand(1, 1);

  std::string file = "-";
  std::optional<long> max_degree;
  std::string p_text, ordering_text, tolerance_text, format = "json";
  std::optional<long> n_max;

  for (const auto& name : newtok::command_names()) {
    auto* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("file", file, "series document (JSON), '-' for stdin")->capture_default_str();
    sub->add_option("--max-degree", max_degree, "degree bound N")->check(CLI::PositiveNumber);
    sub->add_option("--p", p_text, "comma-separated list of p values");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--ordering", ordering_text, "component order for decompose, e.g. 2,1");
    sub->add_option("--tolerance", tolerance_text, "convergence threshold as a rational, e.g. 1/50");
    sub->add_option("--n-max", n_max, "largest n for sumset tables")->check(CLI::PositiveNumber);
  }

  newtok::RunOptions opts;
  try {
    app.parse(argc, argv);
    opts.max_degree = max_degree;
    opts.n_max = n_max;
    opts.format = format == "csv" ? newtok::OutputFormat::Csv : newtok::OutputFormat::Json;
    if (!p_text.empty()) opts.p = parse_list(p_text, 1, "--p");
    if (!ordering_text.empty()) {
      auto order = parse_list(ordering_text, 1, "--ordering");
      std::vector<long> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      std::vector<long> expected(sorted.size());
      std::iota(expected.begin(), expected.end(), 1L);
      if (sorted != expected) throw CLI::ValidationError("--ordering", "must be a permutation of 1..s");
      for (long i : order) opts.ordering.push_back(static_cast<std::size_t>(i - 1));
    }
    if (!tolerance_text.empty()) {
      try {
        opts.tolerance = newtok::parse_rational(tolerance_text);
      } catch (const newtok::Error& e) {
        throw CLI::ValidationError("--tolerance", e.what());
      }
    }
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : newtok::kExitValidation;
  }

  std::string text;
  try {
    text = read_input(file);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return newtok::kExitValidation;
  }

  auto* sub = app.get_subcommands().front();
  auto result = newtok::run(sub->get_name(), text, opts);
  (result.exit_code == newtok::kExitOk ? std::cout : std::cerr) << result.output;
  return result.exit_code;
}
