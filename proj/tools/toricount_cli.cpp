#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "toricount/khovanskii.hpp"
#include "toricount/oracle.hpp"
#include "toricount/problem.hpp"

namespace tc = toricount;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tc::ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int threads_from_env() {
  const char* s = std::getenv("TORICOUNT_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 0 || v > 1024) {
    std::cerr << "warning: ignoring TORICOUNT_THREADS=" << s << "\n";
    return 0;
  }
  return static_cast<int>(v);
}

json big(const tc::Int& v) {
  static const tc::Int kMaxExact = (tc::Int(1) << 53) - 1;
  if (v <= kMaxExact && v >= -kMaxExact)
    return json(static_cast<int64_t>(mpz_get_si(v.get_mpz_t())));
  return json(v.get_str());
}

int run_validate(const std::string& path, const std::string& format, bool skip_fan_validation) {
  tc::ProblemFile pf = tc::parse_problem(read_file(path));
  std::vector<std::string> errors;
  try {
    tc::BuiltProblem built = tc::build_problem(pf, !skip_fan_validation);
    for (size_t i = 0; i < built.data.size(); ++i)
      if (auto v = tc::validate_datum(built.data[i], built.fan))
        errors.push_back("system " + std::to_string(i) + ": " + v->message);
  } catch (const tc::ParseError&) {
    throw;
  } catch (const tc::Error& e) {
    errors.push_back(e.what());
  }
  if (format == "json") {
    json j{{"valid", errors.empty()}, {"errors", errors}};
    std::cout << j.dump(2) << "\n";
  } else if (errors.empty()) {
    std::cout << "valid\n";
  } else {
    for (const auto& e : errors) std::cout << "invalid: " << e << "\n";
  }
  return errors.empty() ? 0 : 1;
}

int run_count(const std::string& path, const std::string& format, bool explain,
              bool skip_fan_validation) {
  tc::ProblemFile pf = tc::parse_problem(read_file(path));
  tc::BuiltProblem built = tc::build_problem(pf, !skip_fan_validation);
  tc::ComponentReport report = tc::count_components(built.data, built.fan, threads_from_env());
  std::cout << (format == "json" ? tc::report_to_json(report, built.fan)
                                 : tc::report_to_text(report, built.fan, explain));
  return 0;
}

int run_khovanskii(const std::string& path, const std::string& format, bool explain) {
  tc::SupportsFile sf = tc::parse_supports(read_file(path));
  tc::KResult res = tc::k_torus(sf.supports);
  const char* case_name = res.kase == tc::KCase::AllPositive     ? "all_positive"
                          : res.kase == tc::KCase::NegativeDefect ? "negative_defect"
                                                                  : "zero_defect";
  auto table = tc::defect_table(sf.supports);
  if (format == "json") {
    json j;
    j["rank"] = sf.rank;
    j["case"] = case_name;
    j["j0"] = res.j0;
    j["value"] = big(res.value);
    json basis = json::array();
    for (const auto& b : res.lattice_basis) {
      json row = json::array();
      for (const auto& x : b.coords) row.push_back(big(x));
      basis.push_back(std::move(row));
    }
    j["lattice_basis"] = std::move(basis);
    json defects = json::array();
    for (const auto& [subset, d] : table)
      defects.push_back(json{{"subset", subset}, {"defect", d}});
    j["defects"] = std::move(defects);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "case: " << case_name << "\n";
    std::cout << "components: " << res.value.get_str() << "\n";
    if (!res.j0.empty()) {
      std::cout << "j0:";
      for (int i : res.j0) std::cout << " " << i;
      std::cout << "\n";
    }
    if (explain) {
      std::cout << "\nsubset -> defect\n";
      for (const auto& [subset, d] : table) {
        std::cout << "{";
        for (size_t i = 0; i < subset.size(); ++i) std::cout << (i ? "," : "") << subset[i];
        std::cout << "} -> " << d << "\n";
      }
    }
  }
  return 0;
}

struct SuiteResult {
  std::string name;
  int agree = 0;
  int total = 0;
  std::vector<std::string> failures;
};

SuiteResult mixed_volume_suite(uint64_t seed, int cases) {
  SuiteResult s{"mixed-volume", 0, cases, {}};
  for (int c = 0; c < cases; ++c) {
    tc::Rng rng(seed, 0x100000 + static_cast<uint64_t>(c));
    int rank = static_cast<int>(rng.uniform(1, 3));
    std::vector<tc::PointSet> sets;
    for (int i = 0; i < rank; ++i) sets.push_back(tc::random_point_set(rng, rank, 6, 4));
    tc::LatticeVolume a = tc::mixed_volume(sets);
    tc::LatticeVolume b = tc::mixed_volume_oracle(sets);
    if (a == b)
      ++s.agree;
    else
      s.failures.push_back("case " + std::to_string(c) + ": formula " + a.get_str() +
                           " != interpolation " + b.get_str());
  }
  return s;
}

SuiteResult defect_suite(uint64_t seed, int cases) {
  SuiteResult s{"defect-table", 0, cases, {}};
  for (int c = 0; c < cases; ++c) {
    tc::Rng rng(seed, 0x200000 + static_cast<uint64_t>(c));
    int rank = static_cast<int>(rng.uniform(1, 3));
    auto family = tc::random_support_family(rng, rank, 4, 4, 3);
    if (tc::defect_table(family) == tc::oracle_defect_table(family))
      ++s.agree;
    else
      s.failures.push_back("case " + std::to_string(c) + ": defect tables differ");
  }
  return s;
}

SuiteResult resultant_suite(uint64_t seed, int cases) {
  SuiteResult s{"resultant", 0, cases, {}};
  for (int c = 0; c < cases; ++c) {
    tc::Rng rng(seed, 0x300000 + static_cast<uint64_t>(c));
    auto [a, b] = tc::draw_resultant_pair(rng, 6, 3);
    tc::KResult k = tc::k_torus({a, b});
    tc::ResultantCount rc = tc::bernstein_count_with_retries(a, b, rng.next_u64(), 10);
    if (rc.status != tc::ResultantStatus::Ok)
      s.failures.push_back("case " + std::to_string(c) + ": oracle inconclusive after " +
                           std::to_string(rc.attempts) + " draws");
    else if (tc::Int(rc.count) != k.value)
      s.failures.push_back("case " + std::to_string(c) + ": formula " + k.value.get_str() +
                           " != resultant " + std::to_string(rc.count));
    else
      ++s.agree;
  }
  return s;
}

int run_oracle(uint64_t seed, int cases, const std::string& format) {
  std::vector<SuiteResult> suites{mixed_volume_suite(seed, cases), defect_suite(seed, cases),
                                  resultant_suite(seed, cases)};
  bool ok = true;
  for (const auto& s : suites) ok = ok && s.agree == s.total;
  if (format == "json") {
    json j;
    j["seed"] = seed;
    j["all_agree"] = ok;
    json arr = json::array();
    for (const auto& s : suites)
      arr.push_back(json{{"suite", s.name}, {"agree", s.agree}, {"total", s.total},
                         {"failures", s.failures}});
    j["suites"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& s : suites) {
      std::cout << s.name << ": " << s.agree << "/" << s.total << " agree\n";
      for (const auto& f : s.failures) std::cout << "  " << f << "\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counts irreducible components of intersections of general members of "
               "equivariant linear systems on toric varieties"};
  app.require_subcommand(1);

  std::string path;
  std::string format = "table";
  bool explain = false;
  bool skip_fan_validation = false;
  uint64_t seed = 0;
  int cases = 20;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
  };

  CLI::App* validate = app.add_subcommand("validate", "check a problem file");
  validate->add_option("file", path, "problem file")->required();
  add_format(validate);
  validate->add_flag("--skip-fan-validation", skip_fan_validation,
                     "trust the fan's common-face condition");

  CLI::App* count = app.add_subcommand("count", "count components for a problem file");
  count->add_option("file", path, "problem file")->required();
  add_format(count);
  count->add_flag("--explain", explain, "per-orbit diagnostics");
  count->add_flag("--skip-fan-validation", skip_fan_validation,
                  "trust the fan's common-face condition");

  CLI::App* khov = app.add_subcommand("khovanskii", "count torus components for bare supports");
  khov->add_option("file", path, "supports file")->required();
  add_format(khov);
  khov->add_flag("--explain", explain, "print the defect table");

  CLI::App* oracle = app.add_subcommand("oracle", "cross-check the formulas against oracles");
  add_format(oracle);
  oracle->add_option("--seed", seed, "base seed");
  oracle->add_option("--cases", cases, "cases per suite")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return run_validate(path, format, skip_fan_validation);
    if (count->parsed()) return run_count(path, format, explain, skip_fan_validation);
    if (khov->parsed()) return run_khovanskii(path, format, explain);
    return run_oracle(seed, cases, format);
  } catch (const tc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const tc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
