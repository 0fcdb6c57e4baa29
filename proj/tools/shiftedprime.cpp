// Command-line driver: sieves, invariant suites, set solvers, increment runs, dichotomy scans.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "shiftedprime/arith.hpp"
#include "shiftedprime/characters.hpp"
#include "shiftedprime/config.hpp"
#include "shiftedprime/diffsets.hpp"
#include "shiftedprime/error.hpp"
#include "shiftedprime/increment.hpp"
#include "shiftedprime/zerodata.hpp"
#include "suites.hpp"

using nlohmann::json;
namespace sp = shiftedprime;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitIncompleteData = 3;
constexpr int kExitBudget = 4;

int exit_code(sp::ErrorKind kind) {
  switch (kind) {
    case sp::ErrorKind::HypothesisViolation:
    case sp::ErrorKind::LemmaViolation:
      return kExitHypothesis;
    case sp::ErrorKind::IncompleteData:
    case sp::ErrorKind::MissingCompletenessHeader:
      return kExitIncompleteData;
    case sp::ErrorKind::BudgetExhausted:
      return kExitBudget;
    default:
      return kExitFailure;
  }
}

sp::RunConfig read_config(const std::string& path) { return path.empty() ? sp::RunConfig{} : sp::load_config(path); }

json config_json(const sp::RunConfig& config) {
  json j = json::object();
  std::istringstream in(config.echo());
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

// Writes to `path`, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw sp::Error(sp::ErrorKind::Io, "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

sp::ZeroFileFormat sniff_format(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw sp::Error(sp::ErrorKind::Io, "cannot read " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string token;
    int count = 0;
    while (fields >> token) ++count;
    if (count == 0) continue;
    return count == 1 ? sp::ZeroFileFormat::ZetaHeights : sp::ZeroFileFormat::Tabular;
  }
  return sp::ZeroFileFormat::Tabular;
}

int cmd_sieve(std::int64_t limit, const std::string& out_path, const sp::RunConfig& config) {
  if (limit < 1) throw sp::Error(sp::ErrorKind::InvalidArgument, "limit must be at least 1");
  Output out(out_path);
  const sp::LambdaTable lambda(std::max<std::int64_t>(limit, 2), config.sieve_limit);
  std::int64_t primes = 0, prime_powers = 0;
  for (std::int64_t n = 2; n <= limit; ++n) {
    if (lambda(n) == 0.0) continue;
    ++prime_powers;
    if (sp::is_prime(n)) ++primes;
  }
  auto& os = out.stream();
  os.precision(12);
  os << "# config_hash=" << config.hash() << "\n";
  std::istringstream echo(config.echo());
  for (std::string line; std::getline(echo, line);) os << "# " << line << "\n";
  os << "# limit=" << limit << " primes=" << primes << " prime_powers=" << prime_powers
     << " psi=" << lambda.psi(static_cast<double>(limit)) << "\n";
  os << "x,psi\n";
  std::vector<std::int64_t> checkpoints;
  for (std::int64_t base = 1; base <= limit; base *= 10) {
    for (std::int64_t m : {1, 2, 5}) {
      if (base * m <= limit) checkpoints.push_back(base * m);
    }
    if (base > limit / 10) break;
  }
  if (checkpoints.empty() || checkpoints.back() != limit) checkpoints.push_back(limit);
  for (std::int64_t x : checkpoints) os << x << ',' << lambda.psi(static_cast<double>(x)) << '\n';
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& csv_path, const sp::RunConfig& config) {
  std::optional<std::filesystem::path> csv;
  if (!csv_path.empty()) csv = csv_path;
  json report;
  report["suite"] = suite;
  report["config_hash"] = config.hash();
  report["config"] = config_json(config);
  try {
    const auto result = sp::cli::run_suite(suite, config, csv);
    report["pass"] = result.pass();
    json failures = json::array();
    json checks = json::array();
    for (const auto& c : result.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      if (!c.pass) failures.push_back({{"name", c.name}, {"detail", c.detail}});
    }
    report["checks"] = checks;
    report["failures"] = failures;
    std::cout << report.dump(2) << "\n";
    return result.pass() ? 0 : kExitFailure;
  } catch (const sp::Error& e) {
    report["pass"] = false;
    report["error"] = {{"kind", sp::to_string(e.kind())}, {"message", e.detail()}};
    std::cout << report.dump(2) << "\n";
    return exit_code(e.kind());
  }
}

int cmd_maxset(std::int64_t N, std::int64_t d, const std::string& mode, const std::string& out_path,
               const sp::RunConfig& config) {
  json j;
  j["config_hash"] = config.hash();
  j["config"] = config_json(config);
  j["mode"] = mode;
  j["N"] = N;
  j["d"] = d;
  sp::AvoidingSet set;
  bool optimal = true;
  if (mode == "exact") {
    const auto result = sp::max_set_exact(N, d, {config.node_budget, config.exact_ceiling});
    set = result.set;
    optimal = result.optimal;
    j["nodes"] = result.nodes;
  } else {
    set = config.seed == 0 ? sp::greedy_set(N, d) : sp::greedy_set(N, d, sp::GreedyOrder::random(config.seed));
  }
  j["optimal"] = optimal;
  j["size"] = set.elements.size();
  j["density"] = set.density();
  j["elements"] = set.elements;
  Output out(out_path);
  out.stream() << j.dump() << "\n";
  std::cerr << "size " << set.elements.size() << (optimal ? "" : " (node budget exhausted)") << "\n";
  return optimal ? 0 : kExitBudget;
}

int cmd_increment(std::int64_t N, std::int64_t steps, const std::string& out_path, const sp::RunConfig& config) {
  const auto A0 = config.seed == 0 ? sp::greedy_set(N, 1) : sp::greedy_set(N, 1, sp::GreedyOrder::random(config.seed));
  sp::IterationOptions options;
  options.search = config.search;
  options.enforce_hypotheses = config.enforce_hypotheses;
  const auto trajectory = sp::run_iteration(A0.elements, N, config.increment, steps, options);
  Output out(out_path);
  json header;
  header["config_hash"] = config.hash();
  header["config"] = config_json(config);
  header["N"] = N;
  header["initial_size"] = A0.elements.size();
  header["steps"] = trajectory.size();
  out.stream() << header.dump() << "\n";
  for (const auto& step : trajectory) out.stream() << sp::step_json(step) << "\n";
  return 0;
}

int cmd_dichotomy(double D, double T, std::vector<std::string> zero_paths, const sp::RunConfig& config) {
  if (zero_paths.empty()) {
    zero_paths = {sp::data_path(config.zeta_zeros).string(), sp::data_path(config.lfunction_zeros).string()};
  }
  sp::ZeroDatabase db;
  for (const auto& p : zero_paths) db.load(p, sniff_format(p));
  const auto verdict = sp::detect_dichotomy(db, D, T, config.majorarcs.dichotomy);
  json j;
  j["config_hash"] = config.hash();
  j["config"] = config_json(config);
  j["D"] = D;
  j["T"] = T;
  j["threshold"] = verdict.threshold;
  j["verdict"] = verdict.exceptional ? "exceptional" : "unexceptional";
  if (verdict.witness) {
    j["witness"] = {{"character", verdict.witness->character.str()},
                    {"modulus", verdict.witness->modulus},
                    {"beta", verdict.witness->beta}};
  }
  j["sources"] = db.provenance();
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_characters(std::int64_t q, const std::string& out_path) {
  const sp::CharacterGroup group(q);
  json chars = json::array();
  for (const auto& chi : group.characters()) {
    json values = json::array();
    for (Eigen::Index n = 0; n < chi.values().size(); ++n) {
      values.push_back({chi.values()[n].real(), chi.values()[n].imag()});
    }
    chars.push_back({{"id", chi.id().str()},
                     {"conductor", chi.conductor()},
                     {"primitive", chi.is_primitive()},
                     {"real", chi.is_real()},
                     {"values", values}});
  }
  Output out(out_path);
  out.stream() << json{{"modulus", q}, {"characters", chars}}.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shifted-prime difference sets: analytic checks and combinatorial experiments"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");

  std::int64_t limit = 0;
  std::string out_path;
  auto* sieve = app.add_subcommand("sieve", "Chebyshev psi checkpoints and Lambda summary");
  sieve->add_option("--limit", limit)->required();
  sieve->add_option("--out", out_path);

  std::string suite;
  std::string csv_path;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(shiftedprime::cli::suite_names()));
  verify->add_option("--config", config_path);
  verify->add_option("--out", csv_path, "row-level CSV report");

  std::int64_t N = 0, d = 1, steps = 0;
  std::string mode = "exact";
  auto* maxset = app.add_subcommand("maxset", "largest shifted-prime avoiding subset of [N]");
  maxset->add_option("--N", N)->required();
  maxset->add_option("--d", d);
  maxset->add_option("--mode", mode)->check(CLI::IsMember({"exact", "greedy"}));
  maxset->add_option("--out", out_path);
  maxset->add_option("--config", config_path);

  auto* increment = app.add_subcommand("increment", "density increment iteration from the greedy set");
  increment->add_option("--N", N)->required();
  increment->add_option("--steps", steps)->required();
  increment->add_option("--config", config_path);
  increment->add_option("--out", out_path);

  double D = 10.0, T = 10.0;
  std::vector<std::string> zero_paths;
  auto* dichotomy = app.add_subcommand("dichotomy", "scan zero data for an exceptional zero");
  dichotomy->add_option("--D", D)->required();
  dichotomy->add_option("--T", T)->required();
  dichotomy->add_option("--zeros", zero_paths, "zero files (default: shipped fixtures)");
  dichotomy->add_option("--config", config_path);

  std::int64_t q = 1;
  auto* characters = app.add_subcommand("characters", "character table of (Z/qZ)^* as JSON");
  characters->add_option("--q", q)->required();
  characters->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = read_config(config_path);
    if (*sieve) return cmd_sieve(limit, out_path, config);
    if (*verify) return cmd_verify(suite, csv_path, config);
    if (*maxset) return cmd_maxset(N, d, mode, out_path, config);
    if (*increment) return cmd_increment(N, steps, out_path, config);
    if (*dichotomy) return cmd_dichotomy(D, T, zero_paths, config);
    if (*characters) return cmd_characters(q, out_path);
  } catch (const sp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return kExitFailure;
}
