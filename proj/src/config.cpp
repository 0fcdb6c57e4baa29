#include "shiftedprime/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <vector>

#include "shiftedprime/error.hpp"

#ifndef SHIFTEDPRIME_DEFAULT_DATA_DIR
#define SHIFTEDPRIME_DEFAULT_DATA_DIR "data"
#endif

namespace shiftedprime {

namespace {

struct Field {
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

// Shortest representation that round-trips.
std::string show(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw Error(ErrorKind::ParseError, key + ": not a number: '" + v + "'");
  return out;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  std::int64_t out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw Error(ErrorKind::ParseError, key + ": not an integer: '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw Error(ErrorKind::ParseError, key + ": not a boolean: '" + v + "'");
}

Field real(const std::string& key, double RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return show(c.*member); },
          [member, key](RunConfig& c, const std::string& v) { c.*member = to_double(key, v); }};
}

template <typename Struct>
Field real(const std::string& key, Struct RunConfig::*outer, double Struct::*member) {
  return {key, [=](const RunConfig& c) { return show(c.*outer.*member); },
          [=](RunConfig& c, const std::string& v) { c.*outer.*member = to_double(key, v); }};
}

Field integer(const std::string& key, std::int64_t RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return std::to_string(c.*member); },
          [member, key](RunConfig& c, const std::string& v) { c.*member = to_int(key, v); }};
}

Field text(const std::string& key, std::string RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return c.*member; },
          [member](RunConfig& c, const std::string& v) { c.*member = v; }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"c1", [](const RunConfig& c) { return show(c.majorarcs.dichotomy.c1); },
                 [](RunConfig& c, const std::string& v) { c.majorarcs.dichotomy.c1 = to_double("c1", v); }});
    f.push_back({"C1", [](const RunConfig& c) { return show(c.majorarcs.dichotomy.C1); },
                 [](RunConfig& c, const std::string& v) { c.majorarcs.dichotomy.C1 = to_double("C1", v); }});
    f.push_back(real("C3", &RunConfig::majorarcs, &MajorArcConstants::C3));
    f.push_back(real("c4", &RunConfig::majorarcs, &MajorArcConstants::c4));
    f.push_back(real("zero_budget", &RunConfig::majorarcs, &MajorArcConstants::zero_budget));
    f.push_back(real("tail_budget", &RunConfig::majorarcs, &MajorArcConstants::tail_budget));
    f.push_back(real("decomposition_C", &RunConfig::decomposition_C));
    f.push_back(real("C4", &RunConfig::increment, &IncrementConstants::C4));
    f.push_back(real("C5", &RunConfig::increment, &IncrementConstants::C5));
    f.push_back(real("C6", &RunConfig::increment, &IncrementConstants::C6));
    f.push_back(real("c5", &RunConfig::increment, &IncrementConstants::c5));
    f.push_back(real("c6", &RunConfig::increment, &IncrementConstants::c6));
    f.push_back(real("c7", &RunConfig::increment, &IncrementConstants::c7));
    f.push_back(real("c8", &RunConfig::increment, &IncrementConstants::c8));
    f.push_back(real("c9", &RunConfig::increment, &IncrementConstants::c9));
    f.push_back(real("c10", &RunConfig::increment, &IncrementConstants::c10));
    f.push_back(real("Cprime", &RunConfig::increment, &IncrementConstants::Cprime));
    f.push_back({"Qprime_override",
                 [](const RunConfig& c) { return c.search.arcs ? show(c.search.arcs->Qprime) : std::string("none"); },
                 [](RunConfig& c, const std::string& v) {
                   if (v == "none") {
                     c.search.arcs.reset();
                     return;
                   }
                   if (!c.search.arcs) c.search.arcs = ArcOverride{};
                   c.search.arcs->Qprime = to_double("Qprime_override", v);
                 }});
    f.push_back({"Q_override",
                 [](const RunConfig& c) { return c.search.arcs ? show(c.search.arcs->Q) : std::string("none"); },
                 [](RunConfig& c, const std::string& v) {
                   if (v == "none") {
                     c.search.arcs.reset();
                     return;
                   }
                   if (!c.search.arcs) c.search.arcs = ArcOverride{};
                   c.search.arcs->Q = to_double("Q_override", v);
                 }});
    f.push_back({"max_difference", [](const RunConfig& c) { return std::to_string(c.search.max_difference); },
                 [](RunConfig& c, const std::string& v) { c.search.max_difference = to_int("max_difference", v); }});
    f.push_back({"min_length_fraction", [](const RunConfig& c) { return show(c.search.min_length_fraction); },
                 [](RunConfig& c, const std::string& v) {
                   c.search.min_length_fraction = to_double("min_length_fraction", v);
                 }});
    f.push_back({"grid_factor", [](const RunConfig& c) { return std::to_string(c.search.grid_factor); },
                 [](RunConfig& c, const std::string& v) { c.search.grid_factor = to_int("grid_factor", v); }});
    f.push_back({"enforce_hypotheses", [](const RunConfig& c) { return std::string(c.enforce_hypotheses ? "true" : "false"); },
                 [](RunConfig& c, const std::string& v) { c.enforce_hypotheses = to_bool("enforce_hypotheses", v); }});
    f.push_back({"allow_out_of_hypothesis",
                 [](const RunConfig& c) { return std::string(c.majorarcs.allow_out_of_hypothesis ? "true" : "false"); },
                 [](RunConfig& c, const std::string& v) {
                   c.majorarcs.allow_out_of_hypothesis = to_bool("allow_out_of_hypothesis", v);
                 }});
    f.push_back(real("bound_C", &RunConfig::bound_C));
    f.push_back(real("bound_c", &RunConfig::bound_c));
    f.push_back(integer("sieve_limit", &RunConfig::sieve_limit));
    f.push_back(integer("exact_ceiling", &RunConfig::exact_ceiling));
    f.push_back(integer("node_budget", &RunConfig::node_budget));
    f.push_back(text("zeta_zeros", &RunConfig::zeta_zeros));
    f.push_back(text("lfunction_zeros", &RunConfig::lfunction_zeros));
    f.push_back(text("output_dir", &RunConfig::output_dir));
    f.push_back({"seed", [](const RunConfig& c) { return std::to_string(c.seed); },
                 [](RunConfig& c, const std::string& v) { c.seed = static_cast<std::uint64_t>(to_int("seed", v)); }});
    return f;
  }();
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void check_ranges(const RunConfig& c) {
  const auto& inc = c.increment;
  const auto positive = {std::pair{"c1", c.majorarcs.dichotomy.c1}, {"C3", c.majorarcs.C3}, {"c4", c.majorarcs.c4},
                         {"zero_budget", c.majorarcs.zero_budget}, {"tail_budget", c.majorarcs.tail_budget},
                         {"decomposition_C", c.decomposition_C}, {"C4", inc.C4}, {"C5", inc.C5}, {"C6", inc.C6},
                         {"c5", inc.c5}, {"c9", inc.c9}, {"c10", inc.c10}, {"Cprime", inc.Cprime},
                         {"bound_C", c.bound_C}, {"bound_c", c.bound_c}};
  for (const auto& [key, value] : positive) {
    if (!(value > 0.0)) throw Error(ErrorKind::InvalidArgument, std::string(key) + " must be positive");
  }
  // Zero switches the corresponding extraction threshold off.
  for (const auto& [key, value] : {std::pair{"c6", inc.c6}, {"c7", inc.c7}, {"c8", inc.c8}}) {
    if (!(value >= 0.0)) throw Error(ErrorKind::InvalidArgument, std::string(key) + " must be non-negative");
  }
  if (!(c.majorarcs.dichotomy.C1 >= 10.0)) throw Error(ErrorKind::InvalidArgument, "C1 must be at least 10");
  if (c.sieve_limit < 2 || c.exact_ceiling < 1 || c.node_budget < 1 || c.search.max_difference < 1 ||
      c.search.grid_factor < 4) {
    throw Error(ErrorKind::InvalidArgument, "sieve_limit, exact_ceiling, node_budget, max_difference must be "
                                            "positive and grid_factor at least 4");
  }
  if (c.search.arcs && !(c.search.arcs->Q >= c.search.arcs->Qprime && c.search.arcs->Qprime >= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "arc overrides need Q_override >= Qprime_override >= 1");
  }
}

}  // namespace

std::string RunConfig::echo() const {
  std::string out;
  for (const auto& f : fields()) out += f.key + " = " + f.get(*this) + "\n";
  return out;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : echo()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  std::int64_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = source + ":" + std::to_string(number);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool known = false;
    for (const auto& f : fields()) {
      if (f.key != key) continue;
      try {
        f.set(config, value);
      } catch (const Error& e) {
        throw Error(e.kind(), where + ": " + e.detail());
      }
      known = true;
      break;
    }
    if (!known) throw Error(ErrorKind::ParseError, where + ": unknown key '" + key + "'");
  }
  check_ranges(config);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("SHIFTEDPRIME_DATA"); env != nullptr && *env != '\0') return env;
  return SHIFTEDPRIME_DEFAULT_DATA_DIR;
}

std::filesystem::path data_path(const std::string& name) {
  const std::filesystem::path p(name);
  return p.is_absolute() ? p : data_directory() / p;
}

}  // namespace shiftedprime
