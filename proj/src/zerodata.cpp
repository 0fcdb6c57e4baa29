#include "shiftedprime/zerodata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "shiftedprime/arith.hpp"
#include "shiftedprime/error.hpp"

namespace shiftedprime {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_failure(const std::string& source, int line, const std::string& what) {
  throw Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& token, const std::string& source, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size() || !std::isfinite(v)) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    parse_failure(source, line, "expected a number, got '" + token + "'");
  }
}

std::int64_t parse_integer(const std::string& token, const std::string& source, int line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    parse_failure(source, line, "expected an integer, got '" + token + "'");
  }
}

// Parses "# key value" headers; returns false for ordinary comments.
bool parse_header(const std::string& comment, const std::string& key, double& value) {
  std::istringstream in(comment.substr(1));
  std::string word;
  if (!(in >> word) || word != key) return false;
  return static_cast<bool>(in >> value);
}

struct ResolvedCharacter {
  CharacterId primitive;
  bool is_real = false;
};

ResolvedCharacter resolve(const DirichletCharacter& chi) {
  const auto [conductor, inducer] = conductor_and_inducer(chi);
  (void)conductor;
  return {inducer.id(), inducer.is_real()};
}

void append_window(const ZeroDatabase& db, const CharacterId& primitive, double T, std::vector<ZeroEntry>& out) {
  if (T < 1.0) throw Error(ErrorKind::InvalidArgument, "zero window needs T >= 1");
  const auto height = db.completeness_height(primitive);
  if (!height || *height < T) {
    std::ostringstream msg;
    msg << "zeros of " << primitive.str() << " requested to height " << T << " but data is complete to "
        << (height ? std::to_string(*height) : std::string("nothing"));
    throw Error(ErrorKind::IncompleteData, msg.str());
  }
  for (const auto& z : db.zeros(primitive)) {
    if (z.beta < 0.5 || std::abs(z.gamma) > T) continue;
    for (int m = 0; m < z.multiplicity; ++m) {
      ZeroEntry copy = z;
      copy.multiplicity = 1;
      out.push_back(copy);
    }
  }
}

}  // namespace

ZeroFileFormat parse_zero_format(const std::string& name) {
  if (name == "zeta-heights") return ZeroFileFormat::ZetaHeights;
  if (name == "tabular") return ZeroFileFormat::Tabular;
  throw Error(ErrorKind::InvalidArgument, "unknown zero file format '" + name + "'");
}

void ZeroDatabase::load(const std::filesystem::path& path, ZeroFileFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open zero file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  load_text(buffer.str(), format, path.string());
}

void ZeroDatabase::load_text(const std::string& text, ZeroFileFormat format, const std::string& source) {
  std::optional<double> complete_to;
  std::optional<std::int64_t> covers_moduli;
  std::map<CharacterId, std::vector<ZeroEntry>> parsed;
  std::map<std::int64_t, CharacterGroup> groups;
  std::string note;

  std::istringstream lines(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      double value = 0.0;
      if (parse_header(line, "complete_to", value)) {
        complete_to = value;
      } else if (parse_header(line, "covers_moduli_upto", value)) {
        covers_moduli = static_cast<std::int64_t>(value);
      } else if (note.empty()) {
        note = trim(line.substr(1));
      }
      continue;
    }

    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);

    ZeroEntry entry;
    if (format == ZeroFileFormat::ZetaHeights) {
      if (tokens.size() != 1) parse_failure(source, line_no, "expected one ordinate per line");
      entry.character = {1, 0};
      entry.gamma = parse_number(tokens[0], source, line_no);
      if (entry.gamma <= 0.0) parse_failure(source, line_no, "ordinates must be positive");
    } else {
      if (tokens.size() != 4 && tokens.size() != 5) {
        parse_failure(source, line_no, "expected 'q index beta gamma [multiplicity]'");
      }
      entry.character.modulus = parse_integer(tokens[0], source, line_no);
      entry.character.index = parse_integer(tokens[1], source, line_no);
      entry.beta = parse_number(tokens[2], source, line_no);
      entry.gamma = parse_number(tokens[3], source, line_no);
      if (tokens.size() == 5) {
        const auto mult = parse_integer(tokens[4], source, line_no);
        if (mult < 1) parse_failure(source, line_no, "multiplicity must be positive");
        entry.multiplicity = static_cast<int>(mult);
      }
      if (entry.character.modulus < 1 || entry.character.index < 0) {
        parse_failure(source, line_no, "bad character " + entry.character.str());
      }
    }
    if (!(entry.beta > 0.0 && entry.beta < 1.0)) {
      throw Error(ErrorKind::BetaOutOfRange,
                  source + ":" + std::to_string(line_no) + ": beta " + tokens.back() + " outside (0,1)");
    }
    parsed[entry.character].push_back(entry);
  }

  if (!complete_to) {
    throw Error(ErrorKind::MissingCompletenessHeader, source + " lacks a '# complete_to <H>' header");
  }

  for (auto& [id, list] : parsed) {
    auto [it, inserted] = groups.try_emplace(id.modulus, id.modulus);
    const CharacterGroup& group = it->second;
    if (id.index >= group.size()) throw Error(ErrorKind::ParseError, source + ": no character " + id.str());
    const DirichletCharacter chi = group.character(id.index);
    if (!chi.is_primitive()) {
      throw Error(ErrorKind::ParseError, source + ": character " + id.str() + " is not primitive");
    }
    if (chi.is_real()) {
      // Zeros of real characters come in conjugate pairs; files may list gamma >= 0 only.
      std::vector<ZeroEntry> mirrors;
      for (const auto& z : list) {
        if (z.gamma <= 0.0) continue;
        const bool present = std::any_of(list.begin(), list.end(), [&](const ZeroEntry& o) {
          return std::abs(o.gamma + z.gamma) < 1e-9 && std::abs(o.beta - z.beta) < 1e-12;
        });
        if (!present) {
          ZeroEntry m = z;
          m.gamma = -z.gamma;
          mirrors.push_back(m);
        }
      }
      list.insert(list.end(), mirrors.begin(), mirrors.end());
    }
    auto& dest = entries_[id];
    dest.insert(dest.end(), list.begin(), list.end());
    std::sort(dest.begin(), dest.end(), [](const ZeroEntry& a, const ZeroEntry& b) {
      return a.gamma != b.gamma ? a.gamma < b.gamma : a.beta < b.beta;
    });
    auto& h = heights_[id];
    h = std::max(h, *complete_to);
  }
  if (format == ZeroFileFormat::ZetaHeights) {
    auto& h = heights_[CharacterId{1, 0}];
    h = std::max(h, *complete_to);
  }
  if (covers_moduli) modulus_coverage_.emplace_back(*covers_moduli, *complete_to);

  std::ostringstream prov;
  prov << source << " (complete_to " << *complete_to;
  if (covers_moduli) prov << ", moduli <= " << *covers_moduli;
  prov << ")";
  if (!note.empty()) prov << ": " << note;
  provenance_.push_back(prov.str());
}

std::optional<double> ZeroDatabase::completeness_height(const CharacterId& id) const {
  std::optional<double> best;
  if (auto it = heights_.find(id); it != heights_.end()) best = it->second;
  for (const auto& [max_modulus, height] : modulus_coverage_) {
    if (id.modulus >= 2 && id.modulus <= max_modulus && (!best || *best < height)) best = height;
  }
  return best;
}

std::span<const ZeroEntry> ZeroDatabase::zeros(const CharacterId& id) const {
  if (auto it = entries_.find(id); it != entries_.end()) return it->second;
  return {};
}

std::int64_t ZeroDatabase::entry_count() const {
  std::int64_t n = 0;
  for (const auto& [id, list] : entries_) n += static_cast<std::int64_t>(list.size());
  return n;
}

ZeroDatabase load_zeros(const std::filesystem::path& path, ZeroFileFormat format) {
  ZeroDatabase db;
  db.load(path, format);
  return db;
}

std::vector<ZeroEntry> zero_window(const ZeroDatabase& db, const DirichletCharacter& chi, double T) {
  std::vector<ZeroEntry> out;
  append_window(db, resolve(chi).primitive, T, out);
  return out;
}

std::vector<ZeroEntry> zero_window(const ZeroDatabase& db, std::int64_t q, double T) {
  const CharacterGroup group(q);
  std::vector<ZeroEntry> out;
  for (std::int64_t i = 0; i < group.size(); ++i) {
    append_window(db, resolve(group.character(i)).primitive, T, out);
  }
  return out;
}

DichotomyVerdict detect_dichotomy(const ZeroDatabase& db, double D, double T, const DichotomyConstants& constants) {
  if (D < 2.0 || T < 1.0) throw Error(ErrorKind::InvalidArgument, "dichotomy needs D >= 2 and T >= 1");
  if (constants.c1 <= 0.0 || constants.C1 < 10.0) {
    throw Error(ErrorKind::InvalidArgument, "dichotomy constants need c1 > 0 and C1 >= 10");
  }
  DichotomyVerdict verdict;
  verdict.D = D;
  verdict.T = T;
  verdict.constants = constants;
  verdict.threshold = 1.0 - constants.c1 / (constants.C1 * std::log(D * T));

  std::vector<ExceptionalWitness> qualifying;
  const auto max_modulus = static_cast<std::int64_t>(std::floor(D));
  for (std::int64_t q = 1; q <= max_modulus; ++q) {
    const CharacterGroup group(q);
    for (std::int64_t i = 0; i < group.size(); ++i) {
      const CharacterId id{q, i};
      const DirichletCharacter chi = group.character(i);
      if (!chi.is_primitive()) continue;
      const auto height = db.completeness_height(id);
      if (!height || *height < T) {
        throw Error(ErrorKind::IncompleteData,
                    "primitive character " + id.str() + " is not covered to height " + std::to_string(T));
      }
      for (const auto& z : db.zeros(id)) {
        if (z.gamma != 0.0 || z.beta < verdict.threshold) continue;
        for (int m = 0; m < z.multiplicity; ++m) qualifying.push_back({id, q, z.beta});
      }
    }
  }

  if (qualifying.size() > 1) {
    std::ostringstream msg;
    msg << qualifying.size() << " real zeros above " << verdict.threshold << ":";
    for (const auto& w : qualifying) msg << " " << w.character.str() << "@" << w.beta;
    throw Error(ErrorKind::LemmaViolation, msg.str());
  }
  if (qualifying.size() == 1) {
    verdict.exceptional = true;
    verdict.witness = qualifying.front();
  }
  return verdict;
}

std::complex<double> explicit_psi(const ZeroDatabase& db, double x, const DirichletCharacter& chi, double T,
                                  bool allow_out_of_range) {
  if (x < 1.0) throw Error(ErrorKind::InvalidArgument, "explicit_psi needs x >= 1");
  if (T < 1.0) throw Error(ErrorKind::InvalidArgument, "explicit_psi needs T >= 1");
  if (!allow_out_of_range && T > std::pow(x, 0.25)) {
    throw Error(ErrorKind::RangeViolation,
                "T = " + std::to_string(T) + " exceeds x^{1/4} = " + std::to_string(std::pow(x, 0.25)));
  }
  const auto resolved = resolve(chi);
  std::vector<ZeroEntry> window;
  append_window(db, resolved.primitive, T, window);

  const double log_x = std::log(x);
  auto term = [&](const ZeroEntry& z) {
    // x^rho / rho with x^rho = exp(beta log x) e^{i gamma log x}
    const std::complex<double> rho(z.beta, z.gamma);
    return std::polar(std::exp(z.beta * log_x), z.gamma * log_x) / rho;
  };

  std::complex<double> zero_sum = 0.0;
  if (resolved.is_real) {
    double real_sum = 0.0;
    for (const auto& z : window) {
      if (z.gamma > 0.0) {
        real_sum += 2.0 * term(z).real();
      } else if (z.gamma == 0.0) {
        real_sum += term(z).real();
      }
    }
    zero_sum = real_sum;
  } else {
    for (const auto& z : window) zero_sum += term(z);
  }
  const double main = chi.is_principal() ? x : 0.0;
  return main - zero_sum;
}

double zero_sum_decay(const ZeroDatabase& db, double x, std::int64_t d, std::int64_t q, double T,
                      std::optional<double> exclude_beta) {
  if (x <= 0.0) throw Error(ErrorKind::InvalidArgument, "zero_sum_decay needs x > 0");
  const auto window = zero_window(db, d * q, T);
  const double log_x = std::log(x);
  double total = 0.0;
  bool excluded = false;
  for (const auto& z : window) {
    if (exclude_beta && !excluded && z.gamma == 0.0 && std::abs(z.beta - *exclude_beta) < 1e-12) {
      excluded = true;
      continue;
    }
    total += std::exp((z.beta - 1.0) * log_x);
  }
  return total;
}

void write_zero_csv(std::ostream& out, std::span<const ZeroEntry> entries) {
  out << "q,index,beta,gamma\n";
  const auto old_precision = out.precision(15);
  for (const auto& z : entries) {
    out << z.character.modulus << ',' << z.character.index << ',' << z.beta << ',' << z.gamma << '\n';
  }
  out.precision(old_precision);
}

}  // namespace shiftedprime
