#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "doctest.h"
#include "shiftedprime/arith.hpp"
#include "shiftedprime/characters.hpp"
#include "shiftedprime/config.hpp"
#include "shiftedprime/error.hpp"
#include "shiftedprime/zerodata.hpp"

using namespace shiftedprime;

namespace {

const char* kThreeZeros = "# complete_to 26\n14.134725\n21.022040\n25.010858\n";

ZeroDatabase three_zeros() {
  ZeroDatabase db;
  db.load_text(kThreeZeros, ZeroFileFormat::ZetaHeights, "three");
  return db;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

ZeroDatabase shipped() {
  ZeroDatabase db;
  db.load(data_path("zeta_zeros.txt"), ZeroFileFormat::ZetaHeights);
  db.load(data_path("lfunction_zeros.txt"), ZeroFileFormat::Tabular);
  return db;
}

}  // namespace

TEST_CASE("zeta heights are mirrored") {
  const auto db = three_zeros();
  const auto zeta = CharacterGroup(1).principal();
  const auto w = zero_window(db, zeta, 15.0);
  REQUIRE(w.size() == 2);
  CHECK(w[0].beta == 0.5);
  CHECK(std::abs(w[0].gamma) == doctest::Approx(14.134725));
  CHECK(w[0].gamma == -w[1].gamma);
  CHECK(zero_window(db, zeta, 1.0).empty());
  CHECK(zero_window(db, zeta, 26.0).size() == 6);
  CHECK(kind_of([&] { zero_window(db, zeta, 27.0); }) == ErrorKind::IncompleteData);
}

TEST_CASE("parse errors and headers") {
  ZeroDatabase db;
  db.load_text("# complete_to 0\n", ZeroFileFormat::Tabular, "empty");
  CHECK(kind_of([&] { zero_window(db, CharacterGroup(3).character(1), 1.0); }) == ErrorKind::IncompleteData);

  ZeroDatabase bad;
  try {
    bad.load_text("# complete_to 5\n3 1 0.5 2.0\n3 x 0.5 1.0\n", ZeroFileFormat::Tabular, "bad");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("bad:3") != std::string::npos);
  }
  CHECK(kind_of([] { ZeroDatabase().load_text("3 1 0.5 2.0\n", ZeroFileFormat::Tabular, "x"); }) ==
        ErrorKind::MissingCompletenessHeader);
  CHECK(kind_of([] { ZeroDatabase().load_text("# complete_to 5\n3 1 1.2 2.0\n", ZeroFileFormat::Tabular, "x"); }) ==
        ErrorKind::BetaOutOfRange);
}

TEST_CASE("planted real zero") {
  ZeroDatabase db = three_zeros();
  db.load_text("# complete_to 10\n3 1 0.999 0\n", ZeroFileFormat::Tabular, "planted");
  const auto w = zero_window(db, CharacterGroup(3).character(1), 10.0);
  REQUIRE(w.size() == 1);
  CHECK(w[0].beta == 0.999);
  CHECK(w[0].gamma == 0.0);
  // A character mod 6 induced by it sees the same window.
  const CharacterGroup g6(6);
  for (const auto& chi : g6.characters()) {
    if (conductor_and_inducer(chi).first == 3) CHECK(zero_window(db, chi, 10.0).size() == 1);
  }
}

TEST_CASE("windows are monotone in T") {
  const auto db = shipped();
  for (std::int64_t q : {1, 4, 5, 7, 11}) {
    const auto small = zero_window(db, q, 10.0);
    const auto large = zero_window(db, q, 30.0);
    CHECK(small.size() <= large.size());
    for (const auto& z : small) {
      bool present = false;
      for (const auto& y : large) present = present || (y.character == z.character && y.gamma == z.gamma);
      CHECK(present);
    }
  }
}

TEST_CASE("shipped fixture zero counts follow the Riemann-von Mangoldt shape") {
  // N(T, chi) = (T/pi) log(qT/(2 pi e)) + O(log qT); allow 2 log(qT) + 4 slack.
  const auto db = shipped();
  const double T = 40.0;
  for (std::int64_t q = 3; q <= 12; ++q) {
    const CharacterGroup g(q);
    for (const auto& chi : g.characters()) {
      if (!chi.is_primitive()) continue;
      const double count = static_cast<double>(zero_window(db, chi, T).size());
      const double q_d = static_cast<double>(q);
      const double smooth = T / M_PI * std::log(q_d * T / (2.0 * M_PI * M_E));
      CHECK(std::abs(count - smooth) <= 2.0 * std::log(q_d * T) + 4.0);
    }
  }
}

TEST_CASE("dichotomy") {
  ZeroDatabase genuine = shipped();
  const auto v = detect_dichotomy(genuine, 10.0, 10.0, {});
  CHECK_FALSE(v.exceptional);
  CHECK(v.threshold == doctest::Approx(1.0 - 0.05 / (10.0 * std::log(100.0))));
  CHECK(v.threshold == doctest::Approx(0.99891).epsilon(1e-5));

  ZeroDatabase planted = shipped();
  planted.load_text("# complete_to 10\n3 1 0.999 0\n", ZeroFileFormat::Tabular, "planted");
  const auto e = detect_dichotomy(planted, 10.0, 10.0, {});
  REQUIRE(e.exceptional);
  CHECK(e.witness->beta == 0.999);
  CHECK(e.witness->modulus == 3);
  CHECK(e.witness->character == CharacterId{3, 1});

  planted.load_text("# complete_to 10\n4 1 0.9995 0\n", ZeroFileFormat::Tabular, "second");
  CHECK(kind_of([&] { detect_dichotomy(planted, 10.0, 10.0, {}); }) == ErrorKind::LemmaViolation);

  ZeroDatabase zeta_only;
  zeta_only.load(data_path("zeta_zeros.txt"), ZeroFileFormat::ZetaHeights);
  CHECK(kind_of([&] { detect_dichotomy(zeta_only, 10.0, 10.0, {}); }) == ErrorKind::IncompleteData);
}

TEST_CASE("explicit formula") {
  ZeroDatabase db;
  db.load(data_path("zeta_zeros.txt"), ZeroFileFormat::ZetaHeights);
  db.load(data_path("lfunction_zeros.txt"), ZeroFileFormat::Tabular);
  const LambdaTable lambda(100'000);
  const auto zeta = CharacterGroup(1).principal();

  // Non-principal, T below the first ordinate: empty sum and no main term.
  CHECK(std::abs(explicit_psi(db, 1e8, CharacterGroup(5).character(1), 1.0)) == 0.0);

  auto error = [&](double x, double T) { return std::abs(lambda.psi(x) - explicit_psi(db, x, zeta, T, true).real()); };
  const double x = 1000.0;
  CHECK(error(x, 100.0) <= 5.0 * x * std::log(x) * std::log(x) / 100.0);
  for (double xs : {1e3, 3e3, 1e4, 1e5}) {
    for (double T : {50.0, 100.0}) CHECK(error(xs, T) <= 5.0 * xs * std::log(xs) * std::log(xs) / T);
  }
  // Pointwise errors oscillate in T; the mean square over x in [1000, 10000] decreases.
  auto rms = [&](double T) {
    double total = 0.0;
    int n = 0;
    for (double xs = 1000.5; xs < 10'000.0; xs += 37.0, ++n) total += std::pow(error(xs, T), 2) / xs;
    return std::sqrt(total / n);
  };
  CHECK(rms(100.0) < rms(50.0));
  CHECK(rms(200.0) < rms(100.0));
  CHECK(rms(1000.0) < rms(200.0));
  CHECK(kind_of([&] { explicit_psi(db, 1000.0, zeta, 100.0); }) == ErrorKind::RangeViolation);

  // Real non-principal character: result stays real.
  const auto chi4 = CharacterGroup(4).character(1);
  CHECK(explicit_psi(db, 1e6, chi4, 30.0).imag() == 0.0);
}

TEST_CASE("zero sum decay") {
  const auto db = three_zeros();
  CHECK(zero_sum_decay(db, 1e6, 1, 1, 1.0) == 0.0);
  CHECK(zero_sum_decay(db, 1e6, 1, 1, 26.0) == doctest::Approx(6.0 * 1e-3));
  CHECK(zero_sum_decay(db, 1e8, 1, 1, 26.0) < zero_sum_decay(db, 1e6, 1, 1, 26.0));
}

TEST_CASE("csv export") {
  const auto db = three_zeros();
  std::ostringstream out;
  write_zero_csv(out, zero_window(db, CharacterGroup(1).principal(), 15.0));
  CHECK(out.str().rfind("q,index,beta,gamma\n", 0) == 0);
}
