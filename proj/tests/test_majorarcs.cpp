#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "shiftedprime/arith.hpp"
#include "shiftedprime/config.hpp"
#include "shiftedprime/error.hpp"
#include "shiftedprime/expsums.hpp"
#include "shiftedprime/majorarcs.hpp"

using namespace shiftedprime;

namespace {

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

MajorArcConstants relaxed() {
  MajorArcConstants c;
  c.allow_out_of_hypothesis = true;
  return c;
}

// Composite Simpson oracle in log t for int (1 - t^{beta-1}) dt.
double integral_oracle(double beta, double lo, double hi) {
  const int n = 200'000;
  const double a = std::log(lo), b = std::log(hi), h = (b - a) / n;
  auto g = [&](double u) { return (1.0 - std::exp((beta - 1.0) * u)) * std::exp(u); };
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("arc geometry") {
  const ArcSystem arcs(100.0, 5.0);
  bool found = false;
  for (const auto& arc : arcs.arcs()) {
    if (arc.a == 1 && arc.q == 3) {
      found = true;
      CHECK(arc.center == doctest::Approx(1.0 / 3.0));
      CHECK(arc.half_width == doctest::Approx(1.0 / 300.0));
    }
  }
  CHECK(found);
  CHECK_FALSE(arcs.in_arc(0.3367, 1, 3));
  CHECK(arcs.in_arc(0.3350, 1, 3));
  CHECK(arcs.denominator_at(0.3350) == 3);
  CHECK(arcs.denominator_at(0.999) == 1);
  CHECK(arcs.denominator_at(0.15) == 0);

  const ArcSystem single(10.0, 1.0);
  REQUIRE(single.arcs().size() == 1);
  CHECK(single.in_arc(0.95, 1, 1));
  CHECK(single.in_arc(0.05, 1, 1));
  CHECK_FALSE(single.in_arc(0.2, 1, 1));

  // Measure: sum over q of phi(q) 2/(qQ), and grid labels match pointwise membership.
  const ArcSystem big(400.0, 10.0);
  double oracle = 0.0;
  for (std::int64_t q = 1; q <= 10; ++q) oracle += static_cast<double>(euler_phi(q)) * 2.0 / (q * 400.0);
  CHECK(big.total_measure() == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(big.standard_regime());
  CHECK(big.disjoint());
  const auto labels = big.label_grid(10'007);
  for (std::int64_t k = 0; k < 10'007; ++k) REQUIRE(labels[k] == big.denominator_at(static_cast<double>(k) / 10'007.0));

  const ArcSystem crowded(10.0, 10.0);  // 1/10 and 1/9 overlap
  CHECK_FALSE(crowded.standard_regime());
  CHECK_FALSE(crowded.disjoint());
  CHECK_THROWS_AS(ArcSystem(5.0, 6.0), Error);
}

TEST_CASE("major arc bound at the origin") {
  const auto db = shipped();
  const LambdaTable lambda(100'001);
  const auto r = verify_major_arc_bound(db, lambda, 100'000, 5.0, 30.0, 1, 1, 1, 0.0, relaxed());
  CHECK(r.lhs == doctest::Approx(r.f0));
  CHECK(r.term_main == doctest::Approx(2.0 * r.f0));
  CHECK(r.pass_ratio <= 0.5);
  CHECK(r.out_of_hypothesis);
  CHECK(r.regime() == "unexceptional");
  CHECK(r.term_zero >= 0.0);
  CHECK(r.term_tail >= 0.0);

  // Larger T never increases the tail term.
  const auto wider = verify_major_arc_bound(db, lambda, 100'000, 5.0, 40.0, 1, 1, 1, 0.0, relaxed());
  CHECK(wider.term_tail <= r.term_tail);
}

TEST_CASE("hypotheses") {
  const auto db = shipped();
  const LambdaTable lambda(100'001);
  CHECK(kind_of([&] { verify_major_arc_bound(db, lambda, 100'000, 5.0, 30.0, 1, 3, 1, 0.0, {}); }) ==
        ErrorKind::HypothesisViolation);
  CHECK(kind_of([&] { verify_major_arc_bound(db, lambda, 100'000, 5.0, 30.0, 1, 4, 2, 0.0, relaxed()); }) ==
        ErrorKind::HypothesisViolation);
  const auto r = verify_major_arc_bound(db, lambda, 1000, 5.0, 30.0, 2, 5, 2, 0.0, relaxed());
  CHECK(r.out_of_hypothesis);
  CHECK(r.notes.size() == 2);  // N below (DT)^C3 and dq > D
}

TEST_CASE("exceptional routing") {
  auto db = shipped();
  db.load_text("# complete_to 40\n3 1 0.9995 0\n", ZeroFileFormat::Tabular, "planted");
  const LambdaTable lambda(300'001);
  const auto verdict = detect_dichotomy(db, 5.0, 30.0, {});
  REQUIRE(verdict.exceptional);
  const auto r = verify_major_arc_bound(lambda, verdict, 100'000, 3, 2, 1, 0.0, relaxed());
  CHECK(r.regime() == "exceptional");
  REQUIRE(r.f0_lower_term.has_value());
  CHECK(*r.f0_lower_term == doctest::Approx(3e5 / 2.0 * 0.0005 * std::log(90.0) / 0.2));
  CHECK_FALSE(r.notes.empty());
  CHECK(kind_of([&] { verify_major_arc_bound(lambda, verdict, 100'000, 2, 1, 1, 0.0, {}); }) ==
        ErrorKind::HypothesisViolation);

  std::ostringstream csv;
  write_major_arc_csv_header(csv);
  write_major_arc_csv_row(csv, r);
  CHECK(csv.str().rfind("N,D,T,d,q,a,delta,regime,lhs,term_main,term_zero,term_tail,pass_ratio\n", 0) == 0);
  CHECK(csv.str().find(",exceptional,") != std::string::npos);
}

TEST_CASE("F(0) lower bound") {
  const auto db = shipped();
  const LambdaTable lambda(400'001);
  const auto r1 = verify_F0_lower_bound(db, lambda, 100'000, 5.0, 30.0, 1, relaxed());
  CHECK(r1.f0 == doctest::Approx(lambda.psi(100'001.0)));
  CHECK(r1.main_term == doctest::Approx(50'000.0));
  CHECK(r1.margin > 0.0);

  const auto r4 = verify_F0_lower_bound(db, lambda, 100'000, 5.0, 30.0, 4, relaxed());
  double oracle = 0.0;
  for (std::int64_t n = 1; n <= 100'000; ++n) oracle += lambda(4 * n + 1);
  CHECK(r4.f0 == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(r4.main_term == doctest::Approx(100'000.0));

  // Tail term shrinks like 1/T; with a huge T the bound is essentially dN/(2 phi(d)).
  ZeroDatabase tall;
  tall.load_text("# complete_to 1e12\n", ZeroFileFormat::ZetaHeights, "tall");
  tall.load_text("# complete_to 1e12\n# covers_moduli_upto 5\n", ZeroFileFormat::Tabular, "tall");
  const auto far = verify_F0_lower_bound(tall, lambda, 100'000, 5.0, 1e12, 4, relaxed());
  CHECK(far.lower_bound == doctest::Approx(100'000.0).epsilon(1e-5));
}

TEST_CASE("exceptional integral") {
  CHECK(std::expm1(0.0) == 0.0);
  for (double x = 1e-3; x <= 50.0; x *= 1.1) CHECK(1.0 - std::exp(-x) >= x / (x + 1.0) - 1e-12);

  const MajorArcConstants defaults;
  const auto near_one = exceptional_integral_lower_bound(1.0 - 1e-12, 1, 1, 2.0, 1e16, defaults);
  CHECK(near_one.closed_form / 1e16 < 1e-9);

  // The closed form against an independent quadrature.
  const auto r = exceptional_integral_lower_bound(0.999, 3, 1, 30.0, 1e8, defaults);
  CHECK(r.closed_form == doctest::Approx(integral_oracle(0.999, 10.0, 3e8)).epsilon(1e-8));
  CHECK(r.pointwise_holds);
  // With the default constants the shaped bound is not implied and indeed fails here.
  CHECK_FALSE(r.constants_sufficient);
  CHECK_FALSE(r.shaped_holds);

  MajorArcConstants strong;
  strong.C3 = 8.0 * strong.dichotomy.C1 / strong.dichotomy.c1;
  const auto s = exceptional_integral_lower_bound(0.99, 1, 1, 2.0, 1e50, strong);
  CHECK(s.constants_sufficient);
  CHECK(s.shaped_holds);
  CHECK(s.pointwise_holds);

  CHECK(kind_of([&] { exceptional_integral_lower_bound(1.0, 1, 1, 2.0, 1e8, defaults); }) ==
        ErrorKind::HypothesisViolation);
  CHECK(kind_of([&] { exceptional_integral_lower_bound(0.99, 1, 1, 2.0, 1e8, strong); }) ==
        ErrorKind::HypothesisViolation);
}
