#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "shiftedprime/arith.hpp"
#include "shiftedprime/characters.hpp"
#include "shiftedprime/error.hpp"

using namespace shiftedprime;

TEST_CASE("small groups") {
  const CharacterGroup g1(1);
  REQUIRE(g1.size() == 1);
  for (std::int64_t n = -5; n <= 5; ++n) CHECK(g1.character(0)(n) == std::complex<double>(1.0, 0.0));

  const CharacterGroup g4(4);
  REQUIRE(g4.size() == 2);
  CHECK(g4.character(1)(3) == std::complex<double>(-1.0, 0.0));

  const CharacterGroup g5(5);
  REQUIRE(g5.size() == 4);
  bool has_i = false;
  for (const auto& chi : g5.characters()) has_i = has_i || std::abs(chi(2) - std::complex<double>(0.0, 1.0)) < 1e-15;
  CHECK(has_i);
}

TEST_CASE("group size, multiplicativity and conjugates") {
  for (std::int64_t q = 1; q <= 60; ++q) {
    const CharacterGroup g(q);
    REQUIRE(g.size() == euler_phi(q));
    for (const auto& chi : g.characters()) {
      for (std::int64_t a = 0; a < q; ++a) {
        for (std::int64_t b = 0; b < q; ++b) REQUIRE(std::abs(chi(a * b) - chi(a) * chi(b)) < 1e-12);
        if (std::gcd(a, q) != 1) REQUIRE(chi(a) == std::complex<double>(0.0, 0.0));
      }
      const auto conj = g.character(g.conjugate_index(chi.index()));
      for (std::int64_t a = 0; a < q; ++a) REQUIRE(std::abs(conj(a) - std::conj(chi(a))) < 1e-12);
      CHECK(conductor_and_inducer(conj).first == conductor_and_inducer(chi).first);
      CHECK(g.index_of(g.exponents(chi.index())) == chi.index());
    }
  }
}

TEST_CASE("orthogonality for q <= 200") {
  double worst = 0.0;
  for (std::int64_t q = 1; q <= 200; ++q) {
    const CharacterGroup g(q);
    worst = std::max({worst, column_orthogonality_error(g), row_orthogonality_error(g)});
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("conductors and inducers") {
  const CharacterGroup g12(12);
  const auto [f0, inducer0] = conductor_and_inducer(g12.principal());
  CHECK(f0 == 1);
  CHECK(inducer0.modulus() == 1);
  std::vector<std::int64_t> first_q;
  for (std::int64_t n = 1; n <= 12; ++n) first_q.push_back(n);
  CHECK(verify_induction_identity(g12.principal(), inducer0, first_q));

  // Oracle: the conductor is the least f | q with chi constant on units congruent mod f.
  for (std::int64_t q = 2; q <= 48; ++q) {
    const CharacterGroup g(q);
    for (const auto& chi : g.characters()) {
      std::int64_t oracle = q;
      for (std::int64_t f : divisors(q)) {
        bool constant = true;
        for (std::int64_t a = 1; a < q && constant; ++a) {
          for (std::int64_t b = 1; b < q; ++b) {
            if (std::gcd(a, q) == 1 && std::gcd(b, q) == 1 && (a - b) % f == 0 && std::abs(chi(a) - chi(b)) > 1e-9) {
              constant = false;
              break;
            }
          }
        }
        if (constant) {
          oracle = f;
          break;
        }
      }
      const auto [f, inducer] = conductor_and_inducer(chi);
      REQUIRE(f == oracle);
      CHECK(inducer.is_primitive());
      if (chi.is_primitive()) CHECK(inducer.id() == chi.id());
    }
  }

  const CharacterGroup g8(8);
  std::vector<std::int64_t> sample;
  for (std::int64_t n = 1; n <= 100; ++n) sample.push_back(n);
  int from_four = 0;
  for (const auto& chi : g8.characters()) {
    const auto [f, inducer] = conductor_and_inducer(chi);
    if (f != 4) continue;
    ++from_four;
    CHECK(verify_induction_identity(chi, inducer, sample));
    // Negative control: the mod 8 character is not induced by the other primitive character mod 8.
    for (const auto& other : g8.characters()) {
      if (other.is_primitive()) CHECK_FALSE(verify_induction_identity(chi, other, sample));
    }
  }
  CHECK(from_four == 1);
}

TEST_CASE("character ids") {
  const auto id = CharacterId::parse("12:3");
  CHECK(id.modulus == 12);
  CHECK(id.index == 3);
  CHECK(id.str() == "12:3");
  CHECK_THROWS_AS(CharacterId::parse("12-3"), Error);
}

TEST_CASE("roots of unity are exact at quarter turns") {
  CHECK(root_of_unity(1, 4) == std::complex<double>(0.0, 1.0));
  CHECK(root_of_unity(2, 4) == std::complex<double>(-1.0, 0.0));
  CHECK(root_of_unity(-1, 4) == std::complex<double>(0.0, -1.0));
  CHECK(std::abs(root_of_unity(1, 3) - std::polar(1.0, 2.0 * M_PI / 3.0)) < 1e-15);
}
