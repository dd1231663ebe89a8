#include "doctest.h"
#include "lexctx/errors.h"
#include "lexctx/rng.h"
#include "lexctx/utf8.h"

#include <set>

using namespace lexctx;

TEST_CASE("utf8 round trip and code point offsets") {
  const std::string s = "café über naïve";
  CHECK(utf8::encode(utf8::decode(s)) == s);
  CHECK(utf8::length(s) == 15);
  CHECK(utf8::substr(s, 5, 9) == "über");
  CHECK_THROWS_AS(utf8::substr(s, 3, 20), ArgumentError);
  CHECK_THROWS_AS(utf8::decode("\xC3"), ArgumentError);
  CHECK_THROWS_AS(utf8::decode("\xFF"), ArgumentError);
}

TEST_CASE("whitespace normalization") {
  CHECK(utf8::normalize_whitespace("  a \t b\n\nc  ") == "a b c");
  CHECK(utf8::normalize_whitespace("x y") == "x y");
  CHECK(utf8::normalize_whitespace("") == "");
}

TEST_CASE("rng helpers are deterministic and in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.below(7) < 7);
    double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  auto idx = r.sample_indices(10, 4);
  REQUIRE(idx.size() == 4);
  CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == 4);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(fnv1a(std::string("")) == 0xcbf29ce484222325ULL);
  CHECK(fnv1a(std::string("a")) == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("normal sampler has roughly unit moments") {
  Rng r(9);
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double x = r.normal();
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(std::abs(sq / n - 1.0) < 0.05);
}
