#include <random>

#include "doctest.h"
#include "orbfold/fpc.hpp"

using namespace orbfold;

namespace {

FpcWord random_word(std::mt19937_64& rng, const FpcGroup& g, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> fac(0, static_cast<int>(g.factor_count()) - 1);
  FpcWord w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    int f = fac(rng);
    long p = g.factor_order(f);
    long e;
    if (p == 0) {
      std::uniform_int_distribution<long> ed(-3, 3);
      e = ed(rng);
      if (e == 0) e = 1;
    } else {
      std::uniform_int_distribution<long> ed(1, p - 1);
      e = ed(rng);
    }
    w.letters.push_back({f, e});
  }
  return canonical(g, w);
}

// oracle: order by explicit powers, up to a cutoff
long order_by_powers(const FpcGroup& g, const FpcWord& w, long cutoff) {
  FpcWord acc = w;
  for (long n = 1; n <= cutoff; ++n) {
    if (acc.is_identity()) return n;
    acc = mul(g, acc, w);
  }
  return 0;
}

}  // namespace

TEST_CASE("words normalize and multiply in Z2*Z3") {
  FpcGroup g({2, 3});
  FpcWord s1 = FpcWord::generator(0);
  FpcWord s2 = FpcWord::generator(1);
  CHECK(mul(g, s1, s1).is_identity());
  // (s1 s2)(s2^2 s1) = 1
  FpcWord a = mul(g, s1, s2);
  FpcWord b = mul(g, pow(g, s2, 2), s1);
  CHECK(mul(g, a, b).is_identity());
}

TEST_CASE("free reduction in F2") {
  FpcGroup f2({0, 0});
  FpcWord a = FpcWord::generator(0);
  FpcWord b = FpcWord::generator(1);
  FpcWord ab = mul(f2, a, b);
  FpcWord binva = mul(f2, inv(f2, b), a);
  CHECK(mul(f2, ab, binva) == pow(f2, a, 2));
}

TEST_CASE("group laws on random triples") {
  std::mt19937_64 rng(12345);
  std::vector<FpcGroup> groups = {FpcGroup({2, 3}), FpcGroup({0, 0}), FpcGroup({2, 0, 4}),
                                  FpcGroup({5})};
  for (const FpcGroup& g : groups) {
    for (int i = 0; i < 250; ++i) {
      FpcWord a = random_word(rng, g, 6), b = random_word(rng, g, 6), c = random_word(rng, g, 6);
      CHECK(mul(g, mul(g, a, b), c) == mul(g, a, mul(g, b, c)));
      CHECK(inv(g, mul(g, a, b)) == mul(g, inv(g, b), inv(g, a)));
      CHECK(mul(g, a, inv(g, a)).is_identity());
      CHECK(valid_word(g, mul(g, a, b)));
    }
  }
}

TEST_CASE("order_of matches brute force") {
  FpcGroup g({2, 2});
  CHECK(order_of(g, FpcWord::identity()) == 1);
  FpcWord ab = mul(g, FpcWord::generator(0), FpcWord::generator(1));
  CHECK(order_of(g, ab) == 0);
  CHECK(order_by_powers(g, ab, 64) == 0);

  FpcGroup h({4, 0});
  CHECK(order_of(h, FpcWord::generator(0)) == 4);
  CHECK(order_of(h, FpcWord::generator(1)) == 0);

  std::mt19937_64 rng(99);
  std::vector<FpcGroup> groups = {FpcGroup({2, 3}), FpcGroup({4, 2}), FpcGroup({6})};
  for (const FpcGroup& gg : groups)
    for (int i = 0; i < 200; ++i) {
      FpcWord w = random_word(rng, gg, 5);
      long o1 = order_of(gg, w);
      long o2 = order_by_powers(gg, w, 60);
      if (o2 != 0) CHECK(o1 == o2);
      if (o2 == 0) CHECK(o1 == 0);
    }
}

TEST_CASE("conjugate of a factor element has the factor order") {
  FpcGroup g({3, 0});
  FpcWord t = conj(g, FpcWord::generator(1, 2), FpcWord::generator(0));
  CHECK(order_of(g, t) == 3);
}

TEST_CASE("is_power_of examples") {
  FpcGroup f2({0, 0});
  FpcWord a = FpcWord::generator(0), b = FpcWord::generator(1);
  FpcWord ab = mul(f2, a, b);
  CHECK(is_power_of(f2, pow(f2, ab, 3), ab) == 3);
  CHECK(is_power_of(f2, pow(f2, ab, -2), ab) == -2);
  CHECK(!is_power_of(f2, a, ab).has_value());
  CHECK(is_power_of(f2, FpcWord::identity(), ab) == 0);
  CHECK_THROWS_AS(is_power_of(f2, a, FpcWord::identity()), error);

  // conjugated single-syllable case
  FpcWord t = conj(f2, mul(f2, a, b), pow(f2, a, 2));  // (ab) a^2 (ab)^-1
  CHECK(is_power_of(f2, conj(f2, mul(f2, a, b), pow(f2, a, 10)), t) == 5);
  CHECK(!is_power_of(f2, conj(f2, mul(f2, a, b), pow(f2, a, 3)), t).has_value());

  // finite order t: any valid exponent mod order
  FpcGroup z6({6});
  FpcWord s2 = FpcWord::generator(0, 2);
  auto n = is_power_of(z6, FpcWord::generator(0, 4), s2);
  REQUIRE(n.has_value());
  CHECK(pow(z6, s2, *n) == FpcWord::generator(0, 4));
}

TEST_CASE("is_power_of agrees with brute force on random pairs") {
  std::mt19937_64 rng(2024);
  FpcGroup g({2, 0, 3});
  for (int i = 0; i < 300; ++i) {
    FpcWord t = random_word(rng, g, 3);
    if (t.is_identity()) continue;
    FpcWord w = random_word(rng, g, 4);
    auto n = is_power_of(g, w, t);
    // brute force in [-8, 8]
    std::optional<long> oracle;
    for (long k = -8; k <= 8 && !oracle; ++k)
      if (pow(g, t, k) == w) oracle = k;
    if (oracle) {
      REQUIRE(n.has_value());
      CHECK(pow(g, t, *n) == w);
    }
    if (n) CHECK(pow(g, t, *n) == w);
  }
}

TEST_CASE("coset_min_rep examples and witness") {
  FpcGroup f2({0, 0});
  FpcWord a = FpcWord::generator(0), b = FpcWord::generator(1);
  SUBCASE("w = t^2 gives identity") {
    FpcWord t = mul(f2, a, b);
    CosetRep r = coset_min_rep(f2, pow(f2, t, 2), t);
    CHECK(r.rep.is_identity());
    CHECK(r.exponent == -2);
  }
  SUBCASE("w = a t with t = b") {
    CosetRep r = coset_min_rep(f2, mul(f2, a, b), b);
    CHECK(r.rep == a);
    CHECK(r.exponent == -1);
  }
  SUBCASE("already minimal") {
    CosetRep r = coset_min_rep(f2, a, b);
    CHECK(r.rep == a);
    CHECK(r.exponent == 0);
  }
  SUBCASE("deep cancellation against a conjugated syllable") {
    // w = b (ab) a^40 (ab)^-1, t = (ab) a (ab)^-1
    FpcWord c = mul(f2, a, b);
    FpcWord t = conj(f2, c, a);
    FpcWord w = mul(f2, b, conj(f2, c, pow(f2, a, 40)));
    CosetRep r = coset_min_rep(f2, w, t);
    CHECK(r.exponent == -40);
    CHECK(r.rep == b);
  }
}

TEST_CASE("coset_min_rep is a transversal: same rep across the coset") {
  std::mt19937_64 rng(7);
  FpcGroup g({2, 0});
  for (int i = 0; i < 200; ++i) {
    FpcWord w = random_word(rng, g, 4);
    FpcWord t = random_word(rng, g, 3);
    if (t.is_identity()) continue;
    CosetRep r = coset_min_rep(g, w, t);
    CHECK(r.rep == mul(g, w, pow(g, t, r.exponent)));
    for (long k : {-2L, 1L, 3L}) {
      CosetRep r2 = coset_min_rep(g, mul(g, w, pow(g, t, k)), t);
      CHECK(r2.rep == r.rep);
    }
  }
}

TEST_CASE("homomorphism validity and application") {
  FpcGroup z4({4});
  FpcGroup z2({2});
  FpcHom h(z4, z2, {FpcWord::generator(0)});
  CHECK(h.apply(FpcWord::generator(0, 2)).is_identity());
  CHECK_THROWS_AS(FpcHom(FpcGroup({3}), z2, {FpcWord::generator(0)}), error);

  FpcGroup f2({0, 0});
  FpcHom k(f2, f2, {mul(f2, FpcWord::generator(0), FpcWord::generator(1)),
                    FpcWord::generator(1)});
  FpcWord w = mul(f2, FpcWord::generator(0), inv(f2, FpcWord::generator(1)));
  CHECK(k.apply(w) == FpcWord::generator(0));
}

TEST_CASE("injectivity verdicts") {
  FpcGroup z4({4}), z2({2});
  auto r = injectivity(FpcHom(z4, z2, {FpcWord::generator(0)}));
  CHECK(r.verdict == Verdict::No);
  REQUIRE(r.kernel_witness.has_value());
  CHECK(!r.kernel_witness->is_identity());
  CHECK(FpcHom(z4, z2, {FpcWord::generator(0)}).apply(*r.kernel_witness).is_identity());

  // Z * Z2 -> Z2 killing the free factor
  FpcGroup src({0, 2});
  auto r2 = injectivity(FpcHom(src, z2, {FpcWord::identity(), FpcWord::generator(0)}));
  CHECK(r2.verdict == Verdict::No);

  // identity is injective
  FpcGroup g({2, 3});
  CHECK(injectivity(FpcHom::identity(g)).verdict == Verdict::Yes);
  CHECK(injectivity(FpcHom::identity(FpcGroup({5}))).verdict == Verdict::Yes);

  // two faithful factors into a cyclic target collapse a commutator
  FpcGroup zz({2, 2});
  auto r3 = injectivity(FpcHom(zz, z2, {FpcWord::generator(0), FpcWord::generator(0)}));
  CHECK(r3.verdict == Verdict::No);
}

TEST_CASE("subgroup enumeration over a finite group") {
  FpcGroup z6({6});
  auto se = enumerate_subgroup(z6, {FpcWord::generator(0, 2)});
  CHECK(se.complete);
  CHECK(se.elements.size() == 3);
  auto all = enumerate_group(z6);
  CHECK(all.size() == 6);
}
