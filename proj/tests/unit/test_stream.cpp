#include <set>

#include "baire/stream.hpp"
#include "doctest.h"

using namespace baire;

namespace {

constexpr std::uint64_t kBudget = 1'000'000;

Nat sym(const Stream& s, Index n) { return s.at(n, kBudget).value(); }

}  // namespace

TEST_CASE("pairing interleaves and unpairing inverts it") {
  const Stream q = tabulate([](Index n) { return n + 1; });
  const Stream r = pair_stream(q, constant(9));
  CHECK(r.prefix(6, kBudget) == Word{1, 9, 2, 9, 3, 9});
  CHECK(pair_stream(zeros(), zeros()).prefix(8, kBudget) == Word(8, 0));

  const auto [a, b] = unpair_stream(from_prefix({1, 9, 2, 9, 3, 9}, {4, 9}));
  CHECK(a.prefix(4, kBudget) == Word{1, 2, 3, 4});
  CHECK(b.prefix(4, kBudget) == Word{9, 9, 9, 9});
}

TEST_CASE("pair and unpair are inverse on seeded streams") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Stream q = seeded(seed, 100);
    const Stream p = seeded(seed + 1000, 100);
    const Stream r = pair_stream(q, p);
    // Raw projections, so the structural shortcut is not what is tested.
    const Stream raw = tabulate([r](Index n) { return *r.at(n, kBudget); });
    const auto [q2, p2] = unpair_stream(raw);
    for (Index n = 0; n < 64; ++n) {
      CHECK(sym(q2, n) == mix_seed(seed, n) % 100);
      CHECK(sym(p2, n) == mix_seed(seed + 1000, n) % 100);
    }
    const Stream back = pair_stream(q2, p2);
    for (Index n = 0; n < 64; ++n) CHECK(sym(back, n) == sym(raw, n));
  }
}

TEST_CASE("countable tupling follows the Cantor index") {
  const Stream t = tuple_countable([](Index i) { return constant(i); });
  CHECK(sym(t, 0) == 0);
  CHECK(sym(t, 1) == 1);
  CHECK(sym(t, 2) == 0);
  CHECK(sym(project(t, 3), 5) == 3);
  CHECK(sym(project(zeros(), 7), 11) == 0);

  const Stream u = tuple_countable([](Index i) { return seeded(i, 50); });
  const Stream raw = tabulate([u](Index n) { return *u.at(n, kBudget); });
  for (Index i = 0; i < 16; ++i) {
    const Stream c = project(raw, i);
    for (Index n = 0; n < 32; ++n) CHECK(sym(c, n) == mix_seed(i, n) % 50);
  }
}

TEST_CASE("cantor pairing is a bijection on the tested grid") {
  std::set<Index> seen;
  for (Index i = 0; i < 64; ++i) {
    for (Index n = 0; n < 64; ++n) {
      const Index k = cantor_pair(i, n);
      CHECK(k == (i + n) * (i + n + 1) / 2 + n);
      CHECK(cantor_unpair(k) == std::pair<Index, Index>{i, n});
      seen.insert(k);
    }
  }
  CHECK(seen.size() == 64 * 64);
  CHECK_THROWS_AS(cantor_pair(UINT64_MAX, 1), std::overflow_error);
}

TEST_CASE("word supremum") {
  CHECK(word_sup(Word{5}, Word{5, 9}) == Word{5, 9});
  CHECK(word_sup(Word{}, Word{1, 2}) == Word{1, 2});
  CHECK_FALSE(word_sup(Word{5}, Word{6}).has_value());
}

TEST_CASE("fuel exhaustion is a signal and answers are monotone in budget") {
  // Each symbol of a copy-of-copy chain costs more than the previous level.
  Stream s = seeded(3, 10);
  for (int i = 0; i < 20; ++i) s = map_symbols(s, [](Nat x) { return x; });
  Fuel tiny(5);
  const Sym miss = s.at(0, tiny);
  CHECK_FALSE(miss.ok());
  CHECK(miss.miss() == Miss::fuel);
  CHECK(tiny.exhausted());

  const auto big = s.at(0, 1000);
  REQUIRE(big.has_value());
  CHECK(*big == mix_seed(3, 0) % 10);
  // Memoized answers charge their recorded cost again.
  Fuel again(5);
  CHECK_FALSE(s.at(0, again).ok());
  for (std::uint64_t b = 1; b < 64; ++b) {
    const auto lo = s.at(0, b);
    const auto hi = s.at(0, b + 1);
    if (lo) CHECK(hi == lo);
  }
}

TEST_CASE("finite words end with an input miss") {
  const Stream f = finite({4, 5});
  Fuel fuel(100);
  CHECK(*f.at(1, fuel) == 5);
  const Sym end = f.at(2, fuel);
  CHECK_FALSE(end.ok());
  CHECK(end.miss() == Miss::input);
  CHECK(f.prefix(5, 100) == Word{4, 5});
}

TEST_CASE("repeated queries agree") {
  const Stream s = seeded(77, 1000);
  for (Index n = 0; n < 100; ++n) CHECK(sym(s, n) == sym(s, n));
}

TEST_CASE("deferred streams resolve once and charge consistently") {
  const Stream head = seeded(5, 3);
  const Stream d = defer([head](Fuel& fuel) -> std::optional<Stream> {
    const Sym b = head.at(0, fuel);
    if (!b) return std::nullopt;
    return constant(*b + 10);
  });
  CHECK(sym(d, 4) == mix_seed(5, 0) % 3 + 10);
  CHECK(never().prefix(3, 1000).empty());
}
