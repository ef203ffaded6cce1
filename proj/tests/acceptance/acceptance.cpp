// Runs every acceptance criterion at its stated scale and time limit and
// prints one PASS/FAIL line each. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "baire/reductions.hpp"
#include "baire/transform.hpp"

using namespace baire;

namespace {

constexpr std::uint64_t kBudget = 10'000'000;

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string note;
  void expect(bool ok) {
    ++cases;
    if (!ok) ++failures;
  }
};

Word head(const Stream& s, std::size_t n, std::uint64_t budget = kBudget) { return s.prefix(n, budget); }

// Compares indices determined on both sides; counts each disagreement.
void agree(Tally& t, const Stream& a, const Stream& b, std::size_t depth, std::uint64_t budget = kBudget) {
  for (Index i = 0; i < depth; ++i) {
    const auto x = a.at(i, budget);
    const auto y = b.at(i, budget);
    if (x && y) t.expect(*x == *y);
  }
}

// Same, but every index must be determined on both sides.
void agree_all(Tally& t, const Stream& a, const Stream& b, std::size_t depth, std::uint64_t budget = kBudget) {
  for (Index i = 0; i < depth; ++i) {
    const auto x = a.at(i, budget);
    const auto y = b.at(i, budget);
    t.expect(x && y && *x == *y);
  }
}

Word word_of(std::size_t len, std::size_t code) {
  Word w(len);
  for (std::size_t k = 0; k < len; ++k, code /= 3) w[k] = code % 3;
  return w;
}

Tally codec_soundness() {
  Tally t;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Machine m = seeded_machine(seed);
    const Name n = encode_machine(m);
    // Decode every entry of stages 0..4; stage 4 covers all words of length <= 4 over {0,1,2}.
    std::size_t entries = 0;
    for (std::size_t s = 0; s <= 4; ++s)
      for (std::size_t k = 0, count = 1; k <= s; ++k, count *= s + 3) entries += count;
    if (m->graph_size()) entries = std::min(entries, *m->graph_size());
    EntryDecoder d;
    std::size_t seen = 0;
    for (Index i = 0; seen < entries; ++i) {
      Fuel f(kBudget);
      const Sym s = n.at(i, f);
      if (!s.ok()) break;
      if (d.push(*s) || *s == codec::kEnd) ++seen;
    }
    t.expect(seen == entries);
    for (std::size_t len = 0; len <= 4; ++len) {
      std::size_t total = 1;
      for (std::size_t k = 0; k < len; ++k) total *= 3;
      for (std::size_t code = 0; code < total; ++code) {
        const Word w = word_of(len, code);
        Fuel fuel(stage_fuel(4));
        t.expect(d.evaluate(w) == m->approximate(w, fuel));
      }
    }
  }

  std::mt19937_64 rng(1);
  for (int c = 0; c < 1000; ++c) {
    Word name = encode_machine(seeded_machine(rng() % 100)).prefix(48 + rng() % 80, kBudget);
    const auto before = decode_entries(name);
    const auto pos = static_cast<std::ptrdiff_t>(rng() % (name.size() + 1));
    name.insert(name.begin() + pos, rng() % 3);
    t.expect(decode_entries(name) == before);
  }
  return t;
}

Tally monotonicity() {
  Tally t;
  std::mt19937_64 rng(2);
  for (std::uint64_t c = 0; c < 500; ++c) {
    // Half structured names, half raw symbol soup.
    Word name;
    if (c % 2 == 0) {
      name = encode_machine(seeded_machine(rng())).prefix(64, kBudget);
    } else {
      for (int i = 0; i < 64; ++i) name.push_back(rng() % 9);
    }
    Word input;
    for (int i = 0; i < 64; ++i) input.push_back(rng() % 3);
    // Output extends along each axis, so it extends on every pair ordered componentwise.
    Word prev_row[65];
    EntryDecoder d;
    for (std::size_t a = 0; a <= 64; ++a) {
      if (a > 0) d.push(name[a - 1]);
      Word prev;
      for (std::size_t b = 0; b <= 64; ++b) {
        const Word out = d.evaluate(std::span(input).first(b));
        if (b > 0) t.expect(is_prefix(prev, out));
        if (a > 0) t.expect(is_prefix(prev_row[b], out));
        prev_row[b] = prev = out;
      }
    }
    t.expect(prev_row[64] == eval_name(name, input));
  }
  return t;
}

Tally smn_equation() {
  Tally t;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Machine F = seeded_machine(seed);
    const Stream q = seeded(seed + 1, 6);
    const Stream p = seeded(seed + 2, 6);
    // Finite-output machines make the stream side search; a small budget bounds that.
    agree(t, eval_stream(smn(F)(q), p), F->apply(pair_stream(q, p)), 32, 200'000);
  }
  return t;
}

Tally recursion() {
  Tally t;
  const NameTransformer T = recursion_T();
  const Stream z = seeded(5, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Name p = samples::transformer(seed);
    agree_all(t, eval_stream(T(p), z), eval_decoded(eval_stream(p, T(p)), z), 16);
  }
  return t;
}

Tally injection() {
  Tally t;
  const Injection inj = injection_I();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Stream p = seeded(seed + 7, 6);
    t.expect(head(inj.L(eval_stream(inj.I(samples::transformer(seed)), p)), 64) == head(p, 64));
  }
  const Stream z = seeded(9, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Name s = samples::transformer(seed);
    const Stream p = seeded(seed + 3, 4);
    agree_all(t, eval_decoded(eval_stream(inj.I(s), p), z), eval_decoded(eval_stream(s, p), z), 16);
  }
  return t;
}

Tally injective_recursion() {
  Tally t;
  const auto [R1, r1] = injective_recursion_R([](const Name&, const Stream& qp) { return second(qp); });
  const auto [R2, r2] = injective_recursion_R([](const Name& r, const Stream& qp) {
    auto [q, p] = unpair_stream(qp);
    return pair_stream(eval_stream(r, q), p);
  });
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Stream q = seeded(seed, 8);
    const Stream p = seeded(seed + 50, 8);
    agree_all(t, eval_stream(R1(q), p), p, 16);
    agree_all(t, eval_stream(R2(q), p), pair_stream(R2(q), p), 16);
    for (const NameTransformer* R : {&R1, &R2}) t.expect(head((*R->extractor())((*R)(q)), 64) == head(q, 64));
  }
  return t;
}

Tally quine_check() {
  Tally t;
  const Name q = quine();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Stream p = seeded(seed, 10);
    agree_all(t, eval_stream(q, p), pair_stream(q, p), 128);
  }
  return t;
}

Tally operator_coherence() {
  Tally t;
  const Solver g = oracle_solver(problem("c2"));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Stream q0 = Loop::make(problem("c2"), seed)->initial();
    const Stream w = omega(g)(q0);
    for (std::size_t n = 0; n < 8; ++n) {
      const Word a = head(project(w, n), 16);
      t.expect(a.size() == 16 && a == head(power_n(g, n)(q0), 16));
    }
  }

  // Every head sequence of length 5 over {0,1,2,input,fuel}.
  const Sym alphabet[] = {Sym(0), Sym(1), Sym(2), Sym(Miss::input), Sym(Miss::fuel)};
  for (std::size_t code = 0; code < 3125; ++code) {
    std::vector<Sym> heads;
    for (std::size_t i = 0, c = code; i < 5; ++i, c /= 5) heads.push_back(alphabet[c % 5]);
    RunClass want{RunKind::undetermined, 5};
    for (std::size_t i = 0; i < 5; ++i) {
      if (heads[i].ok() && *heads[i] == 0) {
        want = {RunKind::successful, i};
        break;
      }
      if (!heads[i].ok()) {
        want = {heads[i].miss() == Miss::input ? RunKind::stalled : RunKind::undetermined, i};
        break;
      }
    }
    t.expect(classify_heads(heads) == want);
  }

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto loop = Loop::make(problem("c2"), seed, 4);
    const Stream q0 = loop->initial();
    t.expect(power_n(g, 0)(q0).identity() == q0.identity());
    const Stream one = power_n(g, 1)(q0);
    t.expect(first(one).identity() == loop->program({}).identity());
    t.expect(head(second(one), 16) == head(g(loop->data({})->public_name), 16));
  }
  return t;
}

Tally check_library(std::string_view name, std::size_t seeds, std::size_t depth) {
  Tally t;
  const CheckReport r = run_witness(*find_witness(name), {seeds, 0, depth});
  for (const CheckRecord& rec : r.records) t.expect(rec.verdict != Verdict::refuted);
  t.note = "consistent " + std::to_string(r.count(Verdict::consistent)) + " undetermined " +
           std::to_string(r.count(Verdict::undetermined));
  return t;
}

Tally limit_simulation() {
  Tally t;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const LimLoop ll = limN_loop(seed, 4);
    t.expect(ll.changes.size() <= 3);
    const LimSim sim = limN_infty_via_lim(*ll.loop, 4, 64);
    t.expect(sim.stabilized);
    t.expect(sim.restarts <= ll.changes.size());
    const RunCheck rc = check_run(*ll.loop, [&](std::size_t i) { return head(sim.run[i], 32); }, 4, 32);
    t.expect(rc.verdict == Verdict::consistent);
  }
  return t;
}

Tally negative_controls() {
  Tally t;
  for (const char* name : {"broken-lpo", "broken-c2-nondet"}) {
    const CheckReport r = run_witness(*find_witness(name), {0, 0, 32});
    std::size_t refuted = 0;
    for (const CheckRecord& rec : r.records)
      if (rec.verdict == Verdict::refuted && rec.detail.find("not-applicable") == std::string::npos) ++refuted;
    t.expect(r.applicable > 0 && refuted * 10 >= r.applicable * 9);
    t.note += std::string(t.note.empty() ? "" : " ") + name + " " + std::to_string(refuted) + "/" +
              std::to_string(r.applicable);
  }
  return t;
}

struct Criterion {
  const char* name;
  double limit_s;
  Tally (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"codec-soundness", 10, codec_soundness},
      {"evaluation-monotonicity", 10, monotonicity},
      {"smn-equation", 30, smn_equation},
      {"recursion-fixed-point", 60, recursion},
      {"injection", 60, injection},
      {"injective-recursion", 120, injective_recursion},
      {"quine", 5, quine_check},
      {"operator-coherence", 30, operator_coherence},
      {"countable-choice-lift", 120, [] { return check_library("c2-loop-lift", 200, 32); }},
      {"limit-machine-simulation", 120, limit_simulation},
      {"monotonicity-lifting", 180, [] { return check_library("c2-cn-loop-lift", 50, 32); }},
      {"negative-controls", 10, negative_controls},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    std::string error;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = error.empty() && t.failures == 0 && t.cases > 0 && secs < c.limit_s;
    if (!pass) ++failed;
    std::printf("criterion %d %s %s cases %zu failures %zu time %.2fs limit %.0fs%s%s%s%s\n", index, c.name,
                pass ? "PASS" : "FAIL", t.cases, t.failures, secs, c.limit_s, t.note.empty() ? "" : " ",
                t.note.c_str(), error.empty() ? "" : " error ", error.c_str());
  }
  std::printf("acceptance %s %d/12\n", failed == 0 ? "PASS" : "FAIL", 12 - failed);
  return failed;
}
