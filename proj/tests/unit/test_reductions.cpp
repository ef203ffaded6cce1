#include "baire/reductions.hpp"
#include "doctest.h"

using namespace baire;

namespace {

CheckReport run(std::string_view name, std::size_t seeds = 0, std::size_t depth = 0) {
  const LibraryEntry* e = find_witness(name);
  REQUIRE(e);
  return run_witness(*e, {seeds, 0, depth});
}

}  // namespace

TEST_CASE("witness library lookup") {
  CHECK(find_witness("llpo-id") == find_witness("llpo-id"));
  CHECK(find_witness("nope") == nullptr);
  const auto names = witness_names();
  for (const char* n : {"llpo-id", "c2-cn", "broken-lpo", "broken-c2-nondet", "c2-loop-lift", "c2-loop-lift-unique",
                        "c2-cn-loop-lift", "limN-lim", "llpo-hat-cantor", "limN-loop-sim"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
}

TEST_CASE("identity and embedding witnesses") {
  const CheckReport id = run("llpo-id");
  CHECK(id.records.size() == 500);
  CHECK(id.count(Verdict::refuted) == 0);
  CHECK(id.count(Verdict::undetermined) == 0);

  const CheckReport cn = run("c2-cn");
  CHECK(cn.count(Verdict::refuted) == 0);
  CHECK(cn.count(Verdict::undetermined) == 0);

  CHECK(run("limN-lim").count(Verdict::refuted) == 0);
  CHECK(run("llpo-hat-cantor", 50).count(Verdict::refuted) == 0);
}

TEST_CASE("report format") {
  const CheckReport r = run("llpo-id", 3, 8);
  CHECK(r.format() ==
        "check llpo-id seed 0 depth 8 verdict consistent\n"
        "check llpo-id seed 1 depth 8 verdict consistent\n"
        "check llpo-id seed 2 depth 8 verdict consistent\n"
        "summary llpo-id seeds 3 consistent 3 undetermined 0 refuted 0 applicable 3 fuel " +
            std::to_string(r.fuel) + " note " + std::string(CheckReport::kDisclaimer) + "\n");
  CHECK(run("llpo-id", 3, 8).format() == r.format());
}

TEST_CASE("negative controls are refuted") {
  for (const char* name : {"broken-lpo", "broken-c2-nondet"}) {
    CAPTURE(name);
    const CheckReport r = run(name);
    std::size_t refuted_applicable = 0;
    for (const CheckRecord& rec : r.records)
      if (rec.verdict == Verdict::refuted && rec.detail.find("not-applicable") == std::string::npos)
        ++refuted_applicable;
    CHECK(r.applicable > 100);
    CHECK(refuted_applicable * 10 >= r.applicable * 9);
  }
}

TEST_CASE("translation must exist") {
  ReductionWitness w;
  w.name = "untranslated";
  w.K = [](const Stream& p) { return map_symbols(p, [](Nat x) { return x; }); };
  w.H = [](const Stream& y) { return y; };
  w.strong = true;
  const Problem& c2 = problem("c2");
  const Suite suite = [&c2](std::uint64_t seed) {
    const auto inst = make_instance(c2, seed);
    Case c;
    c.input = inst->public_name;
    c.check = [inst, &c2](const Stream& out, std::size_t d, Fuel& f) { return c2.check(*inst, out.prefix(d, f), d); };
    return c;
  };
  const std::uint64_t seeds[] = {1};
  CHECK_THROWS_AS(check_reduction(suite, oracle_solver(c2), w, seeds, 8), TranslationMissing);
}

TEST_CASE("nondeterministic witnesses") {
  CHECK(run("c2-nondet").count(Verdict::refuted) == 0);
  CHECK(run("c2-unique-nondet").count(Verdict::refuted) == 0);

  // Advice naming the excluded point is flagged.
  const NonDetWitness& w = *find_witness("c2-nondet")->nondet;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = make_instance(problem("c2-unique"), seed);
    const Stream bad = encode_value(1 - inst->witness.value);
    CHECK(sierpinski_value(w.F2(pair_stream(inst->public_name, bad)), 16).nonzero_at);
    CHECK_FALSE(sierpinski_value(w.F2(pair_stream(inst->public_name, encode_value(inst->witness.value))), 16)
                    .nonzero_at);
  }
}

TEST_CASE("lifted advice witness on loops") {
  const CheckReport r = run("c2-loop-lift", 40);
  CHECK(r.count(Verdict::refuted) == 0);
  CHECK(r.count(Verdict::undetermined) == 0);
  CHECK(run("c2-loop-lift-unique", 20).count(Verdict::refuted) == 0);

  // Step i reads advice component i, once.
  const NonDetWitness base = *find_witness("c2-nondet")->nondet;
  const auto loop = Loop::make(problem("c2"), 3, 5);
  const AdviceRun advice_run(base.F1, loop->initial(), seeded(9, 2));
  advice_run.state(5);
  advice_run.state(3);
  CHECK(advice_run.consulted() == std::vector<Index>{0, 1, 2, 3, 4});

  // Unhelpful advice at step 2 shows up in check 2.
  const NonDetWitness lifted = nondet_lift_inverse_limit(base);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto l = Loop::make(problem("c2-unique"), seed, 5);
    const Word h = l->true_history(5);
    const Stream advice = tuple_countable([h, l](Index i) {
      if (i == 2) return encode_value(1 - h[2]);
      return encode_value(l->true_history(i + 1)[i]);
    });
    const Stream flags = lifted.F2(pair_stream(l->initial(), advice));
    for (Index i = 0; i < 2; ++i) CHECK_FALSE(sierpinski_value(project(flags, i), 32).nonzero_at);
    CHECK(sierpinski_value(project(flags, 2), 32).nonzero_at);
  }
}

TEST_CASE("lifted embedding on loops") {
  const CheckReport r = run("c2-cn-loop-lift", 20);
  CHECK(r.count(Verdict::refuted) == 0);
  CHECK(r.count(Verdict::undetermined) == 0);
}

TEST_CASE("limit machine simulation") {
  SUBCASE("no mind changes") {
    const LimLoop ll = limN_loop(5, 4, {});
    const LimSim sim = limN_infty_via_lim(*ll.loop, 4, 32);
    CHECK(sim.restarts == 0);
    CHECK(sim.stabilized);
    const Stream direct = inverse_limit(oracle_solver(problem("limN")), ll.loop->initial());
    for (Index i = 0; i <= 4; ++i) CHECK(sim.run[i].prefix(16, 1'000'000) == project(direct, i).prefix(16, 1'000'000));
  }
  SUBCASE("one change at level 0") {
    const LimLoop ll = limN_loop(6, 4, {{0, 5, 0}, {0, 5, 1}});
    REQUIRE(ll.changes.size() == 1);
    const LimSim sim = limN_infty_via_lim(*ll.loop, 4, 32);
    REQUIRE(sim.trace.size() == 1);
    CHECK(sim.trace[0].stage == 5);
    CHECK(sim.trace[0].level == 0);
    CHECK(sim.restarts == 1);
    const RunCheck rc =
        check_run(*ll.loop, [&](std::size_t i) { return sim.run[i].prefix(32, 1'000'000); }, 4, 32);
    CHECK(rc.verdict == Verdict::consistent);
  }
  SUBCASE("seeded suite") {
    const CheckReport r = run("limN-loop-sim", 100);
    CHECK(r.count(Verdict::refuted) == 0);
    CHECK(r.count(Verdict::undetermined) == 0);
  }
}

TEST_CASE("loop files") {
  const LoopSpec spec = parse_loop_spec("# countdown\nloop limN seed 4 length 3\nchange 0 5 2\n");
  CHECK(spec.problem == "limN");
  CHECK(spec.length == 3);
  REQUIRE(spec.changes);
  CHECK(*spec.changes == std::vector<MindChange>{{0, 5, 2}});
  CHECK(parse_loop_spec(format_loop_spec(spec)).changes == spec.changes);
  CHECK(parse_loop_spec("loop c2 seed 1\n").length == Loop::kEndless);
  CHECK(parse_loop_spec("loop limN seed 1\nchanges none\n").changes->empty());
  CHECK_THROWS_WITH(parse_loop_spec("loop c2 seed x\n"), doctest::Contains("line 1"));
  CHECK_THROWS_WITH(parse_loop_spec("loop c2 seed 1\nchange 0 1 1\n"), doctest::Contains("limN"));
  CHECK_THROWS_WITH(parse_loop_spec("loop lim seed 1\n"), doctest::Contains("discrete"));
  CHECK_THROWS_AS(parse_loop_spec("\n"), ParseError);
  CHECK(make_loop(parse_loop_spec("loop c2 seed 2 length 3\n"))->head(0) == 3);
}
