#include "baire/operators.hpp"
#include "doctest.h"

using namespace baire;

namespace {

constexpr std::uint64_t kBudget = 1'000'000;

Word head(const Stream& s, std::size_t n) { return s.prefix(n, kBudget); }

const Solver& c2_solver() {
  static const Solver g = oracle_solver(problem("c2"));
  return g;
}

// Program whose step output has no symbols at all.
Name empty_output_program() {
  return encode_machine(functional_machine([](const Stream&) { return finite({}); }));
}

}  // namespace

TEST_CASE("run classification follows the success condition") {
  CHECK(classify_heads(std::vector<Sym>{Sym(2), Sym(1), Sym(0)}) == RunClass{RunKind::successful, 2});
  CHECK(classify_heads(std::vector<Sym>{Sym(0), Sym(0)}) == RunClass{RunKind::successful, 0});
  CHECK(classify_heads(std::vector<Sym>(10, Sym(1))) == RunClass{RunKind::undetermined, 10});
  CHECK(classify_heads(std::vector<Sym>{Sym(1), Sym(1), Sym(3), Sym(Miss::input)}) ==
        RunClass{RunKind::stalled, 3});
  CHECK(classify_heads(std::vector<Sym>{Sym(1), Sym(Miss::fuel)}) == RunClass{RunKind::undetermined, 1});
  CHECK(format_run_class({RunKind::successful, 3}) == "successful(3)");
  CHECK(format_run_class({RunKind::undetermined, 10}) == "undetermined(no success through 10)");

  // Exhaustive over head sequences of length 4 with values {0,1,2}.
  for (int code = 0; code < 81; ++code) {
    std::vector<Sym> heads;
    for (int i = 0, c = code; i < 4; ++i, c /= 3) heads.push_back(Sym(static_cast<Nat>(c % 3)));
    std::optional<std::size_t> first_zero;
    for (std::size_t i = 0; i < 4 && !first_zero; ++i)
      if (*heads[i] == 0) first_zero = i;
    const RunClass r = classify_heads(heads);
    if (first_zero) {
      CHECK(r == RunClass{RunKind::successful, *first_zero});
    } else {
      CHECK(r == RunClass{RunKind::undetermined, 4});
    }
  }
}

TEST_CASE("powers match their definitions") {
  const auto loop = Loop::make(problem("c2"), 3, 5);
  const Stream q0 = loop->initial();
  CHECK(power_n(c2_solver(), 0)(q0).identity() == q0.identity());

  const Stream one = power_n(c2_solver(), 1)(q0);
  CHECK(first(one).identity() == loop->program({}).identity());
  CHECK(head(second(one), 8) == head(c2_solver()(loop->data({})->public_name), 8));

  auto calls = std::make_shared<std::atomic<std::size_t>>(0);
  const Stream three = power_n(counted(c2_solver(), calls), 3)(q0);
  CHECK(calls->load() == 3);
  const Word h = loop->true_history(2);
  CHECK(first(three).identity() == loop->program(h).identity());
  CHECK(head(second(three), 8) == head(c2_solver()(loop->data(h)->public_name), 8));
}

TEST_CASE("star dispatches on the tag") {
  const auto loop = Loop::make(problem("c2"), 4, 6);
  const Stream q0 = loop->initial();
  CHECK(star(c2_solver())(cons(0, q0)).identity() == q0.identity());
  CHECK(head(star(c2_solver())(cons(1, q0)), 16) == head(power_n(c2_solver(), 1)(q0), 16));
  auto calls = std::make_shared<std::atomic<std::size_t>>(0);
  star(counted(c2_solver(), calls))(cons(4, q0));
  CHECK(calls->load() == 4);
}

TEST_CASE("omega components agree with powers") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Stream q0 = Loop::make(problem("c2"), seed)->initial();
    const Stream w = omega(c2_solver())(q0);
    CHECK(project(w, 0).identity() == q0.identity());
    for (std::size_t n = 0; n < 8; ++n) CHECK(head(project(w, n), 16) == head(power_n(c2_solver(), n)(q0), 16));
  }
}

TEST_CASE("compositional product") {
  const Name q = quine();
  const Solver id = [](const Stream& x) { return x; };
  const auto inst = make_instance(problem("c2"), 77);
  const Stream x = pair_stream(q, inst->public_name);
  CHECK(second(comp_product(id, id)(x)).identity() == inst->public_name.identity());
  CHECK(head(second(comp_product(c2_solver(), id)(x)), 8) == head(c2_solver()(inst->public_name), 8));
  const Stream ig = comp_product(id, c2_solver())(x);
  CHECK(head(second(ig), 8) == head(c2_solver()(inst->public_name), 8));
}

TEST_CASE("parallelization commutes with projection") {
  std::vector<std::shared_ptr<const Instance>> insts;
  for (std::uint64_t i = 0; i < 16; ++i) insts.push_back(make_instance(problem("c2"), 1000 + i));
  const Stream t = tuple_countable([insts](Index i) { return insts[i % 16]->public_name; });
  const Stream out = parallelize(c2_solver())(t);
  for (Index i = 0; i < 16; ++i) {
    CHECK(head(project(out, i), 8) == head(c2_solver()(insts[i]->public_name), 8));
    CHECK(check_stream(*insts[i], project(out, i), 16, kBudget) != Verdict::refuted);
  }
}

TEST_CASE("diamond runs") {
  const auto done = Loop::make(problem("c2"), 1, 0);
  const DiamondResult zero = diamond(c2_solver(), done->initial(), 10, 8, kBudget);
  CHECK(zero.result == RunClass{RunKind::successful, 0});
  CHECK(zero.trace.back().calls == 0);

  for (std::size_t n = 1; n <= 5; ++n) {
    const auto loop = Loop::make(problem("c2"), 10 + n, n);
    const DiamondResult r = diamond(c2_solver(), loop->initial(), 20, 8, kBudget);
    CHECK(r.result == RunClass{RunKind::successful, n});
    CHECK(r.trace.back().calls == n);
    CHECK(head(*r.output, 8) == head(loop->state(loop->true_history(n)), 8));
  }
  CHECK(format_trace(zero.trace[0]) == "step 0 head 0 determined 8 calls 0");

  const auto endless = Loop::make(problem("c2"), 2);
  CHECK(diamond(c2_solver(), endless->initial(), 6, 8, kBudget).result == RunClass{RunKind::undetermined, 7});

  const auto inst = make_instance(problem("c2"), 5);
  const Stream stuck = pair_stream(with_head(1, empty_output_program()), inst->public_name);
  CHECK(diamond(c2_solver(), stuck, 6, 8, kBudget).result == RunClass{RunKind::stalled, 1});
}

TEST_CASE("inverse limit runs validate step by step") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto loop = Loop::make(problem("c2"), seed);
    const Stream run = inverse_limit(c2_solver(), loop->initial());
    CHECK(project(run, 0).identity() == loop->initial().identity());
    const RunCheck rc = check_run(*loop, [&](std::size_t i) { return head(project(run, i), 16); }, 10, 16);
    CHECK(rc.verdict == Verdict::consistent);
  }
  // Identity step with a pass-through program keeps the data.
  const Name q = quine();
  const Stream p = seeded(3, 9);
  const Stream run = inverse_limit([](const Stream& x) { return x; }, pair_stream(q, p));
  for (Index i = 0; i < 5; ++i) CHECK(head(second(project(run, i)), 16) == head(p, 16));
}

TEST_CASE("monotonicity lifting with the identity witness") {
  const StreamFn K = [](const Stream& p) { return p; };
  const StreamFn H = [](const Stream& pr) { return second(pr); };
  const LiftedReduction lift = lift_reduction_to_inverse_limit(K, H);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto loop = Loop::make(problem("c2"), 40 + seed);
    const Stream big = inverse_limit(c2_solver(), lift.K(loop->initial()));
    const Stream run = lift.H(big);
    const RunCheck rc = check_run(*loop, [&](std::size_t i) { return head(project(run, i), 16); }, 5, 16);
    CHECK(rc.verdict == Verdict::consistent);
  }
  const Stream x = pair_stream(seeded(1, 30), seeded(2, 30));
  CHECK(head(lift.H1(lift.K1(x)), 64) == head(x, 64));
}

TEST_CASE("single-valued inverse limit and omega agree") {
  const Name q = quine();
  const Solver prepend7 = [](const Stream& p) { return prepend_machine(7)->apply(p); };
  const Solver id = [](const Stream& p) { return p; };
  const OmegaViaInfty via = sv_omega_to_infty();

  const Stream x = pair_stream(q, seeded(5, 10));
  for (const Solver& F : {id, prepend7}) {
    const Stream direct = inverse_limit(F, x);
    const Stream from_omega = infty_from_omega(omega(F)(x));
    const Stream back = via.H(inverse_limit(F, via.K0(x)));
    for (Index n = 0; n < 4; ++n) {
      CHECK(head(project(from_omega, n), 32) == head(project(direct, n), 32));
      CHECK(head(project(back, n), 16) == head(power_n(F, n)(x), 16));
    }
  }

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Machine m = seeded_machine(seed);
    const Solver F = [m](const Stream& p) { return m->apply(p); };
    const Stream y = pair_stream(q, seeded(seed, 5));
    const Stream back = via.H(inverse_limit(F, via.K0(y)));
    for (Index n = 0; n < 3; ++n) {
      const Word want = power_n(F, n)(y).prefix(4, 200'000);
      const Word got = project(back, n).prefix(4, 200'000);
      const std::size_t k = std::min(want.size(), got.size());
      CHECK(std::equal(got.begin(), got.begin() + static_cast<std::ptrdiff_t>(k), want.begin()));
    }
  }
}

TEST_CASE("parallel loops through one inverse limit") {
  auto loops = std::make_shared<std::vector<std::shared_ptr<const Loop>>>();
  for (std::uint64_t i = 0; i < 8; ++i) loops->push_back(Loop::make(problem("c2"), 500 + i));
  const Stream T0 = tuple_countable([loops](Index i) { return (*loops)[i % loops->size()]->initial(); });
  const ParallelViaInfty via = parallel_infty_to_infty();
  const Stream runs = via.H(inverse_limit(c2_solver(), via.K(T0)));
  for (Index i = 0; i < 2; ++i) {
    const Loop& loop = *(*loops)[i];
    const RunCheck rc =
        check_run(loop, [&](std::size_t n) { return head(project(project(runs, i), n), 12); }, 4, 12);
    CHECK(rc.verdict == Verdict::consistent);
  }
}

TEST_CASE("diamond through the inverse limit with padding") {
  const Stream point = make_instance(problem("c2"), 424242)->public_name;
  const DiamondViaInfty via = diamond_to_infty(point);
  for (std::size_t n : {0, 1, 3}) {
    const auto loop = Loop::make(problem("c2"), 70 + n, n);
    const DiamondResult d = diamond(c2_solver(), loop->initial(), 10, 16, kBudget);
    REQUIRE(d.output);
    const Stream big = inverse_limit(c2_solver(), via.K(loop->initial()));
    CHECK(head(via.H(big), 16) == head(*d.output, 16));
    for (Index j = n + 1; j < n + 4; ++j) CHECK(second(project(big, j)).identity() == point.identity());
  }
}
